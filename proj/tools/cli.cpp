#include "cli.hpp"

#include "modcross/lseries.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace modcross::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchemaComment =
    "# modcross census schema v1; chi_abs is mu/6 for the punctured surface X(N), "
    "a bounded factor away from the closed-surface value";

const char* const kCsvHeader =
    "N,in_family,D,h,log_eps,L_cnf,L_series,n_geodesics,I_N,cr_upper_proxy,m_systoles,chi_abs,hp_lower,ratio_upper";

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& text, const char* what) {
    Int v;
    if (text.empty() || v.set_str(text, 10) != 0) throw usage_error(std::string(what) + ": not an integer: " + text);
    return v;
}

// Integer-valued options are read as strings so they can exceed 64 bits.
auto integer_check() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            Int v;
            return (!s.empty() && v.set_str(s, 10) == 0) ? std::string{} : "not an integer: " + s;
        },
        "INT");
}

std::string real_text(const Real& x) { return x.format(12); }

double real_number(const Real& x) { return std::stod(real_text(x)); }

struct Summary {
    std::string max;
    std::string median;
};

Summary summarize(const std::vector<CensusRecord>& rows) {
    if (rows.empty()) return {"n/a", "n/a"};
    std::vector<Real> r;
    r.reserve(rows.size());
    for (const CensusRecord& row : rows) r.push_back(row.ratio_upper);
    std::sort(r.begin(), r.end());
    const std::size_t n = r.size();
    Real median = n % 2 ? r[n / 2] : (r[n / 2 - 1] + r[n / 2]) / Real(2L, r[0].precision());
    return {real_text(r.back()), real_text(median)};
}

std::string render_csv(const std::vector<CensusRecord>& rows) {
    std::ostringstream os;
    os << kSchemaComment << '\n' << kCsvHeader << '\n';
    for (const CensusRecord& r : rows) {
        os << r.N << ',' << (r.in_family ? "true" : "false") << ',' << r.D << ',' << r.h << ',' << real_text(r.log_eps)
           << ',' << real_text(r.L_cnf) << ',' << real_text(r.L_series) << ',' << r.n_geodesics << ',' << r.I_N << ','
           << r.cr_upper_proxy << ',' << r.m_systoles << ',' << r.chi_abs << ',' << real_text(r.hp_lower) << ','
           << real_text(r.ratio_upper) << '\n';
    }
    Summary s = summarize(rows);
    os << "# summary rows=" << rows.size() << " max_ratio_upper=" << s.max << " median_ratio_upper=" << s.median
       << '\n';
    return os.str();
}

std::string render_json(const ScanConfig& config, const std::vector<CensusRecord>& rows) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["note"] = "chi_abs is mu/6 for the punctured surface X(N)";
    doc["config"] = {
        {"from", config.from.get_str()},
        {"to", config.to.get_str()},
        {"orientation", config.census.orientation == Orientation::oriented ? "oriented" : "unoriented"},
        {"diagonal", config.census.diagonal == DiagonalPolicy::exclude ? "exclude" : "count-self"},
        {"precision_bits", config.census.precision_bits},
        {"series_cutoff", config.census.series_cutoff.get_str()},
    };
    ordered_json list = ordered_json::array();
    for (const CensusRecord& r : rows) {
        // integers are emitted as strings when they may exceed 64 bits
        list.push_back({
            {"N", r.N.get_si()},
            {"in_family", r.in_family},
            {"D", r.D.get_str()},
            {"h", r.h},
            {"log_eps", real_number(r.log_eps)},
            {"L_cnf", real_number(r.L_cnf)},
            {"L_series", real_number(r.L_series)},
            {"n_geodesics", r.n_geodesics},
            {"I_N", r.I_N.get_str()},
            {"cr_upper_proxy", r.cr_upper_proxy.get_str()},
            {"m_systoles", r.m_systoles.get_str()},
            {"chi_abs", r.chi_abs.get_str()},
            {"hp_lower", real_number(r.hp_lower)},
            {"ratio_upper", real_number(r.ratio_upper)},
        });
    }
    doc["rows"] = std::move(list);
    Summary s = summarize(rows);
    doc["summary"] = {{"rows", rows.size()}, {"max_ratio_upper", s.max}, {"median_ratio_upper", s.median}};
    return doc.dump(2) + "\n";
}

void write_output(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
    if (!path) {
        out << text;
        out.flush();
        return;
    }
    const std::filesystem::path target(*path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw domain_error("cannot open " + tmp.string() + " for writing");
        f << text;
        if (!f.flush()) throw domain_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, target);
}

std::string form_cells(const Form& f) { return f.a().get_str() + ',' + f.b().get_str() + ',' + f.c().get_str(); }

ordered_json form_json(const Form& f) { return ordered_json::array({f.a().get_str(), f.b().get_str(), f.c().get_str()}); }

// ---------------------------------------------------------------- commands

int cmd_scan(const ScanConfig& config, std::ostream& out, std::ostream& err) {
    if (config.from < 3 || config.from > config.to)
        throw usage_error("scan: need 3 <= from <= to, got " + config.from.get_str() + ".." + config.to.get_str());
    std::vector<Int> Ns;
    for (Int& N : n_family(config.to))
        if (N >= config.from) Ns.push_back(std::move(N));
    std::size_t done = 0;
    auto progress = [&](const Int& N) { err << "scan: N=" << N << " done (" << ++done << '/' << Ns.size() << ")\n"; };
    std::vector<CensusRecord> rows = census_records(Ns, config.census, config.jobs, progress);
    write_output(render_scan(config, rows), config.out_path, out);
    return kOk;
}

int cmd_forms(const Int& D, Format format, std::ostream& out) {
    std::vector<FormCycle> classes = class_representatives(D);
    PellSolution p = pell_min(D);
    std::ostringstream os;
    if (format == Format::csv) {
        os << "# D=" << D << " h=" << classes.size() << " pell_s=" << p.s << " pell_t=" << p.t << '\n';
        os << "class,index,a,b,c\n";
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t k = 0; k < classes[i].size(); ++k)
                os << i + 1 << ',' << k << ',' << form_cells(classes[i].forms()[k]) << '\n';
    } else {
        ordered_json cls = ordered_json::array();
        for (const FormCycle& c : classes) {
            ordered_json members = ordered_json::array();
            for (const Form& f : c.forms()) members.push_back(form_json(f));
            cls.push_back(std::move(members));
        }
        ordered_json doc = {{"D", D.get_str()}, {"h", classes.size()}, {"pell", {p.s.get_str(), p.t.get_str()}},
                            {"cycles", std::move(cls)}};
        os << doc.dump(2) << '\n';
    }
    out << os.str();
    return kOk;
}

int cmd_lfunc(const Int& D, const Int& cutoff, unsigned prec, Format format, std::ostream& out) {
    if (!is_fundamental_discriminant(D)) throw domain_error("not a fundamental discriminant: " + D.get_str());
    LValue series = l_one_chi_series(D, cutoff, prec);
    LValue cnf = l_one_chi_cnf(D, prec);
    std::ostringstream os;
    if (format == Format::csv) {
        os << "D,method,value,error_bound\n";
        os << D << ",series," << real_text(series.value) << ',' << real_text(series.error_bound) << '\n';
        os << D << ",class_number_formula," << real_text(cnf.value) << ',' << real_text(cnf.error_bound) << '\n';
    } else {
        ordered_json doc = {{"D", D.get_str()},
                            {"cutoff", cutoff.get_str()},
                            {"series", {{"value", real_number(series.value)}, {"error_bound", real_number(series.error_bound)}}},
                            {"class_number_formula", {{"value", real_number(cnf.value)}}}};
        os << doc.dump(2) << '\n';
    }
    out << os.str();
    return kOk;
}

int cmd_intersect(const Int& D1, const Int& D2, bool oracle, Format format, std::ostream& out) {
    std::vector<GeodesicClass> g1, g2;
    for (const FormCycle& c : class_representatives(D1)) g1.emplace_back(c.front());
    for (const FormCycle& c : class_representatives(D2)) g2.emplace_back(c.front());
    std::ostringstream os;
    ordered_json list = ordered_json::array();
    if (format == Format::csv) os << "a1,b1,c1,a2,b2,c2,intersection_number" << (oracle ? ",oracle" : "") << '\n';
    for (const GeodesicClass& x : g1) {
        for (const GeodesicClass& y : g2) {
            const std::int64_t fast = intersection_number(x, y);
            std::int64_t checked = fast;
            if (oracle) {
                checked = intersection_number_oracle(x, y);
                if (checked != fast)
                    throw consistency_error("intersection mismatch for " + x.form().str() + " and " + y.form().str() +
                                            ": fast " + std::to_string(fast) + ", oracle " + std::to_string(checked));
            }
            if (format == Format::csv) {
                os << form_cells(x.form()) << ',' << form_cells(y.form()) << ',' << fast;
                if (oracle) os << ',' << checked;
                os << '\n';
            } else {
                ordered_json row = {{"form1", form_json(x.form())}, {"form2", form_json(y.form())}, {"intersection_number", fast}};
                if (oracle) row["oracle"] = checked;
                list.push_back(std::move(row));
            }
        }
    }
    if (format == Format::json) os << ordered_json{{"disc1", D1.get_str()}, {"disc2", D2.get_str()}, {"pairs", list}}.dump(2) << '\n';
    out << os.str();
    return kOk;
}

int cmd_pgt(const std::string& x_text, unsigned prec, Format format, std::ostream& out) {
    Real x = Real::from_string(x_text, prec);
    if (x < Real(2L, prec)) throw domain_error("pgt: x must be >= 2");
    Real pi = pgt_pi(x);
    Real ratio = pi / x;
    std::ostringstream os;
    if (format == Format::csv)
        os << "x,pi,pi_over_x\n" << real_text(x) << ',' << real_text(pi) << ',' << real_text(ratio) << '\n';
    else
        os << ordered_json{{"x", real_number(x)}, {"pi", real_number(pi)}, {"pi_over_x", real_number(ratio)}}.dump(2)
           << '\n';
    out << os.str();
    return kOk;
}

int cmd_family(const Int& limit, Format format, std::ostream& out) {
    std::vector<Int> fam = n_family(limit);
    std::ostringstream os;
    if (format == Format::csv) {
        os << "N\n";
        for (const Int& N : fam) os << N << '\n';
    } else {
        ordered_json list = ordered_json::array();
        for (const Int& N : fam) list.push_back(N.get_str());
        os << ordered_json{{"limit", limit.get_str()}, {"count", fam.size()}, {"N", list}}.dump(2) << '\n';
    }
    out << os.str();
    return kOk;
}

const std::map<std::string, Format> kFormats{{"csv", Format::csv}, {"json", Format::json}};

}  // namespace

std::string render_scan(const ScanConfig& config, const std::vector<CensusRecord>& rows) {
    return config.format == Format::csv ? render_csv(rows) : render_json(config, rows);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"modcross: class numbers, L-values and intersecting closed geodesics on the modular surface"};
    app.require_subcommand(1);

    unsigned precision = kDefaultPrecisionBits;
    Format format = Format::csv;
    std::vector<CLI::Option*> precision_flags;
    auto add_precision = [&](CLI::App* sub) {
        precision_flags.push_back(sub->add_option("--precision-bits", precision,
                        "Working precision of real quantities (default from MODCROSS_PRECISION_BITS, else 64)")
            ->check(CLI::Range(kMinPrecisionBits, 1u << 20)));
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    };

    ScanConfig scan;
    scan.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string from = "3", to = "3", cutoff = "1000000", verify = "100";
    std::string out_path;
    std::string orientation = "oriented", diagonal = "exclude";
    CLI::App* s = app.add_subcommand("scan", "Census of N in the family over a range, one row per N");
    s->add_option("--from", from, "First N")->required()->check(integer_check());
    s->add_option("--to", to, "Last N")->required()->check(integer_check());
    s->add_option("--jobs", scan.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_format(s);
    s->add_option("--orientation", orientation, "Enumerate oriented classes or merge Q with -Q")
        ->check(CLI::IsMember({"oriented", "unoriented"}));
    s->add_option("--diagonal", diagonal, "Same-support pairs in I(N)")->check(CLI::IsMember({"exclude", "count-self"}));
    s->add_option("--series-cutoff", cutoff, "Terms of the L-series")->check(integer_check());
    add_precision(s);
    s->add_option("--verify-max-disc", verify, "Recount pairs with both discriminants at most this by enumeration")
        ->check(integer_check());
    s->add_option("--out", out_path, "Write the report here (atomically) instead of stdout");

    std::string disc = "0", disc2 = "0", limit = "0", lcut = "1000000", x_text;
    bool oracle = false;
    CLI::App* f = app.add_subcommand("forms", "Reduced-form cycles of discriminant D");
    f->add_option("--disc", disc, "Discriminant")->required()->check(integer_check());
    add_format(f);
    CLI::App* l = app.add_subcommand("lfunc", "L(1, chi_D) by series and by the class number formula");
    l->add_option("--disc", disc, "Fundamental discriminant")->required()->check(integer_check());
    l->add_option("--cutoff", lcut, "Terms of the series")->check(integer_check());
    add_precision(l);
    add_format(l);
    CLI::App* in = app.add_subcommand("intersect", "Intersection numbers between all classes of two discriminants");
    in->add_option("--disc1", disc, "First discriminant")->required()->check(integer_check());
    in->add_option("--disc2", disc2, "Second discriminant")->required()->check(integer_check());
    in->add_flag("--oracle", oracle, "Recount every pair by enumeration and fail on a mismatch");
    add_format(in);
    CLI::App* p = app.add_subcommand("pgt", "Prime geodesic sum Pi(x)");
    p->add_option("--x", x_text, "Norm bound")->required();
    add_precision(p);
    add_format(p);
    CLI::App* fam = app.add_subcommand("family", "N up to a limit with N^2 - 4 squarefree");
    fam->add_option("--limit", limit, "Upper limit")->required()->check(integer_check());
    add_format(fam);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    const bool flag_given = std::any_of(precision_flags.begin(), precision_flags.end(), [](CLI::Option* o) { return o->count() > 0; });
    if (const char* env = std::getenv("MODCROSS_PRECISION_BITS"); !flag_given && env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v < kMinPrecisionBits || v > (1u << 20)) {
            err << "modcross: MODCROSS_PRECISION_BITS must be an integer in [" << kMinPrecisionBits << ", " << (1u << 20)
                << "], got " << env << '\n';
            return kUsageError;
        }
        precision = static_cast<unsigned>(v);
    }

    try {
        if (s->parsed()) {
            scan.from = parse_int(from, "--from");
            scan.to = parse_int(to, "--to");
            scan.format = format;
            scan.census.orientation = orientation == "oriented" ? Orientation::oriented : Orientation::unoriented;
            scan.census.diagonal = diagonal == "exclude" ? DiagonalPolicy::exclude : DiagonalPolicy::count_self;
            scan.census.precision_bits = precision;
            scan.census.series_cutoff = parse_int(cutoff, "--series-cutoff");
            scan.census.verify_max_disc = parse_int(verify, "--verify-max-disc");
            if (!out_path.empty()) scan.out_path = out_path;
            return cmd_scan(scan, out, err);
        }
        if (f->parsed()) return cmd_forms(parse_int(disc, "--disc"), format, out);
        if (l->parsed()) return cmd_lfunc(parse_int(disc, "--disc"), parse_int(lcut, "--cutoff"), precision, format, out);
        if (in->parsed())
            return cmd_intersect(parse_int(disc, "--disc1"), parse_int(disc2, "--disc2"), oracle, format, out);
        if (p->parsed()) return cmd_pgt(x_text, precision, format, out);
        if (fam->parsed()) return cmd_family(parse_int(limit, "--limit"), format, out);
    } catch (const usage_error& e) {
        err << "modcross: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "modcross: " << e.what() << '\n';
        return kDomainError;
    }
    return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"modcross"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace modcross::cli
