#include "modcross/census.hpp"

#include "modcross/exact_arith.hpp"
#include "modcross/lseries.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace modcross {

namespace {

constexpr long kFamilySieveLimit = 100'000'000;

// squarefree[k] for 0 <= k <= n
std::vector<bool> squarefree_sieve(long n) {
    std::vector<bool> sf(static_cast<std::size_t>(n) + 1, true);
    sf[0] = false;
    for (long p = 2; p * p <= n; ++p)
        for (long k = p * p; k <= n; k += p * p) sf[static_cast<std::size_t>(k)] = false;
    return sf;
}

}  // namespace

std::vector<Int> n_family(const Int& limit) {
    std::vector<Int> out;
    if (limit < 3) return out;
    if (limit > kFamilySieveLimit) throw domain_error("n_family: limit above " + std::to_string(kFamilySieveLimit));
    const long L = limit.get_si();
    // For odd N the factors N - 2 and N + 2 are coprime; even N has 4 | N^2 - 4.
    const std::vector<bool> sf = squarefree_sieve(L + 2);
    for (long N = 3; N <= L; N += 2)
        if (sf[static_cast<std::size_t>(N - 2)] && sf[static_cast<std::size_t>(N + 2)]) out.emplace_back(N);
    return out;
}

bool in_family(const Int& N) { return N >= 3 && is_squarefree(N * N - 4); }

std::vector<TracedGeodesic> traced_geodesics(const Int& N, Orientation orientation) {
    std::vector<TracedGeodesic> all = closed_geodesics_of_trace(N);
    if (orientation == Orientation::oriented) return all;
    std::vector<TracedGeodesic> out;
    for (TracedGeodesic& g : all) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const TracedGeodesic& k) {
            return k.j == g.j && same_support(k.base, g.base);
        });
        if (!dup) out.push_back(std::move(g));
    }
    return out;
}

namespace {

struct PairTotals {
    Int ordered;     // off-diagonal ordered pairs that cross
    Int self_total;  // sum of self-intersection numbers
};

PairTotals count_pairs(const std::vector<TracedGeodesic>& gs, bool want_self, const Int& verify_max_disc) {
    std::vector<FareySegments> segs;
    segs.reserve(gs.size());
    for (const TracedGeodesic& g : gs) segs.emplace_back(g.base);

    PairTotals totals{0, 0};
    for (std::size_t i = 0; i < gs.size(); ++i) {
        for (std::size_t k = i; k < gs.size(); ++k) {
            const GeodesicClass& a = gs[i].base;
            const GeodesicClass& b = gs[k].base;
            const bool same = same_support(a, b);
            const bool verify = a.D0() <= verify_max_disc && b.D0() <= verify_max_disc;
            if (verify) {
                const std::int64_t fast = crossing_orbits_fast(segs[i], segs[k]);
                const std::int64_t oracle = crossing_orbits_oracle(a, b).pairs;
                if (fast != oracle)
                    throw consistency_error("intersection mismatch for " + a.form().str() + " and " + b.form().str() +
                                            ": fast " + std::to_string(fast) + ", oracle " + std::to_string(oracle));
            }
            if (i == k) {
                if (want_self) totals.self_total += intersection_number(a, a);
                continue;
            }
            if (same) continue;
            if (crossing_orbits_fast(segs[i], segs[k], true) > 0) totals.ordered += 2;
        }
    }
    return totals;
}

Int total_of(const PairTotals& t, DiagonalPolicy diagonal) {
    return diagonal == DiagonalPolicy::count_self ? t.ordered + t.self_total : t.ordered;
}

}  // namespace

Int I_of_N(const Int& N, Orientation orientation, DiagonalPolicy diagonal) {
    if (N < 3) throw domain_error("I_of_N: N must be >= 3");
    return total_of(count_pairs(traced_geodesics(N, orientation), diagonal == DiagonalPolicy::count_self, 0), diagonal);
}

Real pgt_pi(const Real& x) {
    const unsigned prec = x.precision();
    Real total(0L, prec);
    const Real two(2L, prec);
    for (Int t = 3;; ++t) {
        Real eps = (Real(t, prec) + sqrt(Real(Int(t * t - 4), prec))) / two;
        Real log_eps = log(eps);
        if (!(two * log_eps < log(x))) break;  // Nr = eps^2 >= x
        const std::size_t classes = primitive_geodesics_of_trace(t).size();
        total += Real(static_cast<long>(classes), prec) * two * log_eps;
    }
    return total;
}

Int psl2_order(const Int& N) {
    if (N < 3) throw domain_error("psl2_order: N must be >= 3");
    // N^3/2 prod (1 - p^-2) = (N^3/2) prod (p^2 - 1)/p^2
    Int num = N * N * N;
    Int rest = N;
    for (Int p = 2; p * p <= rest; ++p) {
        if (!divisible(rest, p)) continue;
        while (divisible(rest, p)) rest /= p;
        num = num / (p * p) * (p * p - 1);
    }
    if (rest > 1) num = num / (rest * rest) * (rest * rest - 1);
    return num / 2;
}

SurfaceInvariants surface_invariants(const Int& N) {
    const Int mu = psl2_order(N);
    if (!divisible(mu, N) || !divisible(mu * (N - 6), 12 * N) || !divisible(mu, Int(6)))
        throw consistency_error("surface_invariants: non-integral invariant at N = " + N.get_str());
    SurfaceInvariants s{1 + mu * (N - 6) / (12 * N), mu / N, mu / 6};
    if (abs(2 - 2 * s.genus - s.cusps) != s.chi_abs)
        throw consistency_error("surface_invariants: Euler characteristic mismatch at N = " + N.get_str());
    return s;
}

Int systole_count_proxy(const Int& N) {
    if (!in_family(N)) throw domain_error("systole_count_proxy: N^2 - 4 is not squarefree for N = " + N.get_str());
    return psl2_order(N) * Int(static_cast<unsigned long>(class_number(N * N - 4)));
}

Real hp_lower_bound(const Int& m, const Int& chi_abs, unsigned precision_bits) {
    if (chi_abs < 1) throw domain_error("hp_lower_bound: chi_abs must be >= 1");
    const Real threshold = exp(Real(6L, precision_bits)) * Real(Int(chi_abs + 1), precision_bits);
    const Real mr(m, precision_bits);
    if (mr < threshold) return Real(0L, precision_bits);
    Real v = mr * log(mr / threshold);
    return v * v / Real(Int(128 * chi_abs), precision_bits);
}

CensusRecord census_record(const Int& N, const CensusOptions& options) {
    if (N < 3 || !in_family(N)) throw domain_error("census_record: N = " + N.get_str() + " is not in the family");
    if (options.precision_bits < kMinPrecisionBits)
        throw domain_error("census_record: precision below " + std::to_string(kMinPrecisionBits) + " bits");
    const unsigned prec = options.precision_bits;
    const Int D = N * N - 4;

    const std::vector<TracedGeodesic> gs = traced_geodesics(N, options.orientation);
    const Int I = total_of(count_pairs(gs, options.diagonal == DiagonalPolicy::count_self, options.verify_max_disc),
                           options.diagonal);

    LValue cnf = l_one_chi_cnf(D, prec);
    LValue series = l_one_chi_series(D, options.series_cutoff, prec);
    const SurfaceInvariants surf = surface_invariants(N);
    const Int m = systole_count_proxy(N);
    Real n2(Int(N * N), prec);
    Real ratio = Real(I, prec) / (n2 * cnf.value * cnf.value);

    return CensusRecord{N,
                        true,
                        D,
                        class_number(D),
                        log_fundamental_unit(D, prec),
                        cnf.value,
                        series.value,
                        series.error_bound,
                        gs.size(),
                        I,
                        N * N * N * I,
                        m,
                        surf.chi_abs,
                        hp_lower_bound(m, surf.chi_abs, prec),
                        ratio};
}

std::vector<CensusRecord> census_records(const std::vector<Int>& Ns, const CensusOptions& options, unsigned jobs,
                                         const std::function<void(const Int&)>& progress) {
    const std::size_t n = Ns.size();
    std::vector<std::optional<CensusRecord>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;

    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i] = census_record(Ns[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(Ns[i]);
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }

    std::vector<CensusRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace modcross
