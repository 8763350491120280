#include "modcross/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace modcross {

namespace {

Rational ratio(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

// ---------------------------------------------------------------- traces

Int chebyshev_trace(const Int& t, unsigned j) {
    if (j == 0) throw domain_error("chebyshev_trace: power must be >= 1");
    Int prev = 2, cur = t;
    for (unsigned k = 1; k < j; ++k) {
        Int next = t * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<TraceSolution> trace_solutions(const Int& N) {
    if (N < 3) throw domain_error("trace_solutions: N must be >= 3");
    std::vector<TraceSolution> out{{1, N}};
    for (unsigned j = 2; chebyshev_trace(3, j) <= N; ++j) {
        // V_j is increasing in t on [3, N]
        Int lo = 3, hi = N;
        while (lo < hi) {
            Int mid = (lo + hi) / 2;
            if (chebyshev_trace(mid, j) < N)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (chebyshev_trace(lo, j) == N) out.push_back({j, lo});
    }
    return out;
}

// ---------------------------------------------------------------- classes

GeodesicClass::GeodesicClass(FormCycle cycle, Int D0, Int t, Int u)
    : cycle_(std::move(cycle)), D0_(std::move(D0)), t_(std::move(t)), u_(std::move(u)) {}

GeodesicClass::GeodesicClass(const Form& representative)
    : cycle_(modcross::cycle(representative)), D0_(representative.discriminant()) {
    PellSolution p = pell_min(D0_);
    t_ = p.s;
    u_ = p.t;
}

GeodesicClass reverse(const GeodesicClass& g) { return GeodesicClass(cycle(g.form().negated()), g.D0_, g.t_, g.u_); }

bool same_support(const GeodesicClass& g1, const GeodesicClass& g2) {
    if (g1.D0() != g2.D0()) return false;
    return g1 == g2 || g2.cycle().contains(reduce(g1.form().negated()));
}

namespace {

// Prime factorisation by trial division.
std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    std::vector<std::pair<Int, unsigned>> out;
    for (unsigned long p = 2; Int(p) * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        out.emplace_back(Int(p), e);
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

// All u >= 1 with u^2 | n, ascending.
std::vector<Int> square_divisors(const Int& n) {
    std::vector<Int> us{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = us.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e / 2; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) us.push_back(us[i] * pk);
        }
    }
    std::sort(us.begin(), us.end());
    return us;
}

}  // namespace

std::vector<GeodesicClass> primitive_geodesics_of_trace(const Int& t) {
    if (t < 3) throw domain_error("primitive_geodesics_of_trace: trace must be >= 3");
    const Int n = t * t - 4;
    std::vector<GeodesicClass> out;
    for (const Int& u : square_divisors(n)) {
        Int D0 = n / (u * u);
        if (!is_discriminant(D0)) continue;
        PellSolution p = pell_min(D0);
        if (p.s != t || p.t != u) continue;  // a proper power of a shorter class
        for (FormCycle& c : class_representatives(D0)) out.push_back(GeodesicClass(c.front()));
    }
    return out;
}

std::vector<TracedGeodesic> closed_geodesics_of_trace(const Int& N) {
    std::vector<TracedGeodesic> out;
    for (const TraceSolution& ts : trace_solutions(N))
        for (GeodesicClass& g : primitive_geodesics_of_trace(ts.t)) out.push_back({std::move(g), ts.j});
    return out;
}

// ---------------------------------------------------------------- exact geometry

int mixed_sign(const Int& p, const Int& q, const Int& d1, const Int& s, const Int& d2, const Int& t) {
    if (sgn(d1) < 0 || sgn(d2) < 0) throw domain_error("mixed_sign: negative radicand");
    // alpha + beta sqrt(d2) with alpha = p + q sqrt d1, beta = s + t sqrt d1
    const int sa = sign_of(p, q, d1);
    const int sb = sgn(d2) == 0 ? 0 : sign_of(s, t, d1);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // alpha^2 - beta^2 d2 = (p^2 + q^2 d1 - (s^2 + t^2 d1) d2) + 2 (p q - s t d2) sqrt d1
    const int c = sign_of(p * p + q * q * d1 - (s * s + t * t * d1) * d2, 2 * (p * q - s * t * d2), d1);
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

std::strong_ordering compare_real(const QuadIrr& x, const QuadIrr& y) {
    if (x.is_rational() || y.is_rational() || x.d() == y.d()) return quad_compare(x, y);
    // (x - y) r_x r_y = (p_x r_y - p_y r_x) + q_x r_y sqrt(d_x) - q_y r_x sqrt(d_y)
    const int s = mixed_sign(x.p() * y.r() - y.p() * x.r(), x.q() * y.r(), x.d(), -y.q() * x.r(), y.d(), 0);
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool axes_cross(const Form& q1, const Form& q2) {
    if (same_axis(q1, q2)) throw domain_error("axes_cross: forms " + q1.str() + " and " + q2.str() + " share an axis");
    RootPair r1 = roots(q1);
    RootPair r2 = roots(q2);
    const bool asc = compare_real(r1.repelling, r1.attracting) < 0;
    const QuadIrr& lo = asc ? r1.repelling : r1.attracting;
    const QuadIrr& hi = asc ? r1.attracting : r1.repelling;
    auto inside = [&](const QuadIrr& x) {
        auto c_lo = compare_real(lo, x);
        auto c_hi = compare_real(x, hi);
        if (c_lo == 0 || c_hi == 0) throw domain_error("axes_cross: forms share an endpoint");
        return c_lo < 0 && c_hi < 0;
    };
    return inside(r2.attracting) != inside(r2.repelling);
}

std::optional<CrossPoint> crossing_point(const Form& q1, const Form& q2) {
    // Each axis is {a |w|^2 + b Re(w) + c = 0}; eliminate |w|^2.
    Int den = q2.a() * q1.b() - q1.a() * q2.b();
    if (sgn(den) == 0) return std::nullopt;  // concentric or identical
    Rational x = ratio(q1.a() * q2.c() - q2.a() * q1.c(), den);
    Rational norm = -(q1.b() * x + q1.c()) / q1.a();
    if (norm - x * x <= 0) return std::nullopt;
    return CrossPoint{x, norm};
}

bool is_elliptic_point(const CrossPoint& w) {
    Rational x = w.x, norm = w.norm;
    const Rational half(1, 2);
    for (;;) {
        // translate Re(w) into [-1/2, 1/2)
        Rational shifted = x + half;
        Int k = fdiv(shifted.get_num(), shifted.get_den());
        if (sgn(k) != 0) {
            norm = norm - 2 * k * x + k * k;
            x -= k;
        }
        if (norm < 1) {
            // w -> -1/w
            x = -x / norm;
            norm = 1 / norm;
            continue;
        }
        break;
    }
    return norm == 1 && (sgn(x) == 0 || x == -half);
}

// ---------------------------------------------------------------- fast path

FareySegments::FareySegments(const GeodesicClass& g) {
    Form start = g.form();  // reduced, so a c < 0
    if (sgn(start.a()) < 0) start = Form::trusted(start.c(), -start.b(), start.a());
    Form cur = start;
    do {
        entering_.push_back(cur);
        Int v = cur.a() + cur.b() + cur.c();  // q(1,1): sign decides the exit edge
        if (sgn(v) < 0)
            cur = Form::trusted(cur.a(), 2 * cur.a() + cur.b(), v);  // exits through (1, inf)
        else
            cur = Form::trusted(v, cur.b() + 2 * cur.c(), cur.c());  // exits through (0, 1)
    } while (cur != start);

    const Matrix2 rotation{1, -1, 1, 0};  // z -> 1 - 1/z, cycles 0 -> inf -> 1
    rotated_.reserve(3 * entering_.size());
    for (const Form& f : entering_) {
        Form r = f;
        for (int k = 0; k < 3; ++k) {
            rotated_.push_back(r);
            r = act(rotation, r);
        }
    }
}

namespace {

enum class Location { outside, interior, edge };

// Position of w relative to the closed triangle 0 <= Re w <= 1, |w - 1/2| >= 1/2.
Location locate(const CrossPoint& w) {
    if (sgn(w.x) < 0 || w.x > 1 || w.norm < w.x) return Location::outside;
    if (sgn(w.x) == 0 || w.x == 1 || w.norm == w.x) return Location::edge;
    return Location::interior;
}

// Elliptic points in the closed triangle: i, 1 + i, (1 + i)/2 and (1 + i sqrt 3)/2.
bool is_triangle_cone_point(const CrossPoint& w) {
    static const Rational half(1, 2);
    if (sgn(w.x) == 0) return w.norm == 1;
    if (w.x == 1) return w.norm == 2;
    if (w.x == half) return w.norm == half || w.norm == 1;
    return false;
}

}  // namespace

std::int64_t crossing_orbits_fast(const FareySegments& s1, const FareySegments& s2, bool stop_at_first) {
    // Every orbit of crossing pairs meets the closed triangle in exactly two
    // weighted incidences: one interior point counted twice, or two edge points.
    std::int64_t weight = 0;
    for (const Form& f : s1.entering()) {
        for (const Form& g : s2.rotated()) {
            if (same_axis(f, g)) continue;
            auto w = crossing_point(f, g);
            if (!w) continue;
            Location loc = locate(*w);
            if (loc == Location::outside || is_triangle_cone_point(*w)) continue;
            weight += loc == Location::interior ? 2 : 1;
            if (stop_at_first) return 1;
        }
    }
    if (weight % 2 != 0) throw consistency_error("crossing_orbits_fast: odd incidence weight");
    return weight / 2;
}

// ---------------------------------------------------------------- oracle

namespace {

constexpr std::int64_t kOracleIndexLimit = std::int64_t{1} << 31;

// b mod 2a with b^2 = D mod 4a, per a = 1, 2, ...
class SqrtResidues {
public:
    explicit SqrtResidues(std::int64_t D) : D_(D) {}

    const std::vector<std::int64_t>& of(std::int64_t a) {
        while (static_cast<std::int64_t>(table_.size()) < a) {
            const std::int64_t m = static_cast<std::int64_t>(table_.size()) + 1;
            std::vector<std::int64_t> rs;
            const std::int64_t mod = 4 * m;
            const std::int64_t dm = ((D_ % mod) + mod) % mod;
            for (std::int64_t b = 0; b < 2 * m; ++b)
                if ((b * b) % mod == dm) rs.push_back(b);
            table_.push_back(std::move(rs));
        }
        return table_[static_cast<std::size_t>(a - 1)];
    }

private:
    std::int64_t D_;
    std::vector<std::vector<std::int64_t>> table_;
};

std::int64_t ceil_to_i64(double v) {
    if (!(v < static_cast<double>(kOracleIndexLimit))) throw domain_error("oracle: enumeration bound exceeds 2^31");
    return static_cast<std::int64_t>(std::ceil(v));
}

}  // namespace

OracleResult crossing_orbits_oracle(const GeodesicClass& g1, const GeodesicClass& g2) {
    const Form& q1 = g1.form();
    const Int& D1 = g1.D0();
    const Int& D2 = g2.D0();
    const Matrix2 M = g1.generator();

    // Apex z1 and its image z2 = M z1, as (Re, |.|^2).
    const Rational x1 = ratio(-q1.b(), 2 * q1.a());
    const Rational n1 = ratio(q1.b() * q1.b() + D1, 4 * q1.a() * q1.a());
    Rational den = Rational(M.c * M.c) * n1 + Rational(2 * M.c * M.d) * x1 + Rational(M.d * M.d);
    Rational x2 = (Rational(M.a * M.c) * n1 + Rational(M.a * M.d + M.b * M.c) * x1 + Rational(M.b * M.d)) / den;
    // The arc runs toward the attracting root, which lies right of the apex iff a > 0.
    const bool rightward = sgn(q1.a()) > 0;

    // Lowest arc point has Im = Im(z1)/den; an axis of radius sqrt(D2)/(2|a'|) reaching it needs
    // |a'| <= sqrt(D2 a^2 den^2 / D1).
    const double dd1 = D1.get_d(), dd2 = D2.get_d();
    const double a_abs = std::fabs(q1.a().get_d());
    const double a_rig_d = std::sqrt(dd2 / dd1) * a_abs * den.get_d() + 2.0;
    const double xlo = std::min(x1.get_d(), x2.get_d());
    const double xhi = std::max(x1.get_d(), x2.get_d());
    const double xabs = std::max(std::fabs(xlo), std::fabs(xhi));
    const std::int64_t a_rig = ceil_to_i64(a_rig_d);
    const std::int64_t b_rig = ceil_to_i64(2.0 * a_rig_d * xabs + std::sqrt(dd2) + 2.0);

    const std::int64_t D2i = to_i64(D2);
    if (D2i >= kOracleIndexLimit) throw domain_error("oracle: discriminant too large for enumeration");
    SqrtResidues residues(D2i);
    std::unordered_set<Form, FormHash> target(g2.cycle().forms().begin(), g2.cycle().forms().end());
    const double sqrt_d2 = std::sqrt(dd2);

    auto count = [&](std::int64_t A, std::int64_t B) {
        std::int64_t pairs = 0;
        for (std::int64_t ap = -A; ap <= A; ++ap) {
            if (ap == 0) continue;
            const std::int64_t m = 2 * std::llabs(ap);
            const double radius = sqrt_d2 / static_cast<double>(m);
            // b' = -2 a' * centre, centre in [xlo - radius, xhi + radius]; pad by 2
            double e1 = -2.0 * static_cast<double>(ap) * (xhi + radius);
            double e2 = -2.0 * static_cast<double>(ap) * (xlo - radius);
            std::int64_t lo = std::max<std::int64_t>(-B, static_cast<std::int64_t>(std::floor(std::min(e1, e2))) - 2);
            std::int64_t hi = std::min<std::int64_t>(B, static_cast<std::int64_t>(std::ceil(std::max(e1, e2))) + 2);
            if (lo > hi) continue;
            const Int a_int(static_cast<long>(ap));
            for (std::int64_t r0 : residues.of(std::llabs(ap))) {
                // first b' >= lo with b' = r0 mod m
                std::int64_t bp = lo + (((r0 - lo) % m) + m) % m;
                for (; bp <= hi; bp += m) {
                    const Int b_int(static_cast<long>(bp));
                    Int c_int = (b_int * b_int - D2) / (4 * a_int);
                    if (gcd(a_int, b_int, c_int) != 1) continue;
                    Form cand = Form::trusted(a_int, b_int, c_int);
                    if (same_axis(cand, q1)) continue;
                    auto w = crossing_point(q1, cand);
                    if (!w) continue;
                    const bool on_arc = rightward ? (w->x >= x1 && w->x < x2) : (w->x > x2 && w->x <= x1);
                    if (!on_arc || is_elliptic_point(*w)) continue;
                    if (!target.contains(reduce(cand))) continue;
                    ++pairs;
                }
            }
        }
        return pairs;
    };

    OracleResult result{0, {}, a_rig, b_rig};
    std::int64_t A = ceil_to_i64(4.0 * std::ceil(std::sqrt(dd1 * dd2)));
    std::int64_t B = A;
    for (;;) {
        std::int64_t pairs = count(A, B);
        result.rounds.push_back({A, B, pairs});
        const std::size_t k = result.rounds.size();
        if (k >= 2 && result.rounds[k - 2].pairs == pairs && A >= a_rig && B >= b_rig) break;
        if (A >= kOracleIndexLimit / 2 || B >= kOracleIndexLimit / 2) throw domain_error("oracle: enumeration bound exceeds 2^31");
        A *= 2;
        B *= 2;
    }
    result.pairs = result.rounds.back().pairs;
    return result;
}

// ---------------------------------------------------------------- public counts

namespace {

std::int64_t to_double_points(const GeodesicClass& g1, const GeodesicClass& g2, std::int64_t pairs) {
    if (!same_support(g1, g2)) return pairs;
    if (pairs % 2 != 0) throw consistency_error("self-intersection pair count is odd");
    return pairs / 2;
}

}  // namespace

std::int64_t intersection_number(const GeodesicClass& g1, const GeodesicClass& g2) {
    return to_double_points(g1, g2, crossing_orbits_fast(FareySegments(g1), FareySegments(g2)));
}

std::int64_t intersection_number_oracle(const GeodesicClass& g1, const GeodesicClass& g2) {
    return to_double_points(g1, g2, crossing_orbits_oracle(g1, g2).pairs);
}

bool intersects(const TracedGeodesic& a, const TracedGeodesic& b, DiagonalPolicy policy) {
    if (same_support(a.base, b.base)) {
        if (policy == DiagonalPolicy::exclude) return false;
        return intersection_number(a.base, a.base) > 0;
    }
    return crossing_orbits_fast(FareySegments(a.base), FareySegments(b.base), true) > 0;
}

}  // namespace modcross
