#include "modcross/geodesics.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace modcross;

namespace {

Form F(long a, long b, long c) { return Form(a, b, c); }

std::vector<GeodesicClass> classes_of(long D) {
    std::vector<GeodesicClass> out;
    for (const FormCycle& c : class_representatives(D)) out.emplace_back(c.front());
    return out;
}

std::vector<GeodesicClass> corpus() {
    std::vector<GeodesicClass> out;
    for (long D : {5L, 8L, 12L, 13L, 17L, 21L, 24L, 28L, 29L, 33L})
        for (GeodesicClass& g : classes_of(D)) out.push_back(std::move(g));
    return out;
}

// Random products of S and T^k with every entry bounded by `bound`.
std::vector<Matrix2> random_modular(std::size_t count, long bound, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> k(-3, 3), len(1, 8);
    std::vector<Matrix2> out;
    while (out.size() < count) {
        Matrix2 g = Matrix2::identity();
        bool ok = true;
        for (int i = len(rng); i > 0 && ok; --i) {
            g = g * Matrix2{0, -1, 1, 0} * Matrix2{1, k(rng), 0, 1};
            ok = abs(g.a) <= bound && abs(g.b) <= bound && abs(g.c) <= bound && abs(g.d) <= bound;
        }
        if (ok) out.push_back(g);
    }
    return out;
}

bool interlace_double(const Form& p, const Form& q) {
    auto rts = [](const Form& f) {
        const double s = std::sqrt(f.discriminant().get_d());
        double r1 = (-f.b().get_d() + s) / (2 * f.a().get_d()), r2 = (-f.b().get_d() - s) / (2 * f.a().get_d());
        return std::pair{std::min(r1, r2), std::max(r1, r2)};
    };
    auto [lo, hi] = rts(p);
    auto [x, y] = rts(q);
    return (lo < x && x < hi) != (lo < y && y < hi);
}

}  // namespace

TEST_CASE("chebyshev_trace") {
    CHECK(chebyshev_trace(3, 1) == 3);
    CHECK(chebyshev_trace(3, 2) == 7);
    CHECK(chebyshev_trace(3, 3) == 18);
    for (long t = 3; t <= 12; ++t) {
        const double eps = (t + std::sqrt(double(t * t - 4))) / 2;
        for (unsigned j = 1; j <= 6; ++j)
            REQUIRE(chebyshev_trace(t, j).get_d() == doctest::Approx(std::pow(eps, j) + std::pow(eps, -double(j))));
    }
    CHECK_THROWS_AS(chebyshev_trace(3, 0), domain_error);
}

TEST_CASE("trace_solutions") {
    CHECK(trace_solutions(3) == std::vector<TraceSolution>{{1, 3}});
    CHECK(trace_solutions(7) == std::vector<TraceSolution>{{1, 7}, {2, 3}});
    CHECK(trace_solutions(18) == std::vector<TraceSolution>{{1, 18}, {3, 3}});
    for (long N = 3; N <= 3000; ++N) {
        std::vector<TraceSolution> brute;
        for (unsigned j = 1; j <= 12; ++j)
            for (long t = 3; t <= N; ++t) {
                const Int v = chebyshev_trace(t, j);
                if (v > N) break;  // V_j is increasing in t
                if (v == N) brute.push_back({j, Int(t)});
            }
        REQUIRE(trace_solutions(N) == brute);
        const double jmax = 2 * std::log(double(N)) / std::log((3 + std::sqrt(5.0)) / 2);
        for (const TraceSolution& s : brute) REQUIRE(s.j <= jmax);
    }
}

TEST_CASE("primitive_geodesics_of_trace examples") {
    auto g3 = primitive_geodesics_of_trace(3);
    REQUIRE(g3.size() == 1);
    CHECK(g3[0].D0() == 5);

    CHECK(pell_min(32) == PellSolution{6, 1, 32});
    CHECK(pell_min(8) == PellSolution{6, 2, 8});
    auto g6 = primitive_geodesics_of_trace(6);
    std::map<long, std::size_t> by_disc;
    for (const GeodesicClass& g : g6) ++by_disc[g.D0().get_si()];
    CHECK(by_disc == std::map<long, std::size_t>{{8, class_number(8)}, {32, class_number(32)}});

    auto g4 = primitive_geodesics_of_trace(4);
    CHECK(g4.size() == 2);
    for (const GeodesicClass& g : g4) CHECK(g.D0() == 12);
}

TEST_CASE("geodesic class invariants") {
    for (long t = 3; t <= 40; ++t) {
        for (const GeodesicClass& g : primitive_geodesics_of_trace(t)) {
            REQUIRE(g.t() == t);
            REQUIRE(g.t() * g.t() - 4 == g.u() * g.u() * g.D0());
            REQUIRE(pell_min(g.D0()) == g.pell());
            REQUIRE(g.generator().trace() == t);
            const double nr = std::pow((t + std::sqrt(double(t * t - 4))) / 2, 2);
            REQUIRE(std::sqrt(nr) + 1 / std::sqrt(nr) == doctest::Approx(double(t)));
        }
    }
}

TEST_CASE("closed_geodesics_of_trace") {
    auto c3 = closed_geodesics_of_trace(3);
    REQUIRE(c3.size() == 1);
    CHECK(c3[0].j == 1);

    auto c7 = closed_geodesics_of_trace(7);
    std::size_t j1 = 0, j2 = 0;
    for (const TracedGeodesic& g : c7) {
        if (g.j == 1) {
            ++j1;
            CHECK(g.base.t() == 7);
            CHECK(g.base.D0() == 45);  // the u = 3, D0 = 5 branch is the square of the trace-3 class
        } else {
            ++j2;
            CHECK(g.j == 2);
            CHECK(g.base.D0() == 5);
        }
    }
    CHECK(j1 == class_number(45));
    CHECK(j2 == 1);
    // every trace-7 conjugacy class, primitive or not
    CHECK(static_cast<long>(c7.size()) == oracle::conjugacy_classes_of_trace(7, 50, 10));

    for (long N = 3; N <= 60; ++N)
        for (const TracedGeodesic& g : closed_geodesics_of_trace(N))
            if (g.j == 1) REQUIRE(g.base.t() == N);
}

TEST_CASE("primitive class counts match conjugacy-class enumeration") {
    const long trace3 = oracle::conjugacy_classes_of_trace(3, 1000, 20);
    for (long t = 3; t <= 12; ++t) {
        long brute = oracle::conjugacy_classes_of_trace(t, 1000, 20);
        if (t == 7) brute -= trace3;  // squares of trace-3 elements; no other powers have trace <= 12
        REQUIRE(static_cast<long>(primitive_geodesics_of_trace(t).size()) == brute);
    }
}

TEST_CASE("mixed_sign") {
    CHECK(mixed_sign(0, 1, 2, -1, 3, 0) == -1);  // sqrt2 - sqrt3
    CHECK(mixed_sign(-3, 1, 2, 1, 3, 0) == 1);   // sqrt2 + sqrt3 - 3
    CHECK(mixed_sign(0, 0, 2, 0, 3, 1) == 1);    // sqrt6
    CHECK(mixed_sign(-5, 0, 2, 0, 3, -2) == -1);  // -5 - 2 sqrt6
    CHECK(mixed_sign(0, 2, 2, -1, 8, 0) == 0);    // 2 sqrt2 - sqrt8
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(-30, 30);
    const long ds[] = {2, 3, 5, 6, 7, 12, 13, 21};
    for (int it = 0; it < 20000; ++it) {
        const long d1 = ds[it % 8], d2 = ds[(it / 8) % 8];
        const long p = c(rng), q = c(rng), s = c(rng), t = c(rng);
        const long double v = p + q * std::sqrt((long double)d1) + s * std::sqrt((long double)d2) +
                              t * std::sqrt((long double)(d1 * d2));
        const int sg = mixed_sign(p, q, d1, s, d2, t);
        if (std::fabs((double)v) > 1e-9) REQUIRE(sg == (v > 0 ? 1 : -1));
    }
}

TEST_CASE("axes_cross examples") {
    CHECK_FALSE(axes_cross(F(1, 0, -3), F(1, 0, -2)));
    CHECK(axes_cross(F(1, 0, -3), F(1, -4, 1)));
    CHECK_THROWS_AS(axes_cross(F(1, 1, -1), F(1, 1, -1)), domain_error);
    CHECK_THROWS_AS(axes_cross(F(1, 1, -1), F(-1, -1, 1)), domain_error);
}

TEST_CASE("axes_cross is symmetric, agrees with floating roots and is modular invariant") {
    std::vector<Form> forms;
    for (long D : {5L, 8L, 12L, 13L, 21L, 28L, 60L})
        for (const FormCycle& c : class_representatives(D))
            for (const Form& f : c.forms()) {
                forms.push_back(f);
                forms.push_back(act(Matrix2{1, 1, 0, 1}, f));
                forms.push_back(act(Matrix2{1, -2, 0, 1}, f));
            }
    const auto gs = random_modular(50, 20, 11);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        for (std::size_t k = 0; k < forms.size(); ++k) {
            if (same_axis(forms[i], forms[k])) continue;
            const bool x = axes_cross(forms[i], forms[k]);
            REQUIRE(x == axes_cross(forms[k], forms[i]));
            REQUIRE(x == interlace_double(forms[i], forms[k]));
            REQUIRE(x == crossing_point(forms[i], forms[k]).has_value());
            if ((i * 7 + k) % 11 == 0)
                for (const Matrix2& g : gs) REQUIRE(axes_cross(act(g, forms[i]), act(g, forms[k])) == x);
        }
    }
}

TEST_CASE("compare_real across radicands") {
    CHECK(compare_real(QuadIrr(0, 1, 2, 1), QuadIrr(0, 1, 3, 1)) < 0);
    CHECK(compare_real(QuadIrr(1, 1, 5, 2), QuadIrr(3, 0, 5, 2)) > 0);
    CHECK(compare_real(QuadIrr(0, 1, 12, 2), QuadIrr(0, 1, 3, 1)) == 0);
    CHECK(compare_real(QuadIrr(0, 2, 12, 2), QuadIrr(0, 3, 3, 1)) < 0);
}

TEST_CASE("elliptic points") {
    CHECK(is_elliptic_point({0, 1}));                          // i
    CHECK(is_elliptic_point({Rational(1, 2), 1}));             // exp(i pi/3)
    CHECK(is_elliptic_point({Rational(1, 2), Rational(1, 2)}));  // (1 + i)/2
    CHECK(is_elliptic_point({1, 2}));                          // 1 + i
    CHECK(is_elliptic_point({Rational(-7, 2), 13}));  // rho - 4
    CHECK_FALSE(is_elliptic_point({0, 4}));
    CHECK_FALSE(is_elliptic_point({Rational(1, 3), Rational(1, 2)}));
    // images of i and rho under random modular elements
    for (const Matrix2& g : random_modular(200, 50, 3)) {
        // g(w) for w = x + iy with |w|^2 = n: Re = (ac n + (ad + bc) x + bd)/den, |.|^2 = (a^2 n + 2ab x + b^2)/den
        for (auto [x, n] : {std::pair{Rational(0), Rational(1)}, std::pair{Rational(1, 2), Rational(1)}}) {
            Rational den = Rational(g.c * g.c) * n + Rational(2 * g.c * g.d) * x + Rational(g.d * g.d);
            Rational re = (Rational(g.a * g.c) * n + Rational(g.a * g.d + g.b * g.c) * x + Rational(g.b * g.d)) / den;
            Rational nn = (Rational(g.a * g.a) * n + Rational(2 * g.a * g.b) * x + Rational(g.b * g.b)) / den;
            REQUIRE(is_elliptic_point({re, nn}));
        }
    }
}

TEST_CASE("Farey segments") {
    for (const GeodesicClass& g : corpus()) {
        FareySegments s(g);
        REQUIRE(!s.entering().empty());
        REQUIRE(s.rotated().size() == 3 * s.entering().size());
        for (const Form& f : s.entering()) {
            REQUIRE(f.a() > 0);
            REQUIRE(f.c() < 0);
            REQUIRE(cycle(f) == g.cycle());
        }
    }
    // x^2 + xy - y^2: the river crosses (0, inf) along (1,1,-1) and (1,-1,-1)
    auto e5 = FareySegments(classes_of(5)[0]).entering();
    std::sort(e5.begin(), e5.end());
    CHECK(e5 == std::vector<Form>{F(1, -1, -1), F(1, 1, -1)});
}

TEST_CASE("intersection numbers on the corpus") {
    // ordered crossing orbits, from an independent enumeration
    const std::map<std::pair<long, long>, std::int64_t> frozen{
        {{5, 5}, 0},  {{5, 8}, 0},  {{5, 12}, 4}, {{5, 13}, 0},   {{8, 8}, 8},
        {{8, 12}, 8}, {{8, 13}, 8}, {{12, 12}, 4}, {{12, 13}, 12}, {{13, 13}, 16}};
    const auto gs = corpus();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        for (std::size_t k = i; k < gs.size(); ++k) {
            const GeodesicClass &a = gs[i], &b = gs[k];
            const std::int64_t fast = crossing_orbits_fast(FareySegments(a), FareySegments(b));
            const OracleResult o = crossing_orbits_oracle(a, b);
            REQUIRE(fast == o.pairs);
            REQUIRE(o.rounds.size() >= 2);
            REQUIRE(o.rounds[o.rounds.size() - 2].pairs == o.pairs);
            REQUIRE(o.rounds.back().a_max >= o.a_rigorous);
            REQUIRE(o.rounds.back().b_max >= o.b_rigorous);
            auto it = frozen.find({a.D0().get_si(), b.D0().get_si()});
            if (it != frozen.end()) REQUIRE(fast == it->second);

            REQUIRE(intersection_number(a, b) == intersection_number(b, a));
            REQUIRE(intersection_number(a, b) == intersection_number(reverse(a), b));
            REQUIRE(intersection_number(a, b) == (same_support(a, b) ? o.pairs / 2 : o.pairs));
        }
    }
}

TEST_CASE("self-intersection") {
    const GeodesicClass g5 = classes_of(5)[0];
    CHECK(intersection_number(g5, g5) == 0);
    CHECK(intersection_number_oracle(g5, g5) == 0);
    const GeodesicClass g8 = classes_of(8)[0];
    CHECK(intersection_number(g8, g8) == 4);
    CHECK(intersection_number(classes_of(13)[0], classes_of(13)[0]) == 8);
    const auto c12 = classes_of(12);
    CHECK(reverse(c12[0]) == c12[1]);
    CHECK(same_support(c12[0], c12[1]));
    CHECK(intersection_number(c12[0], c12[1]) == intersection_number(c12[0], c12[0]));
}

TEST_CASE("intersects and the diagonal policy") {
    const GeodesicClass g5 = classes_of(5)[0];
    const auto c12 = classes_of(12);
    const GeodesicClass g8 = classes_of(8)[0];
    CHECK_FALSE(intersects({g5, 2}, {g5, 1}));
    CHECK_FALSE(intersects({g5, 2}, {g5, 1}, DiagonalPolicy::count_self));
    CHECK_FALSE(intersects({g5, 1}, {g5, 1}, DiagonalPolicy::count_self));
    CHECK_FALSE(intersects({g8, 1}, {g8, 1}));
    CHECK(intersects({g8, 1}, {g8, 3}, DiagonalPolicy::count_self));
    CHECK(intersects({g5, 2}, {c12[0], 1}) == intersects({g5, 1}, {c12[0], 1}));
    CHECK(intersects({g5, 2}, {c12[0], 1}));
    CHECK_FALSE(intersects({c12[0], 1}, {c12[1], 2}));
}

TEST_CASE("power invariance of the intersection indicator") {
    const auto gs = corpus();
    for (const GeodesicClass& a : gs) {
        for (const GeodesicClass& b : gs) {
            const bool base = intersects({a, 1}, {b, 1});
            const Matrix2 Ma = a.generator(), Mb = b.generator();
            for (unsigned j = 1; j <= 4; ++j) {
                // the j-th power read back as a form: same primitive class, content grows
                const ContentForm pa = form_from_matrix(Ma.pow(j).transpose());
                REQUIRE(GeodesicClass(pa.form) == a);
                for (unsigned k = 1; k <= 4; ++k) {
                    const ContentForm pb = form_from_matrix(Mb.pow(k).transpose());
                    REQUIRE(intersects({GeodesicClass(pa.form), j}, {GeodesicClass(pb.form), k}) == base);
                }
            }
        }
    }
}
