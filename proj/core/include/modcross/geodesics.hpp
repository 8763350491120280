#pragma once

// Closed geodesics on the modular surface PSL2(Z)\H: enumeration by trace
// (primitive classes and their powers) and exact intersection counting.

#include "modcross/quadforms.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace modcross {

/// tr(g^j) from tr(g) = t: V_1 = t, V_2 = t^2 - 2, V_{j+1} = t V_j - V_{j-1}.
Int chebyshev_trace(const Int& t, unsigned j);

struct TraceSolution {
    unsigned j;
    Int t;

    friend bool operator==(const TraceSolution&, const TraceSolution&) = default;
};

/// All (j, t) with j >= 1, t >= 3 and V_j(t) = N, ordered by j. Always contains (1, N).
std::vector<TraceSolution> trace_solutions(const Int& N);

/// A primitive oriented closed geodesic on X(1): the rho-cycle of its forms,
/// the discriminant D0 of those forms, and the fundamental Pell pair (t, u)
/// of D0, so the generator has trace t and t^2 - 4 = u^2 D0.
class GeodesicClass {
public:
    explicit GeodesicClass(const Form& representative);

    const FormCycle& cycle() const { return cycle_; }
    const Form& form() const { return cycle_.front(); }
    const Int& D0() const { return D0_; }
    const Int& t() const { return t_; }
    const Int& u() const { return u_; }
    PellSolution pell() const { return {t_, u_, D0_}; }
    /// Primitive hyperbolic generator fixing the axis of form().
    Matrix2 generator() const { return automorph(form(), pell()); }

    friend bool operator==(const GeodesicClass& l, const GeodesicClass& r) { return l.cycle_ == r.cycle_; }

private:
    GeodesicClass(FormCycle cycle, Int D0, Int t, Int u);
    friend GeodesicClass reverse(const GeodesicClass& g);

    FormCycle cycle_;
    Int D0_, t_, u_;
};

/// The same geodesic traversed backwards: the class of -Q.
GeodesicClass reverse(const GeodesicClass& g);

/// True when both classes trace the same point set (equal, or reverses).
bool same_support(const GeodesicClass& g1, const GeodesicClass& g2);

/// Every primitive class whose generator has trace exactly t (t >= 3): for each
/// u with u^2 | t^2 - 4, D0 = (t^2 - 4)/u^2 a discriminant and pell_min(D0) = (t, u),
/// all classes of discriminant D0.
std::vector<GeodesicClass> primitive_geodesics_of_trace(const Int& t);

/// A closed geodesic of trace N written as the j-th power of a primitive class.
struct TracedGeodesic {
    GeodesicClass base;
    unsigned j;
};

std::vector<TracedGeodesic> closed_geodesics_of_trace(const Int& N);

/// Exact sign of p + q sqrt(d1) + s sqrt(d2) + t sqrt(d1 d2), d1, d2 >= 0.
int mixed_sign(const Int& p, const Int& q, const Int& d1, const Int& s, const Int& d2, const Int& t);

/// Exact order of two quadratic irrationals with possibly different radicands.
std::strong_ordering compare_real(const QuadIrr& x, const QuadIrr& y);

/// True iff the root pairs of q1 and q2 interlace on R, i.e. the axes cross in H.
/// Throws domain_error for forms with a common axis.
bool axes_cross(const Form& q1, const Form& q2);

/// Meeting point w of two axes, as Re(w) and |w|^2 (both rational).
struct CrossPoint {
    Rational x;
    Rational norm;
};

/// nullopt when the axes do not meet in H (or coincide).
std::optional<CrossPoint> crossing_point(const Form& q1, const Form& q2);

/// True iff w lies in the PSL2(Z)-orbit of i or of exp(i pi/3).
bool is_elliptic_point(const CrossPoint& w);

/// Segments of a closed geodesic inside the Farey triangle (0, 1, inf).
class FareySegments {
public:
    explicit FareySegments(const GeodesicClass& g);

    /// Forms of the class with a > 0 > c: lifts entering the triangle through (0, inf).
    const std::vector<Form>& entering() const { return entering_; }
    /// entering() pushed through the three rotations of the triangle.
    const std::vector<Form>& rotated() const { return rotated_; }

private:
    std::vector<Form> entering_;
    std::vector<Form> rotated_;
};

/// Number of PSL2(Z)-orbits of ordered pairs (F1, F2), F1 ~ g1, F2 ~ g2,
/// whose axes cross transversally at a non-elliptic point. With stop_at_first
/// the count stops as soon as it is known to be positive.
std::int64_t crossing_orbits_fast(const FareySegments& s1, const FareySegments& s2, bool stop_at_first = false);

struct OracleRound {
    std::int64_t a_max;
    std::int64_t b_max;
    std::int64_t pairs;
};

struct OracleResult {
    std::int64_t pairs;
    std::vector<OracleRound> rounds;  // termination witness
    std::int64_t a_rigorous;
    std::int64_t b_rigorous;
};

/// Reference count of the same orbits: lifts of g2 crossing the period arc
/// [z1, M z1) of g1's axis, where z1 is the apex and M the generator. Forms
/// (a', b', c') of discriminant D0(g2) are enumerated with |a'| <= A, |b'| <= B,
/// doubling from 4 ceil(sqrt(D1 D2)) until two consecutive rounds agree and the
/// bounds cover the geometric limit of the arc.
OracleResult crossing_orbits_oracle(const GeodesicClass& g1, const GeodesicClass& g2);

/// Intersection number of two primitive closed geodesics (fast path). For two
/// classes with the same support the ordered count is halved, giving double points.
std::int64_t intersection_number(const GeodesicClass& g1, const GeodesicClass& g2);

/// Same quantity from the enumeration oracle.
std::int64_t intersection_number_oracle(const GeodesicClass& g1, const GeodesicClass& g2);

enum class DiagonalPolicy { exclude, count_self };

/// Intersection indicator of two closed geodesics; powers are irrelevant.
/// Pairs with the same support return the diagonal policy value.
bool intersects(const TracedGeodesic& a, const TracedGeodesic& b, DiagonalPolicy policy = DiagonalPolicy::exclude);

}  // namespace modcross
