#pragma once

// Exact integer helpers and quadratic irrationals (p + q*sqrt(d)) / r.

#include "modcross/integer.hpp"

#include <compare>
#include <iosfwd>
#include <string>

namespace modcross {

/// Kronecker symbol (D/n) for n >= 1.
int kronecker(const Int& D, const Int& n);

/// True iff no prime square divides m (m >= 1).
bool is_squarefree(const Int& m);

/// Exact sign of p + q*sqrt(d) for d >= 0.
int sign_of(const Int& p, const Int& q, const Int& d);

/// Raised by quad_compare when both operands carry different radicals.
class incompatible_radicals : public domain_error {
public:
    using domain_error::domain_error;
};

/// The real number (p + q*sqrt(d)) / r with d a positive non-square and r > 0.
///
/// Values are kept canonical: r > 0, gcd(p, q, r) = 1, and q = 0 forces
/// the rational part alone to carry the value. Equality is structural on the
/// canonical form.
class QuadIrr {
public:
    QuadIrr(Int p, Int q, Int d, Int r = 1);

    static QuadIrr rational(Int num, Int den, Int d);

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& d() const { return d_; }
    const Int& r() const { return r_; }

    bool is_rational() const { return sgn(q_) == 0; }
    int sign() const;
    double approx() const;
    std::string str() const;

    friend bool operator==(const QuadIrr&, const QuadIrr&) = default;

private:
    Int p_, q_, d_, r_;
};

std::ostream& operator<<(std::ostream& os, const QuadIrr& x);

/// Exact order of x and y. Requires x.d() == y.d() unless one side is rational;
/// throws incompatible_radicals otherwise.
std::strong_ordering quad_compare(const QuadIrr& x, const QuadIrr& y);

}  // namespace modcross
