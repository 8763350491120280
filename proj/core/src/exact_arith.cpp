#include "modcross/exact_arith.hpp"

#include <cmath>
#include <ostream>

namespace modcross {

int kronecker(const Int& D, const Int& n) {
    if (sgn(n) < 1) throw domain_error("kronecker: n must be >= 1");
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

bool is_squarefree(const Int& m) {
    if (sgn(m) < 1) throw domain_error("is_squarefree: m must be >= 1");
    Int rest = m;
    // Strip primes up to the cube root; what remains is 1, p, pq or p^2.
    for (unsigned long p = 2;; ++p) {
        Int p3 = Int(p) * p * p;
        if (p3 > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) return false;
    }
    return rest == 1 || !is_square(rest);
}

int sign_of(const Int& p, const Int& q, const Int& d) {
    const int sp = sgn(p);
    const int sq = sgn(q);
    if (sq == 0 || sgn(d) == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // opposite signs: compare p^2 against q^2 d
    const int c = cmp(p * p, q * q * d);
    return c > 0 ? sp : (c < 0 ? sq : 0);
}

QuadIrr::QuadIrr(Int p, Int q, Int d, Int r) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
    if (sgn(d_) <= 0 || is_square(d_)) throw domain_error("QuadIrr: radicand must be a positive non-square, got " + d_.get_str());
    if (sgn(r_) == 0) throw domain_error("QuadIrr: zero denominator");
    if (sgn(r_) < 0) {
        p_ = -p_;
        q_ = -q_;
        r_ = -r_;
    }
    Int g = gcd(p_, q_, r_);
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

QuadIrr QuadIrr::rational(Int num, Int den, Int d) { return QuadIrr(std::move(num), 0, std::move(d), std::move(den)); }

int QuadIrr::sign() const { return sign_of(p_, q_, d_); }

double QuadIrr::approx() const {
    return (p_.get_d() + q_.get_d() * std::sqrt(d_.get_d())) / r_.get_d();
}

std::string QuadIrr::str() const {
    std::string s = "(" + p_.get_str();
    s += sgn(q_) < 0 ? "-" : "+";
    Int aq = abs(q_);
    s += aq.get_str() + "*sqrt(" + d_.get_str() + "))";
    if (r_ != 1) s += "/" + r_.get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const QuadIrr& x) { return os << x.str(); }

std::strong_ordering quad_compare(const QuadIrr& x, const QuadIrr& y) {
    if (!x.is_rational() && !y.is_rational() && x.d() != y.d())
        throw incompatible_radicals("quad_compare: radicals sqrt(" + x.d().get_str() + ") and sqrt(" + y.d().get_str() +
                                    ") differ; use the mixed-field sign routine");
    const Int& d = x.is_rational() ? y.d() : x.d();
    // x - y = [(px ry - py rx) + (qx ry - qy rx) sqrt d] / (rx ry), denominators positive
    Int p = x.p() * y.r() - y.p() * x.r();
    Int q = x.q() * y.r() - y.q() * x.r();
    const int s = sign_of(p, q, d);
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace modcross
