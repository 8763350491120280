#pragma once

// Thin RAII wrapper over an MPFR value with an explicit precision.
// Binary operations produce a result at the larger operand precision.

#include "modcross/integer.hpp"

#include <mpfr.h>

#include <string>

namespace modcross {

inline constexpr unsigned kMinPrecisionBits = 50;
inline constexpr unsigned kDefaultPrecisionBits = 64;

class Real {
public:
    explicit Real(unsigned precision_bits = kDefaultPrecisionBits);
    Real(long value, unsigned precision_bits);
    Real(const Int& value, unsigned precision_bits);
    Real(const Rational& value, unsigned precision_bits);
    static Real from_double(double value, unsigned precision_bits);
    static Real from_string(const std::string& text, unsigned precision_bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    Real with_precision(unsigned precision_bits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    /// Decimal rendering with `digits` significant digits, %g style.
    std::string format(int digits = 12) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator-(const Real& a);

    friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }

private:
    mpfr_t v_;
};

Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real abs(const Real& x);
Real digamma(const Real& x);

}  // namespace modcross
