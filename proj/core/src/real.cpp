#include "modcross/real.hpp"

#include <algorithm>
#include <vector>

namespace modcross {

namespace {

mpfr_prec_t checked(unsigned bits) {
    if (bits < MPFR_PREC_MIN || bits > 1u << 20) throw domain_error("Real: unsupported precision " + std::to_string(bits));
    return static_cast<mpfr_prec_t>(bits);
}

void widen(mpfr_ptr v, mpfr_srcptr other) {
    if (mpfr_get_prec(other) > mpfr_get_prec(v)) mpfr_prec_round(v, mpfr_get_prec(other), MPFR_RNDN);
}

}  // namespace

Real::Real(unsigned precision_bits) {
    mpfr_init2(v_, checked(precision_bits));
    mpfr_set_zero(v_, 1);
}

Real::Real(long value, unsigned precision_bits) : Real(precision_bits) { mpfr_set_si(v_, value, MPFR_RNDN); }

Real::Real(const Int& value, unsigned precision_bits) : Real(precision_bits) {
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& value, unsigned precision_bits) : Real(precision_bits) {
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_double(double value, unsigned precision_bits) {
    Real r(precision_bits);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
}

Real Real::from_string(const std::string& text, unsigned precision_bits) {
    Real r(precision_bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_))
        throw domain_error("Real: cannot parse '" + text + "'");
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(unsigned precision_bits) const {
    Real r(precision_bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::format(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    if (n < 0) return "nan";
    if (static_cast<std::size_t>(n) >= buf.size()) {
        buf.resize(static_cast<std::size_t>(n) + 1);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    }
    return std::string(buf.data());
}

Real& Real::operator+=(const Real& o) {
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o) {
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r(x.precision());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r(x.precision());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real digamma(const Real& x) {
    Real r(x.precision());
    mpfr_digamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace modcross
