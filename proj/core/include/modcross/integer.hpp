#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace modcross {

using Int = mpz_class;
using Rational = mpq_class;

/// Raised when an input lies outside an operation's mathematical domain
/// (square discriminant, non-fundamental discriminant, parabolic matrix, ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when two independent computations of the same quantity disagree.
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int isqrt(const Int& n) {
    if (sgn(n) < 0) throw domain_error("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcd(const Int& a, const Int& b, const Int& c) { return gcd(gcd(a, b), c); }

/// Floor division (rounds toward negative infinity).
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Non-negative residue of a modulo |m|.
inline Int fmod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divisible(const Int& a, const Int& b) {
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline std::int64_t to_i64(const Int& n) {
    if (!mpz_fits_slong_p(n.get_mpz_t())) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
    return n.get_si();
}

struct IntHash {
    std::size_t operator()(const Int& n) const noexcept {
        // low limb mixed with the sign and size is enough for hash buckets
        const auto* z = n.get_mpz_t();
        std::size_t h = z->_mp_size == 0 ? 0 : static_cast<std::size_t>(z->_mp_d[0]);
        return h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::size_t>(z->_mp_size);
    }
};

}  // namespace modcross
