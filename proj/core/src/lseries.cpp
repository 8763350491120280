#include "modcross/lseries.hpp"

#include "modcross/quadforms.hpp"

#include <algorithm>
#include <vector>

namespace modcross {

namespace {

constexpr unsigned kGuardBits = 32;

void check_precision(unsigned bits) {
    if (bits < kMinPrecisionBits) throw domain_error("precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
}

}  // namespace

LValue l_one_chi_series(const Int& D, const Int& cutoff, unsigned precision_bits) {
    check_precision(precision_bits);
    require_discriminant(D);
    const Int period = abs(D);
    if (cutoff < period) throw domain_error("l_one_chi_series: cutoff " + cutoff.get_str() + " is below the period |D| = " + period.get_str());
    const unsigned long q = to_i64(period);
    const unsigned work = precision_bits + kGuardBits;

    // chi over one period and the range of its partial sums S(y), y in [0, q]
    std::vector<int> chi(q + 1, 0);
    long partial = 0, s_min = 0, s_max = 0;
    for (unsigned long r = 1; r <= q; ++r) {
        chi[r] = kronecker(D, Int(r));
        partial += chi[r];
        s_min = std::min(s_min, partial);
        s_max = std::max(s_max, partial);
    }

    // Residue class r contributes chi(r) * sum_{k=0}^{m_r} 1/(r + kq)
    //   = chi(r)/q * (psi(r/q + m_r + 1) - psi(r/q)), with m_r = floor((K - r)/q).
    const Real qr(Int(period), work);
    Real sum(work);
    for (unsigned long r = 1; r <= q; ++r) {
        if (chi[r] == 0) continue;
        Int m = (cutoff - r) / period;
        Real x = Real(Int(r), work) / qr;
        Real term = digamma(x + Real(Int(m + 1), work)) - digamma(x);
        if (chi[r] > 0)
            sum += term;
        else
            sum -= term;
    }
    sum /= qr;

    // Abel summation: |sum_{n > K} chi(n)/n| <= (max S - min S)/(K + 1)
    Real bound = Real(Int(s_max - s_min), work) / Real(Int(cutoff + 1), work);
    return {sum.with_precision(precision_bits), LMethod::series, bound.with_precision(precision_bits), D};
}

Real log_fundamental_unit(const Int& D, unsigned precision_bits) {
    check_precision(precision_bits);
    const unsigned work = precision_bits + kGuardBits;
    PellSolution p = pell_min(D);
    Real eps = (Real(p.s, work) + Real(p.t, work) * sqrt(Real(D, work))) / Real(2L, work);
    return log(eps).with_precision(precision_bits);
}

LValue l_one_chi_cnf(const Int& D, unsigned precision_bits) {
    check_precision(precision_bits);
    if (!is_fundamental_discriminant(D)) throw domain_error("not a fundamental discriminant: " + D.get_str());
    const unsigned work = precision_bits + kGuardBits;
    const std::size_t h = class_number(D);
    Real v = Real(static_cast<long>(h), work) * log_fundamental_unit(D, work) / sqrt(Real(D, work));
    return {v.with_precision(precision_bits), LMethod::class_number_formula, Real(precision_bits), D};
}

}  // namespace modcross
