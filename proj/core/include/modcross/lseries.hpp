#pragma once

// L(1, chi_D) for the Kronecker character chi_D(n) = (D/n), computed two ways:
// a truncated Dirichlet series with a rigorous tail bound, and the class
// number formula h(D) log(eps_D) / sqrt(D).

#include "modcross/real.hpp"

namespace modcross {

enum class LMethod { series, class_number_formula };

struct LValue {
    Real value;
    LMethod method;
    Real error_bound;  // zero for the class number formula
    Int D;
};

/// Sum of chi_D(n)/n over 1 <= n <= cutoff, with |L(1,chi_D) - value| <= error_bound.
/// Requires cutoff >= |D|.
LValue l_one_chi_series(const Int& D, const Int& cutoff, unsigned precision_bits = kDefaultPrecisionBits);

/// h(D) log(eps_D) / sqrt(D) for a fundamental discriminant D.
LValue l_one_chi_cnf(const Int& D, unsigned precision_bits = kDefaultPrecisionBits);

/// log(eps_D) with eps_D = (s + t sqrt D)/2 from pell_min(D).
Real log_fundamental_unit(const Int& D, unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace modcross
