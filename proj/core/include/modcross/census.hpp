#pragma once

// Per-N aggregates: the family of N with N^2 - 4 squarefree, the intersection
// count I(N) over closed geodesics of trace N, the prime geodesic sum Pi(x),
// and the congruence-surface quantities feeding the crossing bounds.

#include "modcross/geodesics.hpp"
#include "modcross/real.hpp"

#include <functional>
#include <vector>

namespace modcross {

/// All N in [3, limit] with N^2 - 4 squarefree (empty for limit < 3).
std::vector<Int> n_family(const Int& limit);

/// Membership test for the family.
bool in_family(const Int& N);

enum class Orientation { oriented, unoriented };

/// Closed geodesics of trace N. The unoriented list keeps one of each pair {g, reverse g}.
std::vector<TracedGeodesic> traced_geodesics(const Int& N, Orientation orientation = Orientation::oriented);

/// Ordered-pair intersection count over traced_geodesics(N). Same-support pairs
/// contribute nothing; with count_self each entry adds its self-intersection number.
Int I_of_N(const Int& N, Orientation orientation = Orientation::oriented,
           DiagonalPolicy diagonal = DiagonalPolicy::exclude);

/// Sum of log Nr over primitive classes with Nr = eps^2 < x.
Real pgt_pi(const Real& x);

/// |PSL2(Z/NZ)| = N^3/2 prod_{p | N} (1 - p^-2).
Int psl2_order(const Int& N);

struct SurfaceInvariants {
    Int genus;
    Int cusps;
    Int chi_abs;

    friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

SurfaceInvariants surface_invariants(const Int& N);

/// psl2_order(N) h(N^2 - 4); N must be in the family.
Int systole_count_proxy(const Int& N);

/// (m log(m / ((chi+1) e^6)))^2 / (128 chi) for m >= e^6 (chi+1), else 0.
Real hp_lower_bound(const Int& m, const Int& chi_abs, unsigned precision_bits = kDefaultPrecisionBits);

struct CensusOptions {
    Orientation orientation = Orientation::oriented;
    DiagonalPolicy diagonal = DiagonalPolicy::exclude;
    unsigned precision_bits = kDefaultPrecisionBits;
    Int series_cutoff = 1000000;
    /// Pairs whose discriminants are both at most this are recounted by the oracle.
    Int verify_max_disc = 100;
};

struct CensusRecord {
    Int N;
    bool in_family;
    Int D;
    std::size_t h;
    Real log_eps;
    Real L_cnf;
    Real L_series;
    Real L_series_error;
    std::size_t n_geodesics;
    Int I_N;
    Int cr_upper_proxy;
    Int m_systoles;
    Int chi_abs;
    Real hp_lower;
    Real ratio_upper;
};

/// Every field for N in the family. Throws consistency_error when a verified pair disagrees.
CensusRecord census_record(const Int& N, const CensusOptions& options = {});

/// census_record for each N on `jobs` worker threads; results follow the order of Ns.
/// The first failing N (in list order) has its exception rethrown. `progress` is
/// called once per finished N, serialized, in completion order.
std::vector<CensusRecord> census_records(const std::vector<Int>& Ns, const CensusOptions& options, unsigned jobs,
                                         const std::function<void(const Int&)>& progress = {});

}  // namespace modcross
