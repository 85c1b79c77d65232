#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amgm/amgm.hpp"
#include "amgm/gap_report.hpp"
#include "amgm/matrix.hpp"
#include "amgm/norms.hpp"
#include "amgm/random.hpp"

namespace amgm {

// Instance generators for randomized sweeps. Families for the means draw from
// all four kinds. Pairs for the power inequalities stay moderately
// conditioned: fractional powers of products with eigenvalues far below the
// spectral tolerance cannot be resolved in double precision.

/// One of wishart(p in [1, d+3]), projector(rank in [0, d]), diagonal, or
/// rotated-diagonal with condition up to 1e3, chosen uniformly.
Matrix sweep_psd(Rng& rng, std::size_t d);

/// n members from sweep_psd.
MatrixFamily sweep_family(Rng& rng, std::size_t n, std::size_t d);

/// Pair for the power inequalities: rotated-diagonal (condition <= 4),
/// projector with rotated-diagonal, well-conditioned wishart, commuting
/// diagonal, or commuting with a shared rotation.
std::pair<Matrix, Matrix> sweep_power_pair(Rng& rng, std::size_t d);

/// Wishart(p >= d+2), projector, rotated-diagonal (condition <= 100), or diagonal.
Matrix sweep_wedge_matrix(Rng& rng, std::size_t d);

/// r uniform in [1, 4].
double sweep_r(Rng& rng);
/// Exponent uniform in (0, 3].
double sweep_exponent(Rng& rng);

/// One trial of the proved-inequality suite: pair, Hölder and sandwich checks,
/// the trace, norm, eigenvalue-product and majorization forms of ALT,
/// |||B²A||| >= |||BAB|||, the PSD-order remark, and the m = 2, 3 means.
/// Every report is seeded with derive_seed(seed, trial).
std::vector<GapReport> verify_trial(std::uint64_t seed, std::uint64_t trial,
                                    const std::vector<int>& d_values,
                                    const std::vector<NormSpec>& norms, double epsilon);

}  // namespace amgm
