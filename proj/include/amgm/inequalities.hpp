#pragma once

#include <vector>

#include "amgm/gap_report.hpp"
#include "amgm/matrix.hpp"
#include "amgm/norms.hpp"

namespace amgm {

// Every check orients its report as (claimed larger side) - (smaller side), so
// pass means the inequality holds for the instance within epsilon.
//
// Spectra of BAB and BʳAʳBʳ are taken as squared singular values of the
// factors A^{1/2}B and A^{r/2}Bʳ rather than from the formed products, which
// keeps eigenvalues far below the spectral tolerance of the products resolved.

/// Factor singular values at or below this multiple of ‖A^{r/2}‖‖Bʳ‖ count as zero.
inline constexpr double kFactorSnap = 1e-13;
/// Eigenvalue products below this compare in the log domain, floored here.
inline constexpr double kProductFloor = 1e-30;

/// |||A²||| + |||B²||| >= |||AB||| + |||BA|||
GapReport pair_check(const Matrix& a, const Matrix& b, const NormSpec& spec,
                     double epsilon = kDefaultEpsilon);

/// (1/3) Σ ||| |X_i|³ ||| >= |||X₁X₂X₃|||
GapReport holder_triple_check(const Matrix& x1, const Matrix& x2, const Matrix& x3,
                              const NormSpec& spec, double epsilon = kDefaultEpsilon);

/// ½|||X₁X₂X₁ᵀ||| + ½|||X₃ᵀX₂X₃||| >= |||X₁X₂X₃||| for PSD X₂. For symmetric
/// outer factors this is ½|||X₁X₂X₁||| + ½|||X₃X₂X₃|||.
GapReport sandwich_check(const Matrix& x1, const Matrix& x2, const Matrix& x3,
                         const NormSpec& spec, double epsilon = kDefaultEpsilon);

/// Tr[(BʳAʳBʳ)^q] >= Tr[(BAB)^{rq}], r >= 1, q > 0.
GapReport alt_trace_check(const Matrix& a, const Matrix& b, double r, double q,
                          double epsilon = kDefaultEpsilon);

/// |||(BʳAʳBʳ)^s||| >= |||(BAB)^{rs}|||, r >= 1, s > 0.
GapReport alt_norm_check(const Matrix& a, const Matrix& b, double r, double s,
                         const NormSpec& spec, double epsilon = kDefaultEpsilon);

/// |||B²A||| >= |||BAB|||
GapReport alt4_check(const Matrix& a, const Matrix& b, const NormSpec& spec,
                     double epsilon = kDefaultEpsilon);

/// For k = 1..d: ∏_{i<=k} λ_i((BʳAʳBʳ)^s) >= ∏_{i<=k} λ_i((BAB)^{rs}).
///
/// Each product is the top eigenvalue of ∧ᵏ(BʳAʳBʳ), computed as the squared
/// top singular value of ∧ᵏA^{r/2}·∧ᵏBʳ with both compounds assembled from the
/// eigendecompositions of A and B, so exact zeros and the k = d determinant
/// identity survive rounding.
/// Products outside [kProductFloor, 1e300] are compared as natural logarithms
/// (param domain=log). The k = 1 report carries the deviation from the
/// operator-norm alt_norm_check and fails if it exceeds 1e-8 relative.
std::vector<GapReport> eig_product_check(const Matrix& a, const Matrix& b, double r, double s,
                                         double epsilon = kDefaultEpsilon);

/// x ≺_w y: every top-k partial sum of x is at most that of y plus
/// tol·max(1, |partial sum of y|). Both spectra must be sorted non-increasing.
bool weakly_majorizes(const Spectrum& y, const Spectrum& x, double tol = kDefaultEpsilon);

/// λ((BAB)^{rs}) ≺_w λ((BʳAʳBʳ)^s), reported at the partial sum with the worst
/// relative margin. Also checks that the Ky Fan k-norm difference of the two
/// formed matrices matches the partial-sum difference for every k (param
/// fan_deviation); a mismatch above 1e-8 relative fails the report.
GapReport majorization_bridge_check(const Matrix& a, const Matrix& b, double r, double s,
                                    double epsilon = kDefaultEpsilon);

/// λ_min of sym((½A + ½B)² - (½AB + ½BA)).
double psd_order_check(const Matrix& a, const Matrix& b);

}  // namespace amgm
