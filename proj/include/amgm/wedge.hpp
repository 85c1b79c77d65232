#pragma once

#include <string>
#include <vector>

#include "amgm/linalg.hpp"
#include "amgm/matrix.hpp"

namespace amgm {

/// Largest wedge-basis size compound() will build.
inline constexpr std::size_t kMaxCompoundSize = 10000;

std::size_t binomial(std::size_t n, std::size_t k);

/// All k-subsets of {0..d-1} in lexicographic order; the basis of ∧ᵏℝᵈ.
struct SubsetIndex {
  std::size_t d = 0;
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> subsets;

  static SubsetIndex make(std::size_t d, std::size_t k);
  std::size_t size() const noexcept { return subsets.size(); }
};

/// k-th compound matrix ∧ᵏA: entry (I, J) is the minor det A[I, J], with I and J
/// running over SubsetIndex::make(d, k). Minors use LU with partial pivoting.
Matrix compound(const Matrix& a, std::size_t k);

/// ∧ᵏ(A^s) assembled from an eigendecomposition A = Q Λ Qᵀ as
/// ∧ᵏQ · diag(∏_{i∈I} λ_i^s) · (∧ᵏQ)ᵀ. Zero eigenvalues stay exactly zero in the
/// products, which keeps the result well resolved where direct minors are not.
Matrix compound_of_power(const EigenDecomposition& eig, std::size_t k, double s);

enum class PropertyStatus { Pass, Fail, Skipped };
std::string to_string(PropertyStatus status);

struct PropertyResult {
  std::string name;
  PropertyStatus status = PropertyStatus::Skipped;
  double max_deviation = 0.0;
};

struct PropertyReport {
  std::size_t d = 0;
  std::size_t k = 0;
  std::vector<PropertyResult> properties;  // six entries, in property order

  /// Every property passed or was skipped.
  bool ok() const;
  double max_deviation() const;
  /// JSON array of {name, status, max_deviation}.
  std::string to_json() const;
};

/// Checks the six antisymmetric-tensor identities on A (and B for
/// multiplicativity). Deviations are max-abs differences scaled by
/// max(1, max|reference|); a property passes when its deviation is <= tol.
///
///   1 multiplicative   ∧ᵏ(AB) = ∧ᵏA ∧ᵏB
///   2 transpose        ∧ᵏ(Aᵀ) = (∧ᵏA)ᵀ
///   3 inverse          ∧ᵏ(A⁻¹) = (∧ᵏA)⁻¹, skipped when |det A| <= tol
///   4 structure        ∧ᵏ of an orthogonal matrix (the eigenbasis of sym A) is
///                      orthogonal, and ∧ᵏA is PSD when A is
///   5 eigenvalues      spec ∧ᵏA = k-fold eigenvalue products, A symmetric
///   6 powers           (∧ᵏA)^s = ∧ᵏ(A^s) for s in {1/2, 2, 3}, A PSD
PropertyReport verify_wedge_properties(const Matrix& a, const Matrix& b, std::size_t k,
                                       double tol = 1e-7);

}  // namespace amgm
