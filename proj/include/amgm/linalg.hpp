#pragma once

#include <functional>

#include "amgm/matrix.hpp"

namespace amgm {

/// Convergence / symmetry tolerance for the Jacobi eigensolver.
inline constexpr double kEigenTol = 1e-13;
/// Relative spectral tolerance: eigenvalues with |λ| <= tol·ρ count as zero,
/// and λ < -tol·ρ marks the input as not positive-semidefinite (ρ = spectral radius).
inline constexpr double kSpectralTol = 1e-11;
inline constexpr int kMaxJacobiSweeps = 100;

struct EigenDecomposition {
  Spectrum values;  // non-increasing
  Matrix vectors;   // column j is the unit eigenvector of values[j]
  int sweeps = 0;
};

/// Cyclic-by-rows Jacobi eigendecomposition of a symmetric matrix.
///
/// The input must be symmetric within tol·max(1, max|S_ij|); it is symmetrized
/// before iterating. Sweeps continue until the off-diagonal Frobenius mass is at
/// most tol·‖S‖_F. Eigenvector signs are normalized so that the first entry with
/// magnitude above 1e-12 is positive.
EigenDecomposition sym_eigen(const Matrix& s, double tol = kEigenTol,
                             int max_sweeps = kMaxJacobiSweeps);

/// X = U·diag(σ)·Vᵀ with σ non-increasing; only σ and V are kept.
struct SingularDecomposition {
  Spectrum values;
  Matrix right;  // column j is the right singular vector of values[j]
  int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi: column rotations of X diagonalize XᵀX without
/// forming it, so small singular values keep accuracy near eps·σ₁ instead of
/// √eps·σ₁. Stops when every column pair satisfies |cᵢ·cⱼ| <= tol·‖cᵢ‖‖cⱼ‖.
SingularDecomposition jacobi_svd(const Matrix& x, double tol = 1e-15,
                                 int max_sweeps = kMaxJacobiSweeps);

/// Singular values of X, the square roots of the eigenvalues of XᵀX.
Spectrum singular_values(const Matrix& x);

/// |X| = (XᵀX)^{1/2}.
Matrix matrix_abs(const Matrix& x);

/// A^s for symmetric PSD A and s > 0. Eigenvalues within tol·ρ of zero are
/// snapped to zero before powering; psd_power(A, 1) returns sym(A) exactly.
Matrix psd_power(const Matrix& a, double s, double tol = kSpectralTol);

/// Eigenvalues of A^s (non-increasing) without forming the matrix.
Spectrum psd_power_spectrum(const Matrix& a, double s, double tol = kSpectralTol);

/// psd_power for matrices that are PSD by construction (products such as BAB):
/// symmetrizes, then clamps every negative eigenvalue instead of rejecting it.
Matrix clamped_psd_power(const Matrix& a, double s, double tol = kSpectralTol);
Spectrum clamped_psd_power_spectrum(const Matrix& a, double s, double tol = kSpectralTol);

/// Snap/clamp a PSD spectrum in place per kSpectralTol semantics. Throws
/// DomainError if an eigenvalue is below -tol·ρ and `strict` is set; otherwise
/// negative values are clamped to zero.
void clean_psd_spectrum(std::vector<double>& eigenvalues, double tol, bool strict);

/// Q·diag(f(λ))·Qᵀ
Matrix spectral_map(const EigenDecomposition& eig, const std::function<double(double)>& f);

/// Nearest PSD matrix in Frobenius norm: symmetrize and clamp negative eigenvalues.
Matrix project_psd(const Matrix& s);

double min_eigenvalue(const Matrix& s);

/// Symmetric within 1e-8·max(1, max|A_ij|) and λ_min >= -tol·max(ρ, tiny).
bool is_psd(const Matrix& a, double tol = kSpectralTol);

/// Throws DomainError naming `what` unless is_psd(a, tol).
void require_psd(const Matrix& a, const char* what, double tol = kSpectralTol);

struct LuDecomposition {
  Matrix lu;                       // unit-lower L below the diagonal, U on and above
  std::vector<std::size_t> perm;   // row i of LU is row perm[i] of the input
  int sign = 1;                    // parity of perm
  bool singular = false;           // an exact zero pivot was hit
};

/// LU with partial pivoting.
LuDecomposition lu_decompose(const Matrix& a);
double determinant(const Matrix& a);
/// Throws DomainError when the matrix is singular.
Matrix inverse(const Matrix& a);

}  // namespace amgm
