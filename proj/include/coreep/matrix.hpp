// Dense complex-matrix kernel: conjugate transpose, numerical rank,
// pseudoinverse, orthogonal range projectors and subspace predicates. All
// other modules express their conditions through these primitives.

#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace coreep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct ToleranceConfig {
    // relative singular-value cutoff factor for rank decisions
    double rank_tol = 64.0 * std::numeric_limits<double>::epsilon();
    // relative Frobenius residual bound for equality checks
    double eq_tol = 1e-8;
    // nilpotency residual bound
    double nil_tol = 1e-8;
};

struct Comparison {
    bool equal;
    double residual;
};

CMatrix conj_transpose(const CMatrix& m);

/// Largest singular value; 0 for the zero matrix.
double spectral_norm(const CMatrix& m);

/// Number of singular values strictly above rank_tol * sigma_max.
int rank(const CMatrix& m, const ToleranceConfig& cfg = {});

/// Rank with an absolute singular-value cutoff. Used where the natural scale
/// of m is known externally (e.g. powers of a fixed matrix, whose roundoff
/// floor is rank_tol * ||a||^k rather than rank_tol * sigma_max(a^k)).
int rank_with_cutoff(const CMatrix& m, double cutoff);

/// Moore-Penrose inverse via SVD truncation at rank_tol * sigma_max.
CMatrix pinv(const CMatrix& m, const ToleranceConfig& cfg = {});
CMatrix pinv_with_cutoff(const CMatrix& m, double cutoff);

/// Orthogonal projector P = P^2 = P^* onto the column space of m.
CMatrix range_projector(const CMatrix& m, const ToleranceConfig& cfg = {});
CMatrix range_projector_with_cutoff(const CMatrix& m, double cutoff);

/// rank(m^k) and the range projector of m^k, with the cutoff anchored at
/// rank_tol * ||m||^k (the roundoff floor of the computed power).
int rank_of_power(const CMatrix& m, int k, const ToleranceConfig& cfg = {});
CMatrix range_projector_of_power(const CMatrix& m, int k, const ToleranceConfig& cfg = {});

/// True iff rank(x) == rank(y) == rank([x y]). Decides every annihilator /
/// column-space equality in this library.
bool range_equal(const CMatrix& x, const CMatrix& y, const ToleranceConfig& cfg = {});

/// True iff the column space of x is contained in the column space of y.
bool range_contained(const CMatrix& x, const CMatrix& y, const ToleranceConfig& cfg = {});

/// ||x - y||_F / (1 + ||x||_F + ||y||_F); the uniform residual used by every
/// equality verifier in the library.
double rel_residual(const CMatrix& x, const CMatrix& y);

Comparison approx_equal(const CMatrix& x, const CMatrix& y, const ToleranceConfig& cfg = {});

/// ||n^dim||_F / max(1, ||n||_F)^dim -- the scale-robust nilpotency residual.
double nilpotency_residual(const CMatrix& n);

/// m^k by repeated squaring; m^0 = I. Throws std::invalid_argument on
/// non-square input.
CMatrix mat_pow(const CMatrix& m, int k);

}  // namespace coreep
