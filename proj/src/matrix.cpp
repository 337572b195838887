#include "coreep/matrix.hpp"

#include <stdexcept>

#include <Eigen/SVD>

namespace coreep {

CMatrix conj_transpose(const CMatrix& m) { return m.adjoint(); }

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

int rank_with_cutoff(const CMatrix& m, double cutoff) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return r;
}

int rank(const CMatrix& m, const ToleranceConfig& cfg) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    double cutoff = cfg.rank_tol * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return r;
}

CMatrix pinv_with_cutoff(const CMatrix& m, double cutoff) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix pinv(const CMatrix& m, const ToleranceConfig& cfg) {
    double smax = spectral_norm(m);
    return pinv_with_cutoff(m, cfg.rank_tol * smax);
}

CMatrix range_projector_with_cutoff(const CMatrix& m, double cutoff) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    CMatrix u = svd.matrixU().leftCols(r);
    return u * u.adjoint();
}

CMatrix range_projector(const CMatrix& m, const ToleranceConfig& cfg) {
    double smax = spectral_norm(m);
    return range_projector_with_cutoff(m, cfg.rank_tol * smax);
}

namespace {
double power_anchor(const CMatrix& m, int k, double rank_tol) {
    double base = spectral_norm(m);
    return base <= 0.0 ? 0.0 : rank_tol * std::pow(base, static_cast<double>(k));
}
}  // namespace

int rank_of_power(const CMatrix& m, int k, const ToleranceConfig& cfg) {
    return rank_with_cutoff(mat_pow(m, k), power_anchor(m, k, cfg.rank_tol));
}

CMatrix range_projector_of_power(const CMatrix& m, int k, const ToleranceConfig& cfg) {
    return range_projector_with_cutoff(mat_pow(m, k), power_anchor(m, k, cfg.rank_tol));
}

bool range_equal(const CMatrix& x, const CMatrix& y, const ToleranceConfig& cfg) {
    if (x.rows() != y.rows()) throw std::invalid_argument("range_equal: row counts differ");
    CMatrix stacked(x.rows(), x.cols() + y.cols());
    stacked << x, y;
    int rx = rank(x, cfg);
    int ry = rank(y, cfg);
    return rx == ry && rx == rank(stacked, cfg);
}

bool range_contained(const CMatrix& x, const CMatrix& y, const ToleranceConfig& cfg) {
    if (x.rows() != y.rows()) throw std::invalid_argument("range_contained: row counts differ");
    CMatrix stacked(x.rows(), x.cols() + y.cols());
    stacked << y, x;
    return rank(y, cfg) == rank(stacked, cfg);
}

double rel_residual(const CMatrix& x, const CMatrix& y) {
    return (x - y).norm() / (1.0 + x.norm() + y.norm());
}

Comparison approx_equal(const CMatrix& x, const CMatrix& y, const ToleranceConfig& cfg) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("approx_equal: shape mismatch");
    double r = rel_residual(x, y);
    return {r <= cfg.eq_tol, r};
}

double nilpotency_residual(const CMatrix& n) {
    if (n.rows() != n.cols()) throw std::invalid_argument("nilpotency_residual: non-square");
    double scale = std::max(1.0, n.norm());
    CMatrix p = mat_pow(n, static_cast<int>(n.rows()));
    return p.norm() / std::pow(scale, static_cast<double>(n.rows()));
}

CMatrix mat_pow(const CMatrix& m, int k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("mat_pow: non-square matrix");
    if (k < 0) throw std::invalid_argument("mat_pow: negative exponent");
    CMatrix acc = CMatrix::Identity(m.rows(), m.cols());
    CMatrix base = m;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

}  // namespace coreep
