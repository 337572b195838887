#include "coreep/rng.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace coreep {

Complex Rng::normal() {
    double u1 = 1.0 - unit();  // (0, 1]
    double u2 = unit();
    double r = std::sqrt(-std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

Complex Rng::phase() {
    double theta = 2.0 * std::numbers::pi * unit();
    return {std::cos(theta), std::sin(theta)};
}

Complex Rng::annulus(double lo, double hi) {
    double modulus = lo + (hi - lo) * unit();
    return modulus * phase();
}

CMatrix ginibre(int rows, int cols, Rng& rng) {
    CMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
    return g;
}

CMatrix haar_unitary(int n, Rng& rng) {
    if (n == 0) return CMatrix(0, 0);
    CMatrix g = ginibre(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix phases so the distribution is Haar, not merely unitary
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double ad = std::abs(d);
        q.col(j) *= ad > 0 ? d / ad : Complex(1.0);
    }
    return q;
}

CMatrix well_conditioned_similarity(int n, Rng& rng) {
    CMatrix q = haar_unitary(n, rng);
    CMatrix g = ginibre(n, n, rng);
    double norm = spectral_norm(g);
    if (norm > 0) g /= norm;
    return q * (CMatrix::Identity(n, n) + 0.35 * g);
}

}  // namespace coreep
