#include "coreep/gen_inverses.hpp"

#include <cmath>
#include <stdexcept>

namespace coreep {

namespace {

void require_square(const CMatrix& a, const char* who) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

// Cutoff for rank/pinv decisions on a^k. Roundoff accumulated while forming
// the power is bounded by a small multiple of eps * ||a||^k, so anchoring the
// cutoff there keeps noise directions out of the rank; it always dominates
// the per-matrix relative cutoff because sigma_max(a^k) <= sigma_max(a)^k.
double power_cutoff(double base_norm, int k, double rank_tol) {
    if (base_norm <= 0.0) return 0.0;
    return rank_tol * std::pow(base_norm, static_cast<double>(k));
}

void check(std::map<std::string, double>& residuals, const char* key, double value) { residuals[key] = value; }

void throw_if_failed(const char* who, const std::map<std::string, double>& residuals, double tol) {
    for (const auto& [key, value] : residuals)
        if (value > tol)
            throw NumericalFailure(std::string(who) + ": identity '" + key + "' residual " + std::to_string(value) +
                                       " exceeds tolerance",
                                   residuals);
}

}  // namespace

int index(const CMatrix& a, const ToleranceConfig& cfg) {
    require_square(a, "index");
    const int n = static_cast<int>(a.rows());
    const double base = spectral_norm(a);
    int prev = n;  // rank of a^0 = I
    CMatrix p = CMatrix::Identity(n, n);
    for (int k = 1; k <= n + 1; ++k) {
        p = p * a;
        int r = rank_with_cutoff(p, power_cutoff(base, k, cfg.rank_tol));
        if (r == prev) return k - 1;
        prev = r;
    }
    return n;
}

DrazinResult drazin(const CMatrix& a, const ToleranceConfig& cfg) {
    require_square(a, "drazin");
    const int n = static_cast<int>(a.rows());
    const int k = index(a, cfg);
    const double base = spectral_norm(a);

    CMatrix ak = mat_pow(a, k);
    CMatrix a2k1 = mat_pow(a, 2 * k + 1);
    CMatrix dinv = ak * pinv_with_cutoff(a2k1, power_cutoff(base, 2 * k + 1, cfg.rank_tol)) * ak;
    CMatrix api = CMatrix::Identity(n, n) - a * dinv;

    std::map<std::string, double> residuals;
    check(residuals, "commute", rel_residual(a * dinv, dinv * a));
    check(residuals, "inner", rel_residual(dinv * a * dinv, dinv));
    check(residuals, "power", rel_residual(ak, dinv * mat_pow(a, k + 1)));
    check(residuals, "idempotent", rel_residual(api * api, api));
    throw_if_failed("drazin", residuals, cfg.eq_tol);

    return {std::move(dinv), k, std::move(api)};
}

CMatrix group_inverse(const CMatrix& a, const ToleranceConfig& cfg) {
    require_square(a, "group_inverse");
    const double base = spectral_norm(a);
    int r1 = rank(a, cfg);
    int r2 = rank_with_cutoff(a * a, power_cutoff(base, 2, cfg.rank_tol));
    if (r1 != r2) throw NoGroupInverse("group_inverse: rank(a) != rank(a^2), index exceeds 1");
    return drazin(a, cfg).dinv;
}

CMatrix one_three_inverse(const CMatrix& a, const ToleranceConfig& cfg) { return pinv(a, cfg); }

CMatrix core_inverse(const CMatrix& a, const ToleranceConfig& cfg) {
    require_square(a, "core_inverse");
    CMatrix g = group_inverse(a, cfg);
    CMatrix x = g * a * pinv(a, cfg);

    std::map<std::string, double> residuals;
    check(residuals, "inner", rel_residual(a * x * a, a));
    check(residuals, "column-space", range_equal(x, a, cfg) ? 0.0 : 1.0);
    // Ax = Aa*: row space of x equals row space of a*, i.e. range(x*) = range(a)
    check(residuals, "row-space", range_equal(CMatrix(x.adjoint()), a, cfg) ? 0.0 : 1.0);
    throw_if_failed("core_inverse", residuals, cfg.eq_tol);
    return x;
}

CoreEPResult core_ep(const CMatrix& a, Route route, const ToleranceConfig& cfg) {
    require_square(a, "core_ep");
    const double base = spectral_norm(a);
    DrazinResult dz = drazin(a, cfg);
    const int k = dz.index;
    const CMatrix& ad = dz.dinv;
    CMatrix ak = mat_pow(a, k);
    CMatrix q = range_projector_with_cutoff(ak, power_cutoff(base, k, cfg.rank_tol));

    auto route1 = [&] { return CMatrix(ad * q); };
    auto route2 = [&] { return CMatrix(ad * ad * core_inverse(ad, cfg)); };
    auto route3 = [&] { return CMatrix(ad * one_three_inverse(a * ad, cfg)); };

    CMatrix x;
    bool agree = true;
    double max_residual = 0.0;
    switch (route) {
        case Route::R1: x = route1(); break;
        case Route::R2: x = route2(); break;
        case Route::R3: x = route3(); break;
        case Route::All: {
            CMatrix x1 = route1();
            CMatrix x2 = route2();
            CMatrix x3 = route3();
            max_residual = std::max({rel_residual(x1, x2), rel_residual(x1, x3), rel_residual(x2, x3)});
            agree = max_residual <= cfg.eq_tol;
            if (!agree)
                throw RouteMismatch("core_ep: computation routes disagree beyond eq_tol", x1, x2, x3, max_residual);
            x = std::move(x1);
            break;
        }
    }

    CMatrix p = a * x;
    std::map<std::string, double> residuals;
    check(residuals, "outer", rel_residual(a * x * x, x));
    check(residuals, "hermitian", rel_residual(CMatrix(p.adjoint()), p));
    check(residuals, "power", rel_residual(x * mat_pow(a, k + 1), ak));
    check(residuals, "q-idempotent", rel_residual(q * q, q));
    check(residuals, "q-hermitian", rel_residual(CMatrix(q.adjoint()), q));
    check(residuals, "q-range", range_equal(q, ad, cfg) ? 0.0 : 1.0);
    check(residuals, "p-idempotent", rel_residual(p * p, p));
    throw_if_failed("core_ep", residuals, cfg.eq_tol);

    return {std::move(x), std::move(q), std::move(p), agree, max_residual};
}

CMatrix bc_inverse(const CMatrix& a, const CMatrix& b, const CMatrix& c, const ToleranceConfig& cfg) {
    require_square(a, "bc_inverse");
    if (b.rows() != a.rows() || b.cols() != a.cols() || c.rows() != a.rows() || c.cols() != a.cols())
        throw std::invalid_argument("bc_inverse: b and c must match the shape of a");

    CMatrix cab = c * a * b;
    int r_cab = rank(cab, cfg);
    int r_b = rank(b, cfg);
    int r_c = rank(c, cfg);
    if (r_cab != r_b || r_cab != r_c)
        throw NoBcInverse("bc_inverse: rank(c a b) = " + std::to_string(r_cab) + ", rank(b) = " + std::to_string(r_b) +
                          ", rank(c) = " + std::to_string(r_c) + "; the (b,c)-inverse does not exist");

    CMatrix x = b * pinv(cab, cfg) * c;

    std::map<std::string, double> residuals;
    check(residuals, "xab", rel_residual(x * a * b, b));
    check(residuals, "cax", rel_residual(c * a * x, c));
    check(residuals, "column-space", range_contained(x, b, cfg) ? 0.0 : 1.0);
    check(residuals, "row-space", range_contained(x.adjoint(), c.adjoint(), cfg) ? 0.0 : 1.0);
    throw_if_failed("bc_inverse", residuals, cfg.eq_tol);
    return x;
}

CoreEPDecomposition core_ep_decompose(const CMatrix& a, const ToleranceConfig& cfg) {
    require_square(a, "core_ep_decompose");
    const double base = spectral_norm(a);
    const int k = index(a, cfg);
    CMatrix ak = mat_pow(a, k);
    CMatrix proj = range_projector_with_cutoff(ak, power_cutoff(base, k, cfg.rank_tol));

    CMatrix core = proj * a;
    CMatrix nil = a - core;  // exact complement, so core + nil == a bitwise

    std::map<std::string, double> residuals;
    check(residuals, "star-orthogonal", rel_residual(core.adjoint() * nil, CMatrix::Zero(a.rows(), a.cols())));
    check(residuals, "product-zero", rel_residual(nil * core, CMatrix::Zero(a.rows(), a.cols())));
    int rc = rank(core, cfg);
    int rc2 = rank_with_cutoff(core * core, power_cutoff(spectral_norm(core), 2, cfg.rank_tol));
    check(residuals, "core-index", rc == rc2 ? 0.0 : 1.0);
    throw_if_failed("core_ep_decompose", residuals, cfg.eq_tol);
    double nilres = nilpotency_residual(nil);
    if (nilres > cfg.nil_tol)
        throw NumericalFailure("core_ep_decompose: nilpotent part fails nil_tol", {{"nilpotency", nilres}});

    CMatrix p = core * core_ep(core, Route::R1, cfg).ceinv;
    auto cmp = approx_equal(p, proj, cfg);
    if (!cmp.equal)
        throw NumericalFailure("core_ep_decompose: p does not match the split projector",
                               {{"p-vs-projector", cmp.residual}});

    return {std::move(core), std::move(nil), std::move(p)};
}

CMatrix projection_characterization(const CMatrix& a, const ToleranceConfig& cfg) {
    require_square(a, "projection_characterization");
    const int n = static_cast<int>(a.rows());
    const double base = spectral_norm(a);
    const int k = index(a, cfg);
    CMatrix ak = mat_pow(a, k);
    CMatrix p = CMatrix::Identity(n, n) - range_projector_with_cutoff(ak, power_cutoff(base, k, cfg.rank_tol));

    std::map<std::string, double> residuals;
    check(residuals, "idempotent", rel_residual(p * p, p));
    check(residuals, "hermitian", rel_residual(CMatrix(p.adjoint()), p));
    check(residuals, "invertible", rank(a + p, cfg) == n ? 0.0 : 1.0);
    check(residuals, "pa-corner", rel_residual(p * a, p * a * p));
    throw_if_failed("projection_characterization", residuals, cfg.eq_tol);
    double nilres = nilpotency_residual(p * a);
    if (nilres > cfg.nil_tol)
        throw NumericalFailure("projection_characterization: p a fails nil_tol", {{"nilpotency", nilres}});
    return p;
}

}  // namespace coreep
