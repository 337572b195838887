// The inverse family: Drazin, group, {1,3}, core, core-EP (three independent
// computation routes), (b,c)-inverse, the core-plus-nilpotent splitting and
// the invertibility-plus-nilpotency projection. Every result is verified
// against its defining identities before it is returned; ill-conditioning is
// reported, never silently propagated.

#pragma once

#include <map>
#include <string>

#include "coreep/errors.hpp"
#include "coreep/matrix.hpp"

namespace coreep {

struct DrazinResult {
    CMatrix dinv;                 // a^D
    int index = 0;                // smallest k with rank(a^k) = rank(a^{k+1})
    CMatrix spectral_idempotent;  // I - a a^D
};

struct CoreEPResult {
    CMatrix ceinv;  // the core-EP inverse x
    CMatrix q;      // orthogonal projection with range(q) = range(a^D)
    CMatrix p;      // a * x, also an orthogonal projection
    bool routes_agree = true;
    double max_route_residual = 0.0;
};

struct CoreEPDecomposition {
    CMatrix core_part;  // group-invertible summand (index <= 1)
    CMatrix nil_part;   // nilpotent summand; core_part + nil_part == a exactly
    CMatrix p;          // core_part * core_ep(core_part), equals the split projector
};

enum class Route { R1, R2, R3, All };

/// Smallest k >= 0 with rank(a^k) = rank(a^{k+1}); always <= dim.
int index(const CMatrix& a, const ToleranceConfig& cfg = {});

/// a^D = a^k pinv(a^{2k+1}) a^k with k = index(a). Throws NumericalFailure if
/// the Drazin identities do not hold at eq_tol.
DrazinResult drazin(const CMatrix& a, const ToleranceConfig& cfg = {});

/// Drazin inverse restricted to index <= 1; throws NoGroupInverse otherwise.
CMatrix group_inverse(const CMatrix& a, const ToleranceConfig& cfg = {});

/// Canonical {1,3}-inverse, fixed as the Moore-Penrose inverse.
CMatrix one_three_inverse(const CMatrix& a, const ToleranceConfig& cfg = {});

/// Core inverse (index <= 1): group_inverse(a) * a * pinv(a), verified
/// against a = axa plus the column/row space conditions.
CMatrix core_inverse(const CMatrix& a, const ToleranceConfig& cfg = {});

/// Core-EP inverse by one of three algebraically independent routes:
///   R1: a^D * rangeProjector(a^k)
///   R2: (a^D)^2 * coreInverse(a^D)
///   R3: a^D * oneThreeInverse(a a^D)
/// Route::All computes all three, records the worst pairwise residual and
/// returns R1's value; disagreement beyond eq_tol raises RouteMismatch.
CoreEPResult core_ep(const CMatrix& a, Route route = Route::All, const ToleranceConfig& cfg = {});

/// (b,c)-inverse: exists iff rank(c a b) = rank(b) = rank(c), and then equals
/// b * pinv(c a b) * c. Throws NoBcInverse when the rank test fails.
CMatrix bc_inverse(const CMatrix& a, const CMatrix& b, const CMatrix& c, const ToleranceConfig& cfg = {});

/// Split a = core_part + nil_part with core_part^* nil_part = 0,
/// nil_part core_part = 0, core_part of index <= 1 and nil_part nilpotent.
CoreEPDecomposition core_ep_decompose(const CMatrix& a, const ToleranceConfig& cfg = {});

/// The projection p with a + p invertible and p a = p a p nilpotent,
/// realized as I - rangeProjector(a^k).
CMatrix projection_characterization(const CMatrix& a, const ToleranceConfig& cfg = {});

}  // namespace coreep
