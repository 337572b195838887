// The core-EP partial order a <= b (defined by a a^{ce} = b a^{ce} and
// a^{ce} a = a^{ce} b): direct definition check, the two-block corner
// characterization, corner core-EP facts, and the canonical three-projection
// certificate with its assembler.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "coreep/laws.hpp"
#include "coreep/matrix.hpp"

namespace coreep {

struct OrderResult {
    bool holds = false;
    std::map<std::string, double> residuals;
};

// Certificate of a <= b in the basis of three orthogonal projections:
// e1 = a a^{ce}, e2 = c c^{ce} for the corner c = (I-e1) b (I-e1), and
// e3 = I - e1 - e2. Blocks are ambient compressions e_i * m * e_j, not
// extracted submatrices, so no basis ordering is committed to.
struct OrderCertificate {
    CMatrix e1, e2, e3;
    std::array<std::array<CMatrix, 3>, 3> blocks_a;
    std::array<std::array<CMatrix, 3>, 3> blocks_b;
    std::map<std::string, double> residuals;
};

nlohmann::json certificate_to_json(const OrderCertificate& cert);

OrderResult order_holds(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

/// Equivalence of order_holds(a, b) with the block conditions over
/// p = a a^{ce}: (I-p) b p = 0, p b p = p a p, p b (I-p) = p a (I-p).
VerificationReport lemma42_check(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

/// For an ordered pair, the corner c = (I-p) b (I-p) is core-EP invertible;
/// additionally certifies p b b^{ce} = b b^{ce} p and (I-p) b^{ce} p = 0.
/// Vacuous (hypothesis flag false) when the pair is not ordered.
VerificationReport lemma43_corner(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

/// Builds the three-projection certificate. Throws OrderViolation when
/// order_holds(a, b) fails; numerical defects in the certificate itself are
/// recorded in its residuals map.
OrderCertificate thm44_decompose(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

/// Samples an ordered pair with prescribed projection ranks: blocks are
/// filled in an explicit coordinate basis (invertible upper-triangular
/// diagonal blocks, strictly upper-triangular nilpotent parts), conjugated by
/// a Haar-random unitary, and jointly scaled to spectral norm <= 1. The
/// returned pair is postcondition-checked with order_holds.
std::pair<CMatrix, CMatrix> thm44_assemble(int e1_dim, int e2_dim, int e3_dim, std::uint64_t seed,
                                           const ToleranceConfig& cfg = {});

}  // namespace coreep
