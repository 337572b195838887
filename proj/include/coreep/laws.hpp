// Verifiers that take concrete matrices (and scalar weights) and certify one
// law each: hypothesis check, conclusion check, residual report. A report
// never throws on a failed law; failures are report content. Residual keys
// follow a fixed convention: "hyp.*" back hypothesisSatisfied, "info.*" are
// descriptive only, and every remaining key backs conclusionHolds.

#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coreep/matrix.hpp"

namespace coreep {

struct VerificationReport {
    std::string law_id;
    bool hypothesis_satisfied = true;
    bool conclusion_holds = false;
    std::map<std::string, double> residuals;
    double tolerance = 0.0;
    std::vector<std::string> notes;
};

nlohmann::json report_to_json(const VerificationReport& report);

// A pair (a, b) with declared commutation weights. The weights are always
// caller-supplied: inferring lambda from a x = lambda x a is ill-posed when x
// has a zero pattern.
struct CommutationPair {
    CMatrix a;
    CMatrix b;
    Complex lambda{1.0, 0.0};
    Complex mu{1.0, 0.0};
    std::optional<Complex> lambda_prime;
    std::optional<Complex> mu_prime;
};

/// Equivalence of the three condition sets characterizing x as the core-EP
/// inverse of a: (1) x equals the computed inverse; (2) xax = x, (ax)* = ax,
/// (xa - I)a^D = 0, range(x) inside range(a^D); (3) xax = x with the
/// column spaces of x and x* both equal to that of a^D. The conclusion is
/// that all three agree; condition (3) is evaluated both through rank
/// comparisons and through orthogonal-projector equality (the annihilator
/// route), which must also agree.
VerificationReport verify_thm21(const CMatrix& a, const CMatrix& x, const ToleranceConfig& cfg = {});

/// Direct-sum decompositions of the n^2-dimensional matrix space along the
/// drazin inverse d = a^D:  M = dM (+) r(d) = d*M (+) r(d) and
/// M = Md (+) l(d) = Md* (+) l(d), where l/r are the left/right annihilators.
/// Each pairing couples ideals of the same side; the report also records the
/// defect of the mixed-side pairing for reference. Requires n <= 8.
VerificationReport verify_cor22(const CMatrix& a, const ToleranceConfig& cfg = {});

/// q = rangeProjector(a^D) is the unique projection with the column space of
/// a^D, and a^{ce} = a^D q. Uniqueness is checked against the independent
/// projector a^D * coreInverse(a^D).
VerificationReport verify_thm23(const CMatrix& a, const ToleranceConfig& cfg = {});

/// If a x = lambda x a and a* x = mu x a*, then a^{ce} x = lambda^{-1} x a^{ce}.
VerificationReport verify_lemma32(const CommutationPair& pair, const CMatrix& x, const ToleranceConfig& cfg = {});

/// If ab = lambda ba and a*b = mu ba*, then
/// (ab)^{ce} = b^{ce} a^{ce} = lambda^{-1} a^{ce} b^{ce}.
VerificationReport verify_thm33(const CommutationPair& pair, const ToleranceConfig& cfg = {});

/// (a^k)^{ce} = (a^{ce})^k and a^{ce} = a^{k-1} (a^k)^{ce}; no hypothesis.
VerificationReport verify_lemma34(const CMatrix& a, int k, const ToleranceConfig& cfg = {});

/// Triple-product commutation law. Hypothesis: bab = lambda ab^2 = mu b^2 a
/// and the conjugate relations with lambda', mu'. The conclusion checked is
/// (ab)^{ce} = lambda^{-1} (ab) (b^2)^{ce} (a^2)^{ce}, which is what the
/// hypothesis supports; the commonly quoted closed form
/// mu^{-1} b^{ce} a^{ce} fails on exact instances (e.g. a = diag(1,-1),
/// b the swap, lambda = mu = -1) and is recorded as info.printed-form.
VerificationReport verify_thm35(const CommutationPair& pair, const ToleranceConfig& cfg = {});

/// Block-triangular core-EP formula for m = [[a, b],[0, d]]. Hypothesis: the
/// series sum_i a^i a^pi b (d^D)^{i+2} vanishes (terms beyond index(a) are
/// identically zero and are checked as a truncation self-test). Conclusion:
/// m^{ce} = [[a^{ce}, z],[0, d^{ce}]] with z assembled from the triangular
/// drazin inverse: z = (a^D - a^{ce}) s (d^D)^{core} + s d^D (d^D)^{core},
/// s = sum_i (a^D)^{i+2} b d^i d^pi - a^D b d^D. The two quoted closed forms
/// (with a^{ce} resp. (a^D)^{ce} factors) fail on exact instances -- already
/// for diagonal blocks [2] and [2] -- and are recorded as info residuals.
VerificationReport verify_thm36(const CMatrix& a, const CMatrix& b, const CMatrix& d,
                                const ToleranceConfig& cfg = {});

}  // namespace coreep
