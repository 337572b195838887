// Seeded generators producing structured matrices and pairs that satisfy
// each law's hypothesis non-vacuously and by construction: residuals on the
// outputs measure floating-point rounding only. All outputs are normalized
// to spectral norm <= 1 and are bit-identical for a fixed seed.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coreep/laws.hpp"
#include "coreep/matrix.hpp"

namespace coreep {

struct GenSpec {
    int dim = 2;
    int rank = 1;   // rank of the invertible core, i.e. rank(a^index)
    int index = 1;  // requested drazin index; 0 iff rank == dim
    std::uint64_t seed = 0;
    double condition_cap = 2.0;  // max singular-value ratio of the core
};

/// a = s * blockdiag(core, nilpotent) * s^{-1} with the core invertible of
/// the requested rank and condition, the nilpotent block of exactly the
/// requested index, and s a random well-conditioned similarity.
/// Throws std::invalid_argument on inconsistent specs.
CMatrix gen_with_index(const GenSpec& spec);

/// a = diag(d, d/lambda, ..., d/lambda^{n-1}) with lambda the primitive
/// root_order-th root of unity (root_order must divide n), b the cyclic
/// shift; then ab = lambda ba and a*b = conj(lambda) ba* exactly. With
/// singular_direct_summand, two 2x2 blocks (a nilpotent-shift/diagonal pair
/// and its mirror) are appended so both a and b are singular.
CommutationPair gen_lambda_pair(int n, int root_order, std::uint64_t seed, bool singular_direct_summand);

/// Non-root-of-unity regime: lambda arbitrary nonzero, b nilpotent (so the
/// law conclusions trivialize on the b side). a is an invertible diagonal
/// geometric progression, b the truncated (non-cyclic) shift.
CommutationPair gen_lambda_pair_nilpotent(int n, Complex lambda, std::uint64_t seed);

/// a diagonal geometric with ratio lambda = primitive n-th root of unity,
/// b the cyclic shift: bab = lambda ab^2 = mu b^2 a with mu = lambda^{-1},
/// and the conjugate relations with lambda' = conj(lambda), mu' = conj(mu).
CommutationPair gen_thm35_pair(int n, std::uint64_t seed);

enum class BlockTripleMode { NilpotentD, RangeB, NullspaceSolve };

struct BlockTriple {
    CMatrix a;
    CMatrix b;
    CMatrix d;
    std::vector<std::string> notes;
};

/// Triples (a, b, d) satisfying the vanishing-series hypothesis of the
/// block-triangular law: NilpotentD forces d^D = 0, RangeB picks b inside
/// range(a^{index(a)}) so a^pi b = 0, NullspaceSolve samples b from the null
/// space of the vectorized series map (b = 0 with a note if it is trivial).
BlockTriple gen_block_triple(int r, int s, BlockTripleMode mode, std::uint64_t seed);

/// Ordered pair with prescribed projection ranks; delegates to thm44_assemble.
std::pair<CMatrix, CMatrix> gen_order_pair(const std::array<int, 3>& dims, std::uint64_t seed);

/// Instance bundle serialization:
/// {"kind", "seed", "matrices": {name: matrix}, "scalars": {name: [re, im]}}.
nlohmann::json bundle_to_json(const std::string& kind, std::uint64_t seed,
                              const std::map<std::string, CMatrix>& matrices,
                              const std::map<std::string, Complex>& scalars);

}  // namespace coreep
