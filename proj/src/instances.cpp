#include "coreep/instances.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "coreep/gen_inverses.hpp"
#include "coreep/matrix_io.hpp"
#include "coreep/order.hpp"
#include "coreep/rng.hpp"

namespace coreep {

namespace {

// Exact table of root_order-th roots of unity; index reduced mod root_order
// so cyclic wraparound identities hold to the last ulp.
std::vector<Complex> unity_roots(int root_order) {
    std::vector<Complex> roots(static_cast<size_t>(root_order));
    for (int t = 0; t < root_order; ++t) {
        double theta = 2.0 * std::numbers::pi * t / root_order;
        double re = std::cos(theta);
        double im = std::sin(theta);
        // snap quarter-turn roots so +-1 and +-i are exact
        if (4 * t % root_order == 0) {
            re = std::round(re);
            im = std::round(im);
        }
        roots[static_cast<size_t>(t)] = {re, im};
    }
    return roots;
}

// Cyclic up-shift: b e_j = e_{j-1 mod n}, ones on the first superdiagonal
// plus the lower-left corner.
CMatrix cyclic_shift(int n) {
    CMatrix b = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) b(i, (i + 1) % n) = 1.0;
    return b;
}

void normalize(CMatrix& m) {
    double s = spectral_norm(m);
    if (s > 1.0) m /= s;
}

}  // namespace

CMatrix gen_with_index(const GenSpec& spec) {
    if (spec.dim < 1 || spec.rank < 0 || spec.rank > spec.dim || spec.condition_cap < 1.0)
        throw std::invalid_argument("gen_with_index: inconsistent spec");
    const int nil_size = spec.dim - spec.rank;
    if (spec.rank == spec.dim) {
        if (spec.index != 0) throw std::invalid_argument("gen_with_index: full rank forces index 0");
    } else if (spec.index < 1 || spec.index > nil_size) {
        throw std::invalid_argument("gen_with_index: index must lie in [1, dim - rank]");
    }

    Rng rng(spec.seed);
    CMatrix blk = CMatrix::Zero(spec.dim, spec.dim);

    if (spec.rank > 0) {
        // core = u diag(sigma) v* with sigma in [1/cap, 1]
        CMatrix u = haar_unitary(spec.rank, rng);
        CMatrix v = haar_unitary(spec.rank, rng);
        Eigen::VectorXd sigma(spec.rank);
        sigma(0) = 1.0;
        for (int i = 1; i < spec.rank; ++i) sigma(i) = std::exp(-rng.unit() * std::log(spec.condition_cap));
        blk.topLeftCorner(spec.rank, spec.rank) = u * sigma.asDiagonal() * v.adjoint();
    }
    if (nil_size > 0 && spec.index >= 2) {
        // one shift chain of length index inside the nilpotent block; the
        // rest of the block stays zero so the nilpotency index is exact
        for (int i = 0; i < spec.index - 1; ++i) {
            Complex w = rng.annulus(0.5, 1.0);
            blk(spec.rank + i, spec.rank + i + 1) = w;
        }
        for (int i = 0; i < spec.index; ++i)
            for (int j = i + 2; j < spec.index; ++j)
                blk(spec.rank + i, spec.rank + j) = 0.3 * rng.normal();
    }

    CMatrix s = well_conditioned_similarity(spec.dim, rng);
    CMatrix a = s * blk * s.partialPivLu().solve(CMatrix::Identity(spec.dim, spec.dim));
    normalize(a);

    if (index(a) != spec.index)
        throw NumericalFailure("gen_with_index: generated matrix misses the requested index",
                               {{"requested", static_cast<double>(spec.index)},
                                {"observed", static_cast<double>(index(a))}});
    return a;
}

CommutationPair gen_lambda_pair(int n, int root_order, std::uint64_t seed, bool singular_direct_summand) {
    if (n < 1 || root_order < 1 || n % root_order != 0)
        throw std::invalid_argument("gen_lambda_pair: root_order must be a positive divisor of n");
    Rng rng(seed);
    auto roots = unity_roots(root_order);
    Complex lambda = roots[root_order > 1 ? 1 : 0];
    Complex d = rng.annulus(0.5, 1.5);

    const int total = n + (singular_direct_summand ? 4 : 0);
    CMatrix a = CMatrix::Zero(total, total);
    CMatrix b = CMatrix::Zero(total, total);

    // main block: a_j = d * lambda^{-j} via the exact root table, b cyclic
    for (int j = 0; j < n; ++j) {
        int t = ((-j) % root_order + root_order) % root_order;
        a(j, j) = d * roots[static_cast<size_t>(t)];
    }
    b.topLeftCorner(n, n) = cyclic_shift(n);

    if (singular_direct_summand) {
        // summand 1: a-block nilpotent shift, b-block diagonal with ratio 1/lambda
        Complex w1 = rng.annulus(0.5, 1.0);
        Complex h = rng.annulus(0.5, 1.0);
        a(n + 1, n) = w1;  // down-shift: a e_n = e_{n+1}
        b(n, n) = h;
        b(n + 1, n + 1) = h / lambda;
        // summand 2: a-block diagonal with ratio lambda, b-block nilpotent shift
        Complex g = rng.annulus(0.5, 1.0);
        Complex w2 = rng.annulus(0.5, 1.0);
        a(n + 2, n + 2) = g;
        a(n + 3, n + 3) = lambda * g;
        b(n + 3, n + 2) = w2;
    }

    normalize(a);
    normalize(b);
    CommutationPair pair;
    pair.a = std::move(a);
    pair.b = std::move(b);
    pair.lambda = lambda;
    pair.mu = std::conj(lambda);
    return pair;
}

CommutationPair gen_lambda_pair_nilpotent(int n, Complex lambda, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_lambda_pair_nilpotent: n must be >= 2");
    if (lambda == Complex(0.0)) throw std::invalid_argument("gen_lambda_pair_nilpotent: lambda must be nonzero");
    Rng rng(seed);
    CMatrix a = CMatrix::Zero(n, n);
    CMatrix b = CMatrix::Zero(n, n);
    // a = diag geometric with ratio lambda, b = truncated shift (b e_j = e_{j+1});
    // then ab = lambda ba and a*b = conj(lambda) ba* without any root condition.
    Complex g = rng.annulus(0.5, 1.0);
    for (int j = 0; j < n; ++j) {
        a(j, j) = g;
        g *= lambda;
    }
    for (int j = 0; j + 1 < n; ++j) b(j + 1, j) = rng.annulus(0.5, 1.0);

    normalize(a);
    normalize(b);
    CommutationPair pair;
    pair.a = std::move(a);
    pair.b = std::move(b);
    pair.lambda = lambda;
    pair.mu = std::conj(lambda);
    return pair;
}

CommutationPair gen_thm35_pair(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_thm35_pair: n must be >= 2");
    Rng rng(seed);
    auto roots = unity_roots(n);
    Complex lambda = roots[1];  // primitive n-th root
    Complex d = rng.annulus(0.5, 1.5);

    CMatrix a = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) a(j, j) = d * roots[static_cast<size_t>(j % n)];  // d_{j+1} = lambda d_j
    CMatrix b = cyclic_shift(n);

    normalize(a);
    CommutationPair pair;
    pair.a = std::move(a);
    pair.b = std::move(b);
    pair.lambda = lambda;
    pair.mu = std::conj(lambda);  // = lambda^{-1} on the unit circle
    pair.lambda_prime = std::conj(lambda);
    pair.mu_prime = lambda;
    return pair;
}

BlockTriple gen_block_triple(int r, int s, BlockTripleMode mode, std::uint64_t seed) {
    if (r < 1 || s < 1) throw std::invalid_argument("gen_block_triple: blocks must be nonempty");
    Rng rng(seed);

    auto random_spec = [&](int dim) {
        GenSpec spec;
        spec.dim = dim;
        spec.rank = static_cast<int>(rng.raw() % static_cast<std::uint64_t>(dim + 1));
        if (spec.rank == dim)
            spec.index = 0;
        else
            spec.index = 1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(dim - spec.rank));
        spec.seed = rng.raw();
        return spec;
    };

    BlockTriple triple;
    switch (mode) {
        case BlockTripleMode::NilpotentD: {
            triple.a = gen_with_index(random_spec(r));
            GenSpec dspec;
            dspec.dim = s;
            dspec.rank = 0;
            dspec.index = 1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(s));
            dspec.seed = rng.raw();
            triple.d = gen_with_index(dspec);
            triple.b = ginibre(r, s, rng);
            normalize(triple.b);
            triple.notes.push_back("mode=NilpotentD");
            break;
        }
        case BlockTripleMode::RangeB: {
            triple.a = gen_with_index(random_spec(r));
            triple.d = gen_with_index(random_spec(s));
            CMatrix raw = ginibre(r, s, rng);
            int k = index(triple.a);
            triple.b = mat_pow(triple.a, k) * raw;
            // a^k r at the roundoff floor of the power chain means the range
            // is trivial (a nilpotent): only b = 0 is admissible there
            double floor_norm = 64.0 * std::numeric_limits<double>::epsilon() *
                                std::pow(spectral_norm(triple.a), static_cast<double>(k)) * raw.norm();
            double bnorm = spectral_norm(triple.b);
            if (bnorm <= floor_norm) {
                triple.b.setZero();
                triple.notes.push_back("range trivial; b = 0");
            } else {
                triple.b /= bnorm;  // keep the instance non-trivial
            }
            triple.notes.push_back("mode=RangeB");
            break;
        }
        case BlockTripleMode::NullspaceSolve: {
            triple.a = gen_with_index(random_spec(r));
            triple.d = gen_with_index(random_spec(s));
            DrazinResult dza = drazin(triple.a);
            DrazinResult dzd = drazin(triple.d);
            CMatrix k = CMatrix::Zero(r * s, r * s);
            CMatrix ai = CMatrix::Identity(r, r);
            CMatrix ddpow = dzd.dinv * dzd.dinv;
            for (int i = 0; i <= dza.index; ++i) {
                if (i > 0) {
                    ai = ai * triple.a;
                    ddpow = ddpow * dzd.dinv;
                }
                k += Eigen::kroneckerProduct(CMatrix(ddpow.transpose()), CMatrix(ai * dza.spectral_idempotent));
            }
            Eigen::JacobiSVD<CMatrix> svd(k, Eigen::ComputeFullV);
            const auto& sing = svd.singularValues();
            double cutoff = sing.size() > 0 ? 64.0 * std::numeric_limits<double>::epsilon() * sing(0) : 0.0;
            int rank_k = 0;
            for (Eigen::Index i = 0; i < sing.size(); ++i)
                if (sing(i) > cutoff) ++rank_k;
            int nullity = r * s - rank_k;
            if (nullity == 0) {
                triple.b = CMatrix::Zero(r, s);
                triple.notes.push_back("null space trivial; b = 0");
            } else {
                CMatrix basis = svd.matrixV().rightCols(nullity);
                Eigen::VectorXcd coeff(nullity);
                for (int i = 0; i < nullity; ++i) coeff(i) = rng.normal();
                Eigen::VectorXcd vec = basis * coeff;
                triple.b = Eigen::Map<CMatrix>(vec.data(), r, s);
                normalize(triple.b);
            }
            triple.notes.push_back("mode=NullspaceSolve");
            break;
        }
    }
    return triple;
}

std::pair<CMatrix, CMatrix> gen_order_pair(const std::array<int, 3>& dims, std::uint64_t seed) {
    return thm44_assemble(dims[0], dims[1], dims[2], seed);
}

nlohmann::json bundle_to_json(const std::string& kind, std::uint64_t seed,
                              const std::map<std::string, CMatrix>& matrices,
                              const std::map<std::string, Complex>& scalars) {
    nlohmann::json jm = nlohmann::json::object();
    for (const auto& [name, m] : matrices) jm[name] = matrix_to_json(m);
    nlohmann::json js = nlohmann::json::object();
    for (const auto& [name, z] : scalars) js[name] = {z.real(), z.imag()};
    return nlohmann::json{{"kind", kind}, {"seed", seed}, {"matrices", std::move(jm)}, {"scalars", std::move(js)}};
}

}  // namespace coreep
