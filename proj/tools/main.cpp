// coreep: compute generalized inverses of complex matrices, verify the
// identity suites on concrete instances, generate structured test instances,
// and run the batch self-test.
//
// Exit codes: 0 success/pass, 1 verification or numerical failure, 2
// usage/input error.

#include <array>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coreep/errors.hpp"
#include "coreep/gen_inverses.hpp"
#include "coreep/instances.hpp"
#include "coreep/laws.hpp"
#include "coreep/matrix_io.hpp"
#include "coreep/order.hpp"
#include "coreep/selftest.hpp"

namespace {

using namespace coreep;

struct Options {
    std::string in, in2, in3;
    std::string out;
    std::string cert_out;
    std::string op;
    std::string law;
    std::string route = "all";
    std::string lambda, mu, lambda2, mu2;
    std::string kind;
    std::string mode = "nilpotent-d";
    std::string dims = "2..4";
    std::string order_dims = "1,1,1";
    int k = 2;
    int n = 4;
    int root_order = 2;
    int dim = 3, rank = 1, index_req = 1;
    int r = 2, s = 2;
    int n_instances = 50;
    bool singular = false;
    bool strict_hypothesis = false;
    std::uint64_t seed = 1;
    ToleranceConfig tol;
};

Complex parse_complex(const std::string& text) {
    size_t comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse complex scalar '" + text + "'; expected re or re,im");
    }
}

Route parse_route(const std::string& r) {
    if (r == "r1") return Route::R1;
    if (r == "r2") return Route::R2;
    if (r == "r3") return Route::R3;
    if (r == "all") return Route::All;
    throw std::invalid_argument("unknown route '" + r + "' (expected r1|r2|r3|all)");
}

nlohmann::json tolerances_json(const ToleranceConfig& tol) {
    return {{"rankTol", tol.rank_tol}, {"eqTol", tol.eq_tol}, {"nilTol", tol.nil_tol}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw MatrixIoError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

int run_compute(const Options& opt) {
    if (opt.in.empty() || opt.out.empty())
        throw std::invalid_argument("compute requires --in and --out");
    CMatrix a = read_matrix(opt.in);
    const ToleranceConfig& tol = opt.tol;

    CMatrix result;
    nlohmann::json report{{"op", opt.op}, {"tolerances", tolerances_json(tol)}};
    auto res = [&report](const char* key, double value) { report["residuals"][key] = value; };

    if (opt.op == "mp") {
        result = pinv(a, tol);
        res("axa", rel_residual(a * result * a, a));
        res("xax", rel_residual(result * a * result, result));
        res("ax-hermitian", rel_residual(CMatrix((a * result).adjoint()), a * result));
        res("xa-hermitian", rel_residual(CMatrix((result * a).adjoint()), result * a));
    } else if (opt.op == "drazin") {
        DrazinResult dz = drazin(a, tol);
        result = dz.dinv;
        report["index"] = dz.index;
        res("commute", rel_residual(a * result, result * a));
        res("inner", rel_residual(result * a * result, result));
        res("power", rel_residual(mat_pow(a, dz.index), result * mat_pow(a, dz.index + 1)));
    } else if (opt.op == "group") {
        result = group_inverse(a, tol);
        res("axa", rel_residual(a * result * a, a));
        res("xax", rel_residual(result * a * result, result));
        res("commute", rel_residual(a * result, result * a));
    } else if (opt.op == "core") {
        result = core_inverse(a, tol);
        res("axa", rel_residual(a * result * a, a));
        res("column-space", range_equal(result, a, tol) ? 0.0 : 1.0);
        res("row-space", range_equal(CMatrix(result.adjoint()), a, tol) ? 0.0 : 1.0);
    } else if (opt.op == "core-ep") {
        CoreEPResult ce = core_ep(a, parse_route(opt.route), tol);
        result = ce.ceinv;
        int k = index(a, tol);
        report["index"] = k;
        report["routesAgree"] = ce.routes_agree;
        report["maxRouteResidual"] = ce.max_route_residual;
        res("outer", rel_residual(a * result * result, result));
        res("ax-hermitian", rel_residual(CMatrix((a * result).adjoint()), a * result));
        res("power", rel_residual(result * mat_pow(a, k + 1), mat_pow(a, k)));
    } else if (opt.op == "bc") {
        if (opt.in2.empty() || opt.in3.empty())
            throw std::invalid_argument("compute bc requires --in2 (b) and --in3 (c)");
        CMatrix b = read_matrix(opt.in2);
        CMatrix c = read_matrix(opt.in3);
        result = bc_inverse(a, b, c, tol);
        res("xab", rel_residual(result * a * b, b));
        res("cax", rel_residual(c * a * result, c));
    } else {
        throw std::invalid_argument("unknown compute op '" + opt.op + "'");
    }

    write_matrix(opt.out, result);
    write_json(opt.out + ".report.json", report);
    return 0;
}

int run_verify(const Options& opt) {
    if (opt.in.empty()) throw std::invalid_argument("verify requires --in");
    const ToleranceConfig& tol = opt.tol;
    CMatrix a = read_matrix(opt.in);

    auto need2 = [&] {
        if (opt.in2.empty()) throw std::invalid_argument("law '" + opt.law + "' requires --in2");
        return read_matrix(opt.in2);
    };
    auto pair_from = [&](bool primes) {
        CommutationPair pair;
        pair.a = a;
        pair.b = need2();
        if (opt.lambda.empty() || opt.mu.empty())
            throw std::invalid_argument("law '" + opt.law + "' requires --lambda and --mu");
        pair.lambda = parse_complex(opt.lambda);
        pair.mu = parse_complex(opt.mu);
        if (primes) {
            if (opt.lambda2.empty() || opt.mu2.empty())
                throw std::invalid_argument("law '" + opt.law + "' requires --lambda2 and --mu2");
            pair.lambda_prime = parse_complex(opt.lambda2);
            pair.mu_prime = parse_complex(opt.mu2);
        }
        return pair;
    };

    VerificationReport report;
    if (opt.law == "thm2.1") {
        report = verify_thm21(a, need2(), tol);
    } else if (opt.law == "cor2.2") {
        report = verify_cor22(a, tol);
    } else if (opt.law == "thm2.3") {
        report = verify_thm23(a, tol);
    } else if (opt.law == "lem3.2") {
        CMatrix x = need2();
        CommutationPair pair;
        pair.a = a;
        pair.b = x;
        if (opt.lambda.empty() || opt.mu.empty())
            throw std::invalid_argument("lem3.2 requires --lambda and --mu");
        pair.lambda = parse_complex(opt.lambda);
        pair.mu = parse_complex(opt.mu);
        report = verify_lemma32(pair, x, tol);
    } else if (opt.law == "thm3.3") {
        report = verify_thm33(pair_from(false), tol);
    } else if (opt.law == "lem3.4") {
        report = verify_lemma34(a, opt.k, tol);
    } else if (opt.law == "thm3.5") {
        report = verify_thm35(pair_from(true), tol);
    } else if (opt.law == "thm3.6") {
        CMatrix b = need2();
        if (opt.in3.empty()) throw std::invalid_argument("thm3.6 requires --in3 (d block)");
        CMatrix d = read_matrix(opt.in3);
        report = verify_thm36(a, b, d, tol);
    } else if (opt.law == "order") {
        OrderResult ord = order_holds(a, need2(), tol);
        report.law_id = "order";
        report.tolerance = tol.eq_tol;
        report.hypothesis_satisfied = true;
        report.conclusion_holds = ord.holds;
        report.residuals = ord.residuals;
    } else if (opt.law == "lem4.2") {
        report = lemma42_check(a, need2(), tol);
    } else if (opt.law == "lem4.3") {
        report = lemma43_corner(a, need2(), tol);
    } else if (opt.law == "thm4.4") {
        CMatrix b = need2();
        report.law_id = "thm4.4";
        report.tolerance = tol.eq_tol;
        try {
            OrderCertificate cert = thm44_decompose(a, b, tol);
            report.hypothesis_satisfied = true;
            report.conclusion_holds = true;
            for (const auto& [key, value] : cert.residuals) {
                report.residuals[key] = value;
                double bound = key.rfind("nil.", 0) == 0 ? tol.nil_tol : tol.eq_tol;
                report.conclusion_holds = report.conclusion_holds && value <= bound;
            }
            if (!opt.cert_out.empty()) write_json(opt.cert_out, certificate_to_json(cert));
        } catch (const OrderViolation& e) {
            report.hypothesis_satisfied = false;
            report.conclusion_holds = false;
            report.notes.push_back(std::string("vacuous: ") + e.what());
        }
    } else {
        throw std::invalid_argument("unknown law '" + opt.law + "'");
    }

    nlohmann::json j = report_to_json(report);
    j["tolerances"] = tolerances_json(tol);
    std::cout << j.dump(2) << "\n";
    if (!opt.out.empty()) write_json(opt.out, j);

    if (report.hypothesis_satisfied) return report.conclusion_holds ? 0 : 1;
    return opt.strict_hypothesis ? 1 : 0;
}

int run_gen(const Options& opt) {
    if (opt.out.empty()) throw std::invalid_argument("gen requires --out");
    nlohmann::json bundle;

    if (opt.kind == "index") {
        GenSpec spec{opt.dim, opt.rank, opt.index_req, opt.seed, 2.0};
        bundle = bundle_to_json("index", opt.seed, {{"a", gen_with_index(spec)}}, {});
    } else if (opt.kind == "lambda-pair") {
        CommutationPair pair = gen_lambda_pair(opt.n, opt.root_order, opt.seed, opt.singular);
        bundle = bundle_to_json("lambda-pair", opt.seed, {{"a", pair.a}, {"b", pair.b}},
                                {{"lambda", pair.lambda}, {"mu", pair.mu}});
    } else if (opt.kind == "lambda-pair-nilpotent") {
        Complex lambda = opt.lambda.empty() ? Complex(0.5, 0.5) : parse_complex(opt.lambda);
        CommutationPair pair = gen_lambda_pair_nilpotent(opt.n, lambda, opt.seed);
        bundle = bundle_to_json("lambda-pair-nilpotent", opt.seed, {{"a", pair.a}, {"b", pair.b}},
                                {{"lambda", pair.lambda}, {"mu", pair.mu}});
    } else if (opt.kind == "thm35-pair") {
        CommutationPair pair = gen_thm35_pair(opt.n, opt.seed);
        bundle = bundle_to_json("thm35-pair", opt.seed, {{"a", pair.a}, {"b", pair.b}},
                                {{"lambda", pair.lambda},
                                 {"mu", pair.mu},
                                 {"lambda2", *pair.lambda_prime},
                                 {"mu2", *pair.mu_prime}});
    } else if (opt.kind == "block-triple") {
        BlockTripleMode mode;
        if (opt.mode == "nilpotent-d")
            mode = BlockTripleMode::NilpotentD;
        else if (opt.mode == "range-b")
            mode = BlockTripleMode::RangeB;
        else if (opt.mode == "nullspace")
            mode = BlockTripleMode::NullspaceSolve;
        else
            throw std::invalid_argument("unknown mode '" + opt.mode + "' (nilpotent-d|range-b|nullspace)");
        BlockTriple t = gen_block_triple(opt.r, opt.s, mode, opt.seed);
        bundle = bundle_to_json("block-triple", opt.seed, {{"a", t.a}, {"b", t.b}, {"d", t.d}}, {});
        bundle["notes"] = t.notes;
    } else if (opt.kind == "order-pair") {
        std::array<int, 3> dims{};
        if (std::sscanf(opt.order_dims.c_str(), "%d,%d,%d", &dims[0], &dims[1], &dims[2]) != 3)
            throw std::invalid_argument("--order-dims expects d1,d2,d3");
        auto [a, b] = gen_order_pair(dims, opt.seed);
        bundle = bundle_to_json("order-pair", opt.seed, {{"a", a}, {"b", b}}, {});
    } else {
        throw std::invalid_argument("unknown kind '" + opt.kind + "'");
    }

    write_json(opt.out, bundle);
    return 0;
}

int run_selftest_cmd(const Options& opt) {
    int lo = 2, hi = 4;
    if (std::sscanf(opt.dims.c_str(), "%d..%d", &lo, &hi) != 2)
        throw std::invalid_argument("--dims expects lo..hi");
    SelfTestSummary summary = run_selftest(opt.n_instances, lo, hi, opt.seed, opt.tol);
    nlohmann::json j = summary_to_json(summary);
    std::cout << j.dump(2) << "\n";
    if (!opt.out.empty()) write_json(opt.out, j);
    return summary.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-inverse toolkit for complex matrices"};
    app.require_subcommand(1);
    Options opt;

    auto add_tolerances = [&](CLI::App* cmd) {
        cmd->add_option("--tol-eq", opt.tol.eq_tol, "relative equality tolerance");
        cmd->add_option("--tol-rank", opt.tol.rank_tol, "relative rank cutoff factor");
        cmd->add_option("--tol-nil", opt.tol.nil_tol, "nilpotency tolerance");
    };

    CLI::App* compute = app.add_subcommand("compute", "compute an inverse and write it with a residual report");
    compute->add_option("op", opt.op, "mp|drazin|group|core|core-ep|bc")->required();
    compute->add_option("--in", opt.in, "input matrix file")->required();
    compute->add_option("--in2", opt.in2, "second operand (bc: b)");
    compute->add_option("--in3", opt.in3, "third operand (bc: c)");
    compute->add_option("--route", opt.route, "core-ep route: r1|r2|r3|all");
    compute->add_option("--out", opt.out, "output matrix file")->required();
    add_tolerances(compute);

    CLI::App* verify = app.add_subcommand("verify", "verify one law on concrete operands");
    verify->add_option("law", opt.law,
                       "thm2.1|cor2.2|thm2.3|lem3.2|thm3.3|lem3.4|thm3.5|thm3.6|order|lem4.2|lem4.3|thm4.4")
        ->required();
    verify->add_option("--in", opt.in, "first matrix")->required();
    verify->add_option("--in2", opt.in2, "second matrix");
    verify->add_option("--in3", opt.in3, "third matrix");
    verify->add_option("--lambda", opt.lambda, "complex scalar re,im");
    verify->add_option("--mu", opt.mu, "complex scalar re,im");
    verify->add_option("--lambda2", opt.lambda2, "complex scalar re,im");
    verify->add_option("--mu2", opt.mu2, "complex scalar re,im");
    verify->add_option("--k", opt.k, "power for lem3.4");
    verify->add_option("--out", opt.out, "write the report JSON here as well");
    verify->add_option("--cert", opt.cert_out, "thm4.4: write the certificate JSON here");
    verify->add_flag("--strict-hypothesis", opt.strict_hypothesis, "exit 1 on vacuous reports");
    add_tolerances(verify);

    CLI::App* gen = app.add_subcommand("gen", "generate a structured instance bundle");
    gen->add_option("--kind", opt.kind,
                    "index|lambda-pair|lambda-pair-nilpotent|thm35-pair|block-triple|order-pair")
        ->required();
    gen->add_option("--dim", opt.dim, "dimension (kind=index)");
    gen->add_option("--rank", opt.rank, "core rank (kind=index)");
    gen->add_option("--index", opt.index_req, "drazin index (kind=index)");
    gen->add_option("--n", opt.n, "size (pair kinds)");
    gen->add_option("--root-order", opt.root_order, "root of unity order (lambda-pair)");
    gen->add_option("--lambda", opt.lambda, "ratio (lambda-pair-nilpotent)");
    gen->add_flag("--singular", opt.singular, "append singular direct summands (lambda-pair)");
    gen->add_option("--r", opt.r, "top block size (block-triple)");
    gen->add_option("--s", opt.s, "bottom block size (block-triple)");
    gen->add_option("--mode", opt.mode, "nilpotent-d|range-b|nullspace (block-triple)");
    gen->add_option("--order-dims", opt.order_dims, "d1,d2,d3 (order-pair)");
    gen->add_option("--seed", opt.seed, "generator seed");
    gen->add_option("--out", opt.out, "output bundle file")->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run the batch property suite");
    selftest->add_option("--n", opt.n_instances, "instances per suite");
    selftest->add_option("--dims", opt.dims, "dimension range lo..hi");
    selftest->add_option("--seed", opt.seed, "corpus seed");
    selftest->add_option("--out", opt.out, "write the summary JSON here as well");
    add_tolerances(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed()) return run_compute(opt);
        if (verify->parsed()) return run_verify(opt);
        if (gen->parsed()) return run_gen(opt);
        return run_selftest_cmd(opt);
    } catch (const MatrixIoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const NoGroupInverse& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NoBcInverse& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const RouteMismatch& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return 1;
    } catch (const OrderViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
