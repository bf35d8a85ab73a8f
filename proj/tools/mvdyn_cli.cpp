#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvdyn/conjugacy.hpp"
#include "mvdyn/core.hpp"
#include "mvdyn/dilation.hpp"
#include "mvdyn/dynamics.hpp"
#include "mvdyn/fock.hpp"
#include "mvdyn/json_io.hpp"
#include "mvdyn/simplex.hpp"
#include "mvdyn/spectrum.hpp"

using nlohmann::json;
using namespace mvdyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitTolerance = 3;

struct ToleranceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json labels_of(const MultiSystem& sys, const std::vector<int>& points) {
    json out = json::array();
    for (int x : points) out.push_back(sys.labels[x]);
    return out;
}

int run_analyze(const std::string& path) {
    MultiSystem sys = load_system(path);
    StructureSummary summary = structure_summary(sys);
    json out;
    out["points"] = sys.labels;
    out["m"] = sys.m;
    out["n"] = sys.n;
    out["surjective"] = summary.surjective;
    out["range_union"] = labels_of(sys, summary.range_union);
    out["z_set"] = labels_of(sys, summary.z_set);
    json fixed = json::object();
    for (int x = 0; x < sys.m; ++x) fixed[sys.labels[x]] = summary.fixed_letters[x];
    out["fixed_letters"] = fixed;

    SemisimpleVerdict verdict = is_semisimple(sys);
    out["semisimple"] = verdict.semisimple;
    if (verdict.certificate) {
        out["certificate"] = {{"U", labels_of(sys, verdict.certificate->U)},
                              {"u", verdict.certificate->u.letters},
                              {"v", verdict.certificate->v.letters}};
    } else if (verdict.proof) {
        json sccs = json::array();
        for (const auto& comp : verdict.proof->sccs) sccs.push_back(labels_of(sys, comp));
        out["structural_proof"] = {{"surjective", verdict.proof->surjective},
                                   {"sccs", sccs},
                                   {"condensation_edges", verdict.proof->condensation_edges}};
    }

    json fibers = json::array();
    for (int x = 0; x < sys.m; ++x) {
        CharacterFiber fiber = character_fiber(sys, x, BallModel::Tensor);
        fibers.push_back({{"point", sys.labels[x]},
                          {"fixed_letters", fiber.fixed_letters},
                          {"dim", fiber.dim},
                          {"tensor_shape", "ball"},
                          {"semicrossed_shape", "polydisc"}});
    }
    out["character_fibers"] = fibers;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_conjugacy(const std::string& path_a, const std::string& path_b, bool strict) {
    MultiSystem a = load_system(path_a);
    MultiSystem b = load_system(path_b);
    json out;
    out["mode"] = strict ? "strict" : "piecewise";
    if (a.m != b.m || a.n != b.n) {
        out["conjugate"] = false;
        out["reason"] = a.m != b.m ? "cardinality" : "map count";
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    if (strict) {
        auto witness = are_conjugate(a, b);
        out["conjugate"] = witness.has_value();
        if (witness) {
            json gamma = json::object();
            for (int x = 0; x < a.m; ++x) gamma[a.labels[x]] = b.labels[witness->gamma[x]];
            out["witness"] = {{"gamma", gamma}, {"alpha", cycles_string(witness->alpha)}};
        }
    } else {
        auto witness = are_piecewise_conjugate(a, b);
        out["conjugate"] = witness.has_value();
        if (witness) {
            json gamma = json::object();
            json alpha = json::object();
            for (int x = 0; x < a.m; ++x) {
                gamma[a.labels[x]] = b.labels[witness->gamma[x]];
                alpha[a.labels[x]] = cycles_string(witness->alpha[x]);
            }
            out["witness"] = {{"gamma", gamma}, {"alpha", alpha}};
        }
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_fock(const std::string& path, int depth, const std::string& poly_path, bool fourier,
             int cesaro_k, bool norm) {
    MultiSystem sys = load_system(path);
    Polynomial a = load_poly(poly_path, sys.m, sys.n);
    json out;
    out["depth"] = depth;
    if (norm) {
        out["norm"] = fmt_fixed(norm_estimate(sys, a, depth));
    } else if (fourier) {
        // the coefficient table: one row per stored word
        json table = json::array();
        for (const auto& [w, f] : a.terms) {
            json coeff = json::array();
            for (const auto& v : f) coeff.push_back({v.real(), v.imag()});
            table.push_back({{"word", w.letters}, {"coeff", coeff}});
        }
        out["fourier"] = table;
    } else if (cesaro_k > 0) {
        Polynomial mean = cesaro(a, cesaro_k);
        out["k"] = cesaro_k;
        out["cesaro"] = poly_to_json(mean);
        double bound = 0.0;
        int deg = a.degree();
        for (int i = 0; i <= deg; ++i)
            bound += norm_estimate(sys, gauge_projection(a, i), depth);
        bound *= deg > 0 ? static_cast<double>(deg) / cesaro_k : 0.0;
        out["error_bound"] = fmt_fixed(bound);
        out["error_norm"] = fmt_fixed(norm_estimate(sys, mean - a, depth));
    } else {
        throw CLI::ValidationError("fock", "choose one of --fourier, --cesaro, --norm");
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_dilate(const std::string& path, std::vector<int> dims, uint64_t seed,
               const std::string& mode_name, int depth, int maximize_rounds) {
    MultiSystem sys = load_system(path);
    if (dims.empty()) dims.assign(sys.m, 1);
    if (static_cast<int>(dims.size()) == 1 && sys.m > 1) dims.assign(sys.m, dims[0]);
    PairMode mode = mode_name == "sep" ? PairMode::Separate : PairMode::Row;
    CovariantPair pair = random_covariant_pair(sys, dims, seed, mode);

    json out;
    out["mode"] = mode_name;
    out["seed"] = seed;
    out["dims"] = dims;
    out["depth"] = depth;

    CovariantRep rep =
        mode == PairMode::Row ? fbp_row_dilation(pair, depth) : separate_isometric_dilation(pair, depth);

    double compression_dev = 0.0;
    for (int i = 0; i < sys.n; ++i)
        for (int r = 0; r < pair.h_dim; ++r)
            for (int c = 0; c < pair.h_dim; ++c)
                compression_dev = std::max(compression_dev, std::abs(rep.S[i](r, c) - pair.A[i](r, c)));
    out["compression_exact"] = compression_dev == 0.0;

    SplitMix64 rng(seed + 1);
    std::vector<CoeffFn> fs;
    for (int trial = 0; trial < 10; ++trial) {
        CoeffFn f(sys.m);
        for (auto& v : f) v = gaussian_cplx(rng);
        fs.push_back(std::move(f));
    }
    double cov = covariance_residual(rep, fs);
    out["covariance_residual"] = fmt_fixed(cov);

    double iso;
    if (mode == PairMode::Row) {
        iso = interior_row_isometry_residual(rep);
        out["row_isometry_residual"] = fmt_fixed(iso);
        MaximalityReport report = maximality_check(rep);
        out["maximality"] = {{"residual", fmt_fixed(report.residual)},
                             {"is_maximal_interior", report.is_maximal_interior}};
    } else {
        iso = separate_isometry_residual(rep);
        out["isometry_residual"] = fmt_fixed(iso);
        out["fullness_residual"] = fmt_fixed(fullness_residual(rep));
    }

    if (maximize_rounds > 0) {
        json rounds = json::array();
        CovariantRep current = rep;
        for (int round = 1; round <= maximize_rounds; ++round) {
            EnlargeResult step =
                mode == PairMode::Row ? maximal_dilation_step(current) : full_dilation_round(current);
            rounds.push_back({{"round", round},
                              {"changed", step.changed},
                              {"residual_before", fmt_fixed(step.residual_before)},
                              {"residual_after", fmt_fixed(step.residual_after)}});
            current = step.rep;
        }
        out["maximize"] = rounds;
    }

    std::cout << out.dump(2) << "\n";
    if (cov >= 1e-10 || iso >= 1e-10) throw ToleranceFailure("dilation residual above 1e-10");
    return kExitOk;
}

int run_simplex(int n, const std::string& edge, int samples, const std::string& partition_spec) {
    if (n < 1) throw CLI::ValidationError("simplex", "--n must be positive");
    size_t comma = edge.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--edge expects two cycle-notation permutations separated by a comma");
    Perm alpha = parse_cycles(edge.substr(0, comma), n);
    Perm beta = parse_cycles(edge.substr(comma + 1), n);

    BlockPartitionPair pp;
    bool have_pp = !partition_spec.empty();
    if (have_pp) {
        json spec = json::parse(partition_spec, nullptr, false);
        if (spec.is_discarded() || !spec.contains("A") || !spec.contains("B"))
            throw std::invalid_argument("--partition expects JSON {\"A\": [[..]], \"B\": [[..]]}");
        pp.A = spec["A"].get<std::vector<std::vector<int>>>();
        pp.B = spec["B"].get<std::vector<std::vector<int>>>();
        pp.validate(n);
    }

    json out;
    out["n"] = n;
    out["edge"] = {cycles_string(alpha), cycles_string(beta)};

    PermLog log_a = perm_log(alpha);
    PermLog log_b = perm_log(beta);
    cplx tr_a = 0.0, tr_b = 0.0;
    for (int i = 0; i < n; ++i) {
        tr_a += log_a.A(i, i);
        tr_b += log_b.A(i, i);
    }
    out["trace_A"] = {fmt_fixed(tr_a.real()), fmt_fixed(tr_b.real())};

    bool endpoints_exact = skeleton_path(alpha, beta, 0.0) == perm_matrix(alpha) &&
                           skeleton_path(alpha, beta, 1.0) == perm_matrix(beta);
    out["endpoints_exact"] = endpoints_exact;

    bool even_to_odd = perm_is_even(alpha) != perm_is_even(beta);
    out["even_to_odd"] = even_to_odd;

    double worst_unitarity = 0.0;
    double worst_det = 0.0;
    json rows = json::array();
    for (int k = 0; k < samples; ++k) {
        double t = samples == 1 ? 0.0 : static_cast<double>(k) / (samples - 1);
        Matrix u = skeleton_path(alpha, beta, t);
        double unitarity = max_abs(gram_sparse(u, u) - Matrix::identity(n));
        worst_unitarity = std::max(worst_unitarity, unitarity);
        cplx d = det(u);
        json row = {{"t", fmt_fixed(t)},
                    {"unitarity", fmt_fixed(unitarity)},
                    {"det", {fmt_fixed(d.real()), fmt_fixed(d.imag())}}};
        if (even_to_odd) {
            cplx expected = std::exp(cplx(0.0, std::numbers::pi * t));
            double det_err = std::abs(d - expected);
            worst_det = std::max(worst_det, det_err);
            row["det_error"] = fmt_fixed(det_err);
        }
        if (have_pp) row["block_condition"] = check_block_condition(u, pp, n);
        rows.push_back(row);
    }
    out["samples"] = rows;

    std::cout << out.dump(2) << "\n";
    if (!endpoints_exact || worst_unitarity >= 1e-12 || worst_det >= 1e-10)
        throw ToleranceFailure("skeleton path tolerance failure");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-algebra computations for finite multivariable dynamical systems"};
    app.require_subcommand(1);

    std::string sys_path, sys_path_b, poly_path, mode_name = "row", edge, partition_spec;
    bool piecewise = false, strict = false, fourier = false, norm = false;
    int depth = 3, cesaro_k = 0, maximize_rounds = 0, simplex_n = 3, samples = 11;
    std::vector<int> dims;
    uint64_t seed = 1;

    auto* analyze = app.add_subcommand("analyze", "structure, semisimplicity, character fibers");
    analyze->add_option("system", sys_path, "system JSON file")->required();

    auto* conj = app.add_subcommand("conjugacy", "piecewise or strict conjugacy with witnesses");
    conj->add_option("systemA", sys_path, "first system")->required();
    conj->add_option("systemB", sys_path_b, "second system")->required();
    auto* pw = conj->add_flag("--piecewise", piecewise, "decide piecewise conjugacy");
    conj->add_flag("--strict", strict, "decide strict conjugacy")->excludes(pw);

    auto* fock = app.add_subcommand("fock", "truncated Fock-space computations");
    fock->add_option("system", sys_path, "system JSON file")->required();
    fock->add_option("--depth", depth, "truncation depth")->required();
    fock->add_option("--poly", poly_path, "polynomial JSON file")->required();
    fock->add_flag("--fourier", fourier, "print the coefficient table");
    fock->add_option("--cesaro", cesaro_k, "Cesaro mean order");
    fock->add_flag("--norm", norm, "norm estimate at the given depth");

    auto* dilate = app.add_subcommand("dilate", "seeded covariant pair dilation with residuals");
    dilate->add_option("system", sys_path, "system JSON file")->required();
    dilate->add_option("--dims", dims, "fiber dimensions (one per point, or one broadcast value)")
        ->delimiter(',');
    dilate->add_option("--seed", seed, "generator seed");
    dilate->add_option("--mode", mode_name, "row | sep")->check(CLI::IsMember({"row", "sep"}));
    dilate->add_option("--depth", depth, "dilation depth");
    dilate->add_option("--maximize", maximize_rounds, "enlargement rounds to run");

    auto* simplex = app.add_subcommand("simplex", "permutation-simplex unitary paths");
    simplex->add_option("--n", simplex_n, "degree of the symmetric group");
    simplex->add_option("--edge", edge, "two permutations in cycle notation, comma separated")
        ->required();
    simplex->add_option("--samples", samples, "sample count along the edge");
    simplex->add_option("--partition", partition_spec, "partition pair as JSON {\"A\":..., \"B\":...}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(sys_path);
        if (app.got_subcommand(conj)) {
            if (piecewise == strict)
                throw CLI::ValidationError("conjugacy", "choose exactly one of --piecewise, --strict");
            return run_conjugacy(sys_path, sys_path_b, strict);
        }
        if (app.got_subcommand(fock)) {
            if (depth < 0) {
                std::cerr << "error: depth must be nonnegative\n";
                return kExitUsage;
            }
            return run_fock(sys_path, depth, poly_path, fourier, cesaro_k, norm);
        }
        if (app.got_subcommand(dilate)) return run_dilate(sys_path, dims, seed, mode_name, depth, maximize_rounds);
        if (app.got_subcommand(simplex)) return run_simplex(simplex_n, edge, samples, partition_spec);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ToleranceFailure& e) {
        std::cerr << "tolerance failure: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitTolerance;
    }
    return kExitUsage;
}
