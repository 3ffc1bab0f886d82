// conjopt: randomized approximation solvers for real-valued general
// conjugate complex forms and complex multilinear forms over roots of unity,
// the unit circle, and the complex sphere, plus exact desk-scale oracles and
// verification subcommands for the underlying identities and tail bounds.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "conjopt/bench.hpp"
#include "conjopt/conjugate_solvers.hpp"
#include "conjopt/errors.hpp"
#include "conjopt/json_io.hpp"
#include "conjopt/oracle.hpp"
#include "conjopt/polarization.hpp"
#include "conjopt/sampling.hpp"

namespace {

using namespace conjopt;

int parse_order(const std::string& m) {
    if (m == "inf" || m == "infinity") return kUnitCircleOrder;
    int v = std::stoi(m);
    validate_root_order(v);
    return v;
}

void emit(const json& payload, const std::string& output_path) {
    if (output_path.empty())
        std::cout << payload.dump(2) << "\n";
    else
        save_json_file(output_path, payload);
}

std::string now_string() {
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
    return buf;
}

struct CommonSolveArgs {
    std::string input;
    std::string output;
    std::string m = "4";
    double delta = 0.05;
    double gamma = 1.0;
    double epsilon = 0.05;
    long long trials = 0;
    std::uint64_t seed = 1;
    int threads = 1;
};

int cmd_solve_multilinear(const CommonSolveArgs& a, const std::string& model,
                          const std::string& strategy_name) {
    CTensor F = tensor_from_json(load_json_file(a.input));
    RandomSource rng(a.seed);
    SolveReport rep;
    if (model == "sphere") {
        rep = solve_LS(F, a.gamma, a.epsilon, a.trials, rng, a.threads);
    } else {
        int m = model == "circle" ? kUnitCircleOrder : parse_order(a.m);
        BaseCaseStrategy strategy = BaseCaseStrategy::exact();
        if (strategy_name == "alt" || (strategy_name == "auto" && m == kUnitCircleOrder))
            strategy = BaseCaseStrategy::alternating();
        else if (strategy_name == "svd")
            throw ParameterError("svd strategy applies to the sphere model only");
        rep = solve_Lm(F, m, a.delta, a.epsilon, a.trials, strategy, rng, a.threads);
    }
    std::cerr << "solve-multilinear: value " << rep.value << " in " << rep.trials_run
              << " trials (" << rep.elapsed.count() << " s)\n";
    emit(report_to_json(rep), a.output);
    return 0;
}

int cmd_solve_form(const CommonSolveArgs& a, const std::string& constraint,
                   const std::string& mode) {
    ConjugateForm g = form_from_json(load_json_file(a.input));
    RandomSource rng(a.seed);
    GSolveOptions opt;
    opt.trials_override = a.trials;
    opt.threads = a.threads;
    GSolveReport rep;
    if (constraint == "sphere") {
        rep = solve_GS(g, a.gamma, a.epsilon, rng, opt);
    } else {
        int m = constraint == "circle" ? kUnitCircleOrder : parse_order(a.m);
        std::string pick = mode;
        if (pick == "auto") {
            if (is_square_free(g))
                pick = "squarefree";
            else
                throw ConvexNotAsserted(
                    "form is not square-free; pass --mode convex to assert convexity");
        }
        if (pick == "convex") {
            g.set_convex_asserted(true);
            rep = solve_Gm_convex(g, m, a.delta, a.epsilon, rng, opt);
        } else if (pick == "squarefree") {
            rep = solve_Gm_squarefree(g, m, a.delta, a.epsilon, rng, opt);
        } else {
            throw ParameterError("mode must be auto, convex, or squarefree");
        }
    }
    std::cerr << "solve-form: value " << rep.value << " (" << rep.elapsed.count() << " s)\n";
    emit(report_to_json(rep), a.output);
    return 0;
}

int cmd_oracle(const std::string& input, const std::string& kind,
               const std::string& constraint, const std::string& m_str, int starts,
               std::uint64_t seed, int threads, const std::string& output) {
    json j = load_json_file(input);
    RandomSource rng(seed);
    OracleResult res;
    if (kind == "form") {
        ConjugateForm g = form_from_json(j);
        if (constraint == "roots")
            res = brute_force_form_roots(g, parse_order(m_str));
        else
            res = multistart_form(g,
                                  constraint == "sphere" ? ConstraintSet::sphere(g.n())
                                                         : ConstraintSet::circle(g.n()),
                                  starts, rng, threads);
    } else {
        CTensor F = tensor_from_json(j);
        if (constraint == "roots")
            res = brute_force_multilinear_roots(F, parse_order(m_str));
        else
            res = multistart_multilinear(F,
                                         constraint == "sphere" ? ConstraintKind::Sphere
                                                                : ConstraintKind::UnitCircle,
                                         starts, rng, threads);
    }
    emit(oracle_to_json(res), output);
    return 0;
}

int cmd_verify_bounds(const std::string& m_str, double delta, double gamma, int n,
                      long long samples, std::uint64_t seed, int threads,
                      const std::string& output) {
    RandomSource rng(seed);
    RandomSource gen = rng.substream(1);
    CVector a(static_cast<std::size_t>(n));
    for (auto& z : a) z = gen.next_complex_gaussian();

    json payload;
    payload["n"] = n;
    payload["seed"] = seed;
    payload["samples"] = samples;
    payload["a"] = cvector_to_json(a);
    bool any_violation = false;
    if (!m_str.empty() && m_str != "none") {
        int m = parse_order(m_str);
        TailBoundReport rep = tail_bound_roots(a, m, delta, samples, rng, threads);
        payload["m"] = m == kUnitCircleOrder ? json("inf") : json(m);
        payload["delta"] = delta;
        payload["roots_bound"] = report_to_json(rep);
        any_violation |= rep.violation;
    }
    if (gamma > 0.0) {
        TailBoundReport rep = tail_bound_sphere(a, gamma, samples, rng, threads);
        payload["gamma"] = gamma;
        payload["sphere_bound"] = report_to_json(rep);
        any_violation |= rep.violation;
    }
    emit(payload, output);
    return any_violation ? 1 : 0;
}

int cmd_verify_polarization(int n, int d, const std::string& m_str, int instances,
                            long long samples, std::uint64_t seed,
                            const std::string& output) {
    int m = parse_order(m_str);
    RandomSource rng(seed);
    double worst = 0.0;
    for (int inst = 0; inst < instances; ++inst) {
        RandomSource sub = rng.substream(static_cast<std::uint64_t>(inst));
        Problem p = generate_instance(InstanceKind::FormGeneral, n, d, 1.0, sub);
        CTensor G = form_to_tensor(std::get<ConjugateForm>(p));
        std::vector<CVector> xs(static_cast<std::size_t>(d)), ys(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            xs[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n));
            ys[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n));
            for (auto& z : xs[static_cast<std::size_t>(k)]) z = 0.5 * sub.next_complex_gaussian();
            for (auto& z : ys[static_cast<std::size_t>(k)]) z = 0.5 * sub.next_complex_gaussian();
        }
        double r = m == kUnitCircleOrder ? polarization_sample(G, xs, ys, m, samples, sub)
                                         : polarization_residual(G, xs, ys, m);
        worst = std::max(worst, r);
    }
    json payload;
    payload["n"] = n;
    payload["d"] = d;
    payload["m"] = m == kUnitCircleOrder ? json("inf") : json(m);
    payload["instances"] = instances;
    payload["seed"] = seed;
    if (m == kUnitCircleOrder) {
        payload["max_deviation"] = worst;
        payload["pass"] = worst < 4.0;
    } else {
        payload["max_residual"] = worst;
        payload["pass"] = worst <= 1e-10;
    }
    emit(payload, output);
    return payload["pass"].get<bool>() ? 0 : 1;
}

int cmd_bench(const std::string& config_path) {
    json cfg_json = load_json_file(config_path);
    ExperimentConfig cfg = config_from_json(cfg_json);
    ExperimentResult result = run_experiment(cfg);
    std::string base = cfg.output.empty() ? "bench_out" : cfg.output;
    std::string csv = experiment_csv(result, now_string());
    {
        std::ofstream out(base + ".csv");
        out << csv;
    }
    save_json_file(base + ".json", experiment_json(result));
    std::cerr << "bench: " << result.summary.passes << "/" << result.summary.rows
              << " passes, mean quotient " << result.summary.mean_quotient << "\n";
    std::cout << experiment_json(result)["summary"].dump(2) << "\n";
    return result.summary.within_budget ? 0 : 2;
}

int cmd_gen(const std::string& kind, int n, int d, const std::vector<int>& dims,
            double density, std::uint64_t seed, const std::string& out) {
    RandomSource rng(seed);
    json payload;
    if (kind == "tensor") {
        CTensor t = dims.empty()
                        ? generate_tensor(std::vector<int>(static_cast<std::size_t>(d), n),
                                          density, rng)
                        : generate_tensor(dims, density, rng);
        payload = tensor_to_json(t);
    } else {
        InstanceKind k;
        if (kind == "form_squarefree")
            k = InstanceKind::FormSquareFree;
        else if (kind == "form_convex")
            k = InstanceKind::FormConvex;
        else if (kind == "form_general")
            k = InstanceKind::FormGeneral;
        else
            throw ParameterError("unknown kind " + kind);
        Problem p = generate_instance(k, n, d, density, rng);
        payload = form_to_json(std::get<ConjugateForm>(p));
    }
    emit(payload, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conjugate complex form optimization toolkit"};
    app.require_subcommand(1);

    CommonSolveArgs sm;
    std::string model = "roots", strategy = "auto";
    auto* solve_ml = app.add_subcommand("solve-multilinear",
                                        "randomized multilinear form maximization");
    solve_ml->add_option("--input", sm.input)->required();
    solve_ml->add_option("--output", sm.output);
    solve_ml->add_option("--model", model)->check(CLI::IsMember({"roots", "circle", "sphere"}));
    solve_ml->add_option("--m", sm.m);
    solve_ml->add_option("--delta", sm.delta);
    solve_ml->add_option("--gamma", sm.gamma);
    solve_ml->add_option("--epsilon", sm.epsilon);
    solve_ml->add_option("--trials", sm.trials);
    solve_ml->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"auto", "enum", "alt", "svd"}));
    solve_ml->add_option("--seed", sm.seed);
    solve_ml->add_option("--threads", sm.threads);

    CommonSolveArgs sf;
    std::string constraint = "roots", mode = "auto";
    auto* solve_form = app.add_subcommand("solve-form", "conjugate form maximization");
    solve_form->add_option("--input", sf.input)->required();
    solve_form->add_option("--output", sf.output);
    solve_form->add_option("--constraint", constraint)
        ->check(CLI::IsMember({"roots", "circle", "sphere"}));
    solve_form->add_option("--m", sf.m);
    solve_form->add_option("--delta", sf.delta);
    solve_form->add_option("--gamma", sf.gamma);
    solve_form->add_option("--epsilon", sf.epsilon);
    solve_form->add_option("--trials", sf.trials);
    solve_form->add_option("--mode", mode)->check(CLI::IsMember({"auto", "convex", "squarefree"}));
    solve_form->add_option("--seed", sf.seed);
    solve_form->add_option("--threads", sf.threads);

    std::string o_input, o_kind = "form", o_constraint = "roots", o_m = "4", o_output;
    int o_starts = 1000, o_threads = 1;
    std::uint64_t o_seed = 1;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact or multistart reference optimizer");
    oracle_cmd->add_option("--input", o_input)->required();
    oracle_cmd->add_option("--kind", o_kind)->check(CLI::IsMember({"form", "tensor"}));
    oracle_cmd->add_option("--constraint", o_constraint)
        ->check(CLI::IsMember({"roots", "circle", "sphere"}));
    oracle_cmd->add_option("--m", o_m);
    oracle_cmd->add_option("--starts", o_starts);
    oracle_cmd->add_option("--seed", o_seed);
    oracle_cmd->add_option("--threads", o_threads);
    oracle_cmd->add_option("--output", o_output);

    std::string vb_m = "4", vb_output;
    double vb_delta = 0.05, vb_gamma = 0.0;
    int vb_n = 4, vb_threads = 1;
    long long vb_samples = 1000000;
    std::uint64_t vb_seed = 1;
    auto* verify_bounds = app.add_subcommand("verify-bounds",
                                             "Monte Carlo tail-bound verification");
    verify_bounds->add_option("--m", vb_m);
    verify_bounds->add_option("--delta", vb_delta);
    verify_bounds->add_option("--gamma", vb_gamma);
    verify_bounds->add_option("--n", vb_n);
    verify_bounds->add_option("--samples", vb_samples);
    verify_bounds->add_option("--seed", vb_seed);
    verify_bounds->add_option("--threads", vb_threads);
    verify_bounds->add_option("--output", vb_output);

    int vp_n = 2, vp_d = 2, vp_instances = 20;
    std::string vp_m = "4", vp_output;
    long long vp_samples = 100000;
    std::uint64_t vp_seed = 1;
    auto* verify_pol = app.add_subcommand("verify-polarization",
                                          "polarization identity verification");
    verify_pol->add_option("--n", vp_n);
    verify_pol->add_option("--d", vp_d);
    verify_pol->add_option("--m", vp_m);
    verify_pol->add_option("--instances", vp_instances);
    verify_pol->add_option("--samples", vp_samples);
    verify_pol->add_option("--seed", vp_seed);
    verify_pol->add_option("--output", vp_output);

    std::string bench_config;
    auto* bench_cmd = app.add_subcommand("bench", "seeded experiment batteries");
    bench_cmd->add_option("--config", bench_config)->required();

    std::string g_kind = "tensor", g_out;
    int g_n = 2, g_d = 2;
    std::vector<int> g_dims;
    double g_density = 1.0;
    std::uint64_t g_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "random problem generation");
    gen_cmd->add_option("--kind", g_kind);
    gen_cmd->add_option("--n", g_n);
    gen_cmd->add_option("--d", g_d);
    gen_cmd->add_option("--dims", g_dims);
    gen_cmd->add_option("--density", g_density);
    gen_cmd->add_option("--seed", g_seed);
    gen_cmd->add_option("--out", g_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_ml->parsed()) return cmd_solve_multilinear(sm, model, strategy);
        if (solve_form->parsed()) return cmd_solve_form(sf, constraint, mode);
        if (oracle_cmd->parsed())
            return cmd_oracle(o_input, o_kind, o_constraint, o_m, o_starts, o_seed, o_threads,
                              o_output);
        if (verify_bounds->parsed())
            return cmd_verify_bounds(vb_m, vb_delta, vb_gamma, vb_n, vb_samples, vb_seed,
                                     vb_threads, vb_output);
        if (verify_pol->parsed())
            return cmd_verify_polarization(vp_n, vp_d, vp_m, vp_instances, vp_samples, vp_seed,
                                           vp_output);
        if (bench_cmd->parsed()) return cmd_bench(bench_config);
        if (gen_cmd->parsed())
            return cmd_gen(g_kind, g_n, g_d, g_dims, g_density, g_seed, g_out);
    } catch (const conjopt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
