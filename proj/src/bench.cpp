#include "conjopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "conjopt/errors.hpp"
#include "conjopt/oracle.hpp"
#include "conjopt/parallel.hpp"

namespace conjopt {

namespace {

cplx gaussian(RandomSource& rng) { return rng.next_complex_gaussian(); }

// All nondecreasing index sequences of length k over {1..n}.
void enumerate_multisets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<std::size_t>(k), 1);
    if (k == 0) {
        out.push_back({});
        return;
    }
    while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n) --pos;
        if (pos < 0) break;
        int v = ++cur[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < k; ++q) cur[static_cast<std::size_t>(q)] = v;
    }
}

// Assembles a real-valued form from canonical representatives: each key <=
// its mirror gets a coefficient, the mirror gets the exact conjugate, and
// self-mirrored keys are forced real.
ConjugateForm pair_and_build(int n, int d,
                             const std::vector<std::pair<MonomialKey, cplx>>& reps) {
    std::vector<std::pair<MonomialKey, cplx>> coeffs;
    for (const auto& [key, a] : reps) {
        MonomialKey mirror = key.mirrored();
        if (mirror == key) {
            coeffs.emplace_back(key, cplx(a.real(), 0.0));
        } else {
            coeffs.emplace_back(key, a);
            coeffs.emplace_back(mirror, std::conj(a));
        }
    }
    return ConjugateForm::from_coefficients(n, d, coeffs);
}

ConjugateForm random_squarefree_form(int n, int d, double density, RandomSource& rng) {
    if (d > n)
        throw ParameterError("square-free forms need d <= n (every variable at most once)");
    // Keys are pairs of disjoint sets with |I| + |J| = d: pick the support
    // (a sorted d-subset) and a conjugated sub-subset.
    std::vector<std::vector<int>> supports;
    {
        std::vector<int> comb(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            supports.push_back(comb);
            int pos = d - 1;
            while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == n - (d - 1 - pos)) --pos;
            if (pos < 0) break;
            ++comb[static_cast<std::size_t>(pos)];
            for (int q = pos + 1; q < d; ++q)
                comb[static_cast<std::size_t>(q)] = comb[static_cast<std::size_t>(q - 1)] + 1;
        }
    }
    std::vector<std::pair<MonomialKey, cplx>> reps;
    MonomialKey first_candidate;
    bool have_first = false;
    for (const auto& support : supports) {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            std::vector<int> I, J;
            for (int b = 0; b < d; ++b)
                (mask >> b & 1u ? I : J).push_back(support[static_cast<std::size_t>(b)]);
            MonomialKey key(std::move(I), std::move(J));
            if (key.mirrored() < key) continue; // canonical representative only
            if (!have_first) {
                first_candidate = key;
                have_first = true;
            }
            if (rng.next_double() < density) reps.emplace_back(key, gaussian(rng));
        }
    }
    if (reps.empty() && have_first) reps.emplace_back(first_candidate, gaussian(rng));
    return pair_and_build(n, d, reps);
}

ConjugateForm random_general_form(int n, int d, double density, RandomSource& rng) {
    std::vector<std::pair<MonomialKey, cplx>> reps;
    MonomialKey first_candidate;
    bool have_first = false;
    for (int k = 0; k <= d; ++k) {
        std::vector<std::vector<int>> conj_sets, plain_sets;
        enumerate_multisets(n, k, conj_sets);
        enumerate_multisets(n, d - k, plain_sets);
        for (const auto& I : conj_sets) {
            for (const auto& J : plain_sets) {
                MonomialKey key(I, J);
                if (key.mirrored() < key) continue;
                if (!have_first) {
                    first_candidate = key;
                    have_first = true;
                }
                if (rng.next_double() < density) reps.emplace_back(key, gaussian(rng));
            }
        }
    }
    if (reps.empty() && have_first) reps.emplace_back(first_candidate, gaussian(rng));
    return pair_and_build(n, d, reps);
}

ConjugateForm random_convex_form(int n, int d, double density, RandomSource& rng) {
    if (d % 2 != 0) throw ParameterError("convex instances (x^H Q x)^{d/2} need even d");
    // Q = B^H B is Hermitian PSD; Q_ji = conj(Q_ij) holds bitwise.
    std::vector<std::vector<cplx>> B(static_cast<std::size_t>(n),
                                     std::vector<cplx>(static_cast<std::size_t>(n)));
    for (auto& row : B)
        for (auto& b : row) b = rng.next_double() < density ? gaussian(rng) : cplx(0.0, 0.0);
    std::map<MonomialKey, cplx> quad;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            cplx q(0.0, 0.0);
            for (int k = 0; k < n; ++k)
                q += std::conj(B[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)]) *
                     B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j - 1)];
            if (q != cplx(0.0, 0.0)) quad[MonomialKey({i}, {j})] = q;
        }
    }
    // Multiply the quadratic map with itself d/2 - 1 times.
    std::map<MonomialKey, cplx> acc = quad;
    for (int rep = 1; rep < d / 2; ++rep) {
        std::map<MonomialKey, cplx> next;
        for (const auto& [ka, va] : acc) {
            for (const auto& [kb, vb] : quad) {
                std::vector<int> I = ka.conj_idx;
                I.insert(I.end(), kb.conj_idx.begin(), kb.conj_idx.end());
                std::vector<int> J = ka.plain_idx;
                J.insert(J.end(), kb.plain_idx.begin(), kb.plain_idx.end());
                next[MonomialKey(std::move(I), std::move(J))] += va * vb;
            }
        }
        acc = std::move(next);
    }
    std::vector<std::pair<MonomialKey, cplx>> reps;
    for (const auto& [key, a] : acc)
        if (!(key.mirrored() < key)) reps.emplace_back(key, a);
    ConjugateForm g = pair_and_build(n, d, reps);
    g.set_convex_asserted(true);
    return g;
}

} // namespace

CTensor generate_tensor(const std::vector<int>& dims, double density, RandomSource& rng) {
    if (!(density > 0.0) || density > 1.0) throw ParameterError("density must lie in (0, 1]");
    CTensor t(dims);
    for (auto& e : t.entries())
        if (rng.next_double() < density) e = gaussian(rng);
    return t;
}

Problem generate_instance(InstanceKind kind, int n, int d, double density,
                          RandomSource& rng) {
    if (!(density > 0.0) || density > 1.0) throw ParameterError("density must lie in (0, 1]");
    switch (kind) {
        case InstanceKind::Tensor:
            return generate_tensor(std::vector<int>(static_cast<std::size_t>(d), n), density,
                                   rng);
        case InstanceKind::FormSquareFree:
            return random_squarefree_form(n, d, density, rng);
        case InstanceKind::FormConvex:
            return random_convex_form(n, d, density, rng);
        case InstanceKind::FormGeneral:
            return random_general_form(n, d, density, rng);
    }
    throw ParameterError("unknown instance kind");
}

namespace {

double ratio_gm_formula(int m, int n, int d, double delta) {
    double f = 1.0;
    for (int k = 2; k <= d; ++k) f *= k;
    return c4(m) * f / std::pow(2.0 * d, d) *
           std::pow(delta * std::log(2.0 * n) / (2.0 * n), (d - 2) / 2.0);
}

double ratio_gs_formula(int n, int d, double gamma) {
    double f = 1.0;
    for (int k = 2; k <= d; ++k) f *= k;
    double tau = std::pow(gamma * std::log(2.0 * n) / (2.0 * n), (d - 2) / 2.0);
    if (d == 2) return 1.0;
    if (d % 2 == 1) return f / std::pow(std::sqrt(2.0) * d, d) * tau;
    return f / std::pow(2.0 * d, d) * tau;
}

struct RowOutcome {
    RatioRow row;
};

RowOutcome run_one(const ExperimentConfig& cfg, std::uint64_t seed) {
    RandomSource rng(seed);
    RandomSource gen_rng = rng.substream(0);
    RandomSource solve_rng = rng.substream(1);
    RandomSource oracle_rng = rng.substream(2);

    RatioRow row;
    row.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.v_max = nan;
    row.v_min = nan;
    row.quotient = nan;

    const bool multilinear_model = cfg.model == BenchModel::Lm ||
                                   cfg.model == BenchModel::Linf ||
                                   cfg.model == BenchModel::LS;

    if (multilinear_model) {
        std::vector<int> dims = cfg.dims.empty()
                                    ? std::vector<int>(static_cast<std::size_t>(cfg.d), cfg.n)
                                    : cfg.dims;
        CTensor F = generate_tensor(dims, cfg.density, gen_rng);
        SolveReport rep;
        if (cfg.model == BenchModel::Lm) {
            rep = solve_Lm(F, cfg.m, cfg.delta, cfg.epsilon, cfg.trials,
                           BaseCaseStrategy::exact(), solve_rng, 1);
        } else if (cfg.model == BenchModel::Linf) {
            rep = solve_Lm(F, kUnitCircleOrder, cfg.delta, cfg.epsilon, cfg.trials,
                           BaseCaseStrategy::alternating(), solve_rng, 1);
        } else {
            rep = solve_LS(F, cfg.gamma, cfg.epsilon, cfg.trials, solve_rng, 1);
        }
        row.value = rep.value;
        row.ratio = rep.ratio_formula_value;
        row.relative = false;
        row.report = report_to_json(rep);
        if (cfg.oracle) {
            OracleResult oracle =
                cfg.model == BenchModel::Lm
                    ? brute_force_multilinear_roots(F, cfg.m)
                    : multistart_multilinear(F,
                                             cfg.model == BenchModel::LS
                                                 ? ConstraintKind::Sphere
                                                 : ConstraintKind::UnitCircle,
                                             cfg.oracle_starts, oracle_rng, 1);
            row.v_max = oracle.v_max;
            row.v_min = oracle.v_min;
            row.quotient = row.value / oracle.v_max;
            row.pass = row.value >= row.ratio * oracle.v_max - 1e-9;
        }
    } else {
        InstanceKind kind = cfg.kind == InstanceKind::Tensor ? InstanceKind::FormGeneral
                                                             : cfg.kind;
        Problem p = generate_instance(kind, cfg.n, cfg.d, cfg.density, gen_rng);
        const ConjugateForm& g = std::get<ConjugateForm>(p);
        GSolveReport rep;
        GSolveOptions opt;
        opt.trials_override = cfg.trials;
        if (cfg.model == BenchModel::GS) {
            rep = solve_GS(g, cfg.gamma, cfg.epsilon, solve_rng, opt);
        } else {
            int m = cfg.model == BenchModel::Ginf ? kUnitCircleOrder : cfg.m;
            if (kind == InstanceKind::FormConvex)
                rep = solve_Gm_convex(g, m, cfg.delta, cfg.epsilon, solve_rng, opt);
            else if (kind == InstanceKind::FormSquareFree)
                rep = solve_Gm_squarefree(g, m, cfg.delta, cfg.epsilon, solve_rng, opt);
            else
                throw ParameterError(
                    "roots/circle form models need a square-free or convex instance kind");
        }
        row.value = rep.value;
        row.ratio = rep.ratio_formula_value;
        row.relative = rep.relative;
        row.report = report_to_json(rep);
        if (cfg.oracle) {
            OracleResult oracle;
            if (cfg.model == BenchModel::Gm) {
                oracle = brute_force_form_roots(g, cfg.m);
            } else {
                ConstraintSet c = cfg.model == BenchModel::GS
                                      ? ConstraintSet::sphere(cfg.n)
                                      : ConstraintSet::circle(cfg.n);
                oracle = multistart_form(g, c, cfg.oracle_starts, oracle_rng, 1);
            }
            row.v_max = oracle.v_max;
            row.v_min = oracle.v_min;
            if (rep.relative) {
                double denom = oracle.v_max - oracle.v_min;
                row.quotient = denom > 0.0 ? (row.value - oracle.v_min) / denom : 1.0;
                row.pass = row.value - oracle.v_min >=
                           row.ratio * (oracle.v_max - oracle.v_min) - 1e-9;
            } else {
                row.quotient = row.value / oracle.v_max;
                row.pass = row.value >= row.ratio * oracle.v_max - 1e-9;
            }
        }
    }

    row.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return RowOutcome{row};
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    std::string model = j.value("model", "Lm");
    if (model == "Lm")
        c.model = BenchModel::Lm;
    else if (model == "Linf")
        c.model = BenchModel::Linf;
    else if (model == "LS")
        c.model = BenchModel::LS;
    else if (model == "Gm")
        c.model = BenchModel::Gm;
    else if (model == "Ginf")
        c.model = BenchModel::Ginf;
    else if (model == "GS")
        c.model = BenchModel::GS;
    else
        throw ParameterError("unknown model " + model);
    if (j.contains("dims")) c.dims = j["dims"].get<std::vector<int>>();
    c.n = j.value("n", 2);
    c.d = j.value("d", 2);
    if (j.contains("m")) {
        if (j["m"].is_string())
            c.m = kUnitCircleOrder; // "inf"
        else
            c.m = j["m"].get<int>();
    }
    c.delta = j.value("delta", 0.05);
    c.gamma = j.value("gamma", 1.0);
    c.epsilon = j.value("epsilon", 0.05);
    c.trials = j.value("trials", 0LL);
    if (j.contains("seeds")) {
        c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    } else {
        std::uint64_t start = j.value("seed_start", 1ULL);
        std::uint64_t count = j.value("seed_count", 0ULL);
        for (std::uint64_t s = 0; s < count; ++s) c.seeds.push_back(start + s);
    }
    c.oracle = j.value("oracle", true);
    c.oracle_starts = j.value("oracle_starts", 1000);
    std::string kind = j.value("kind", "tensor");
    if (kind == "tensor")
        c.kind = InstanceKind::Tensor;
    else if (kind == "form_squarefree")
        c.kind = InstanceKind::FormSquareFree;
    else if (kind == "form_convex")
        c.kind = InstanceKind::FormConvex;
    else if (kind == "form_general")
        c.kind = InstanceKind::FormGeneral;
    else
        throw ParameterError("unknown instance kind " + kind);
    c.density = j.value("density", 1.0);
    c.threads = j.value("threads", 1);
    c.output = j.value("output", "");
    return c;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult result;
    result.rows.resize(config.seeds.size());
    parallel_for(config.seeds.size(), config.threads, [&](std::size_t i) {
        result.rows[i] = run_one(config, config.seeds[i]).row;
    });
    std::sort(result.rows.begin(), result.rows.end(),
              [](const RatioRow& a, const RatioRow& b) { return a.seed < b.seed; });

    ExperimentSummary& s = result.summary;
    s.rows = result.rows.size();
    double quot_sum = 0.0;
    std::size_t quot_count = 0;
    for (const RatioRow& r : result.rows) {
        if (r.pass) ++s.passes;
        if (std::isfinite(r.quotient)) {
            quot_sum += r.quotient;
            ++quot_count;
        }
    }
    s.pass_rate = s.rows == 0 ? 1.0 : static_cast<double>(s.passes) / s.rows;
    s.mean_quotient = quot_count == 0 ? 0.0 : quot_sum / quot_count;
    switch (config.model) {
        case BenchModel::Lm:
        case BenchModel::Linf: {
            std::vector<int> dims = config.dims.empty()
                                        ? std::vector<int>(static_cast<std::size_t>(config.d),
                                                           config.n)
                                        : config.dims;
            std::sort(dims.begin(), dims.end());
            s.ratio_formula_value =
                ratio_Lm(dims, config.model == BenchModel::Linf ? kUnitCircleOrder : config.m,
                         config.delta)
                    .value;
            break;
        }
        case BenchModel::LS: {
            std::vector<int> dims = config.dims.empty()
                                        ? std::vector<int>(static_cast<std::size_t>(config.d),
                                                           config.n)
                                        : config.dims;
            std::sort(dims.begin(), dims.end());
            s.ratio_formula_value = ratio_LS(dims, config.gamma).value;
            break;
        }
        case BenchModel::Gm:
            s.ratio_formula_value = ratio_gm_formula(config.m, config.n, config.d, config.delta);
            break;
        case BenchModel::Ginf:
            s.ratio_formula_value =
                ratio_gm_formula(kUnitCircleOrder, config.n, config.d, config.delta);
            break;
        case BenchModel::GS:
            s.ratio_formula_value = ratio_gs_formula(config.n, config.d, config.gamma);
            break;
    }
    long long failures = static_cast<long long>(s.rows) - static_cast<long long>(s.passes);
    s.allowed_failures =
        static_cast<long long>(std::floor(config.epsilon * static_cast<double>(s.rows))) + 3;
    s.within_budget = failures <= s.allowed_failures;
    return result;
}

std::string experiment_csv(const ExperimentResult& result, const std::string& timestamp) {
    std::string out = "# generated_at " + timestamp + "\n";
    out += "seed,value,vmax,vmin,ratio,quotient,pass,elapsed_ms\n";
    char buf[256];
    for (const RatioRow& r : result.rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%.3f\n",
                      static_cast<unsigned long long>(r.seed), r.value, r.v_max, r.v_min,
                      r.ratio, r.quotient, r.pass ? 1 : 0, r.elapsed_ms);
        out += buf;
    }
    return out;
}

json experiment_json(const ExperimentResult& result) {
    json j;
    json rows = json::array();
    for (const RatioRow& r : result.rows) {
        json row;
        row["seed"] = r.seed;
        row["value"] = r.value;
        row["vmax"] = std::isfinite(r.v_max) ? json(r.v_max) : json();
        row["vmin"] = std::isfinite(r.v_min) ? json(r.v_min) : json();
        row["ratio"] = r.ratio;
        row["quotient"] = std::isfinite(r.quotient) ? json(r.quotient) : json();
        row["relative"] = r.relative;
        row["pass"] = r.pass;
        row["report"] = r.report;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    json s;
    s["rows"] = result.summary.rows;
    s["passes"] = result.summary.passes;
    s["pass_rate"] = result.summary.pass_rate;
    s["mean_quotient"] = result.summary.mean_quotient;
    s["ratio_formula_value"] = result.summary.ratio_formula_value;
    s["allowed_failures"] = result.summary.allowed_failures;
    s["within_budget"] = result.summary.within_budget;
    j["summary"] = std::move(s);
    return j;
}

} // namespace conjopt
