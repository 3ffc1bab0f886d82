#ifndef CONJOPT_BENCH_HPP
#define CONJOPT_BENCH_HPP

#include <string>
#include <variant>
#include <vector>

#include "conjopt/conjugate_solvers.hpp"
#include "conjopt/form.hpp"
#include "conjopt/json_io.hpp"
#include "conjopt/multilinear.hpp"
#include "conjopt/rng.hpp"
#include "conjopt/tensor.hpp"

namespace conjopt {

enum class InstanceKind { Tensor, FormSquareFree, FormConvex, FormGeneral };

using Problem = std::variant<CTensor, ConjugateForm>;

// Random problem generator. Coefficients are complex Gaussian; density is
// the keep-probability per entry/term; forms get their conjugate pairing
// enforced by construction (mirror := conj, self-mirrored keys made real);
// convex instances are (x^H Q x)^{d/2} with Q = B^H B, d even.
Problem generate_instance(InstanceKind kind, int n, int d, double density,
                          RandomSource& rng);

// Also used standalone for the tensor model with unequal dims.
CTensor generate_tensor(const std::vector<int>& dims, double density, RandomSource& rng);

enum class BenchModel { Lm, Linf, LS, Gm, Ginf, GS };

struct ExperimentConfig {
    BenchModel model = BenchModel::Lm;
    std::vector<int> dims; // multilinear models
    int n = 2;             // form models
    int d = 2;
    int m = 4; // finite order; Linf/Ginf use the circle sentinel internally
    double delta = 0.05;
    double gamma = 1.0;
    double epsilon = 0.05;
    long long trials = 0; // 0 = solver default
    std::vector<std::uint64_t> seeds;
    bool oracle = true;
    int oracle_starts = 1000; // multistart reference size (continuous models)
    InstanceKind kind = InstanceKind::Tensor;
    double density = 1.0;
    int threads = 1;
    std::string output; // base path; writes <output>.csv and <output>.json
};

struct RatioRow {
    std::uint64_t seed = 0;
    double value = 0.0;
    double v_max = 0.0; // NaN when no oracle ran
    double v_min = 0.0;
    double ratio = 0.0;
    double quotient = 0.0; // achieved / optimal (absolute mode)
    bool relative = false;
    bool pass = true;
    double elapsed_ms = 0.0;
    json report; // full solver report payload (no timing fields)
};

struct ExperimentSummary {
    std::size_t rows = 0;
    std::size_t passes = 0;
    double pass_rate = 1.0;
    double mean_quotient = 0.0;
    double ratio_formula_value = 0.0;
    long long allowed_failures = 0;
    bool within_budget = true;
};

struct ExperimentResult {
    std::vector<RatioRow> rows; // sorted by seed
    ExperimentSummary summary;
};

ExperimentConfig config_from_json(const json& j);

ExperimentResult run_experiment(const ExperimentConfig& config);

// CSV: one comment header line holding the timestamp, then the fixed columns
// seed,value,vmax,vmin,ratio,quotient,pass,elapsed_ms. Everything but the
// header comment and elapsed_ms is deterministic for fixed seeds.
std::string experiment_csv(const ExperimentResult& result, const std::string& timestamp);

json experiment_json(const ExperimentResult& result);

} // namespace conjopt

#endif
