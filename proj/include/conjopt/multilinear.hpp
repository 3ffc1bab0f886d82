#ifndef CONJOPT_MULTILINEAR_HPP
#define CONJOPT_MULTILINEAR_HPP

#include <chrono>
#include <cstdint>
#include <vector>

#include "conjopt/complex_vec.hpp"
#include "conjopt/constraint.hpp"
#include "conjopt/rng.hpp"
#include "conjopt/tensor.hpp"

namespace conjopt {

// Base-case solver for the final bilinear subproblem. The cited constant-ratio
// SDP algorithm is replaced by exact enumeration (globally optimal, so every
// downstream guarantee survives) at desk scale, or by alternating
// maximization with no certified ratio for larger instances.
struct BaseCaseStrategy {
    enum class Kind { ExactEnumeration, AlternatingMaximization, PowerSVD };
    Kind kind = Kind::ExactEnumeration;
    int starts = 8;                      // alternating restarts
    int max_iters = 200;                 // sweeps / power iterations
    double tol = 1e-12;
    long long enum_guard = 10'000'000;   // max enumerated tuples

    static BaseCaseStrategy exact(long long guard = 10'000'000);
    static BaseCaseStrategy alternating(int starts = 8, int max_iters = 200,
                                        double tol = 1e-12);
    static BaseCaseStrategy power_svd(double tol = 1e-12, int max_iters = 1000);
};

struct SolveReport {
    std::vector<CVector> solution; // one vector per slot, original slot order
    double value = 0.0;            // Re F at the solution
    double ratio_formula_value = 0.0;
    bool ratio_certified = false;        // base case was exact
    bool unit_dim_substituted = false;   // ratio used ln 2 for a 1-dim slot
    long long trials_run = 0;
    std::uint64_t seed = 0;
    // ln of the trial count the theory prescribes (astronomical since
    // c1(delta) is tiny); the run itself uses the practical default below.
    double theory_trials_log = 0.0;
    std::chrono::duration<double> elapsed{0.0};
};

struct BilinearSolution {
    CVector x;
    CVector y;
    double value = 0.0;
    bool converged = true;
};

// max Re(x^T A y) over x in Omega_m^{n1}, y in Omega_m^{n2}.
// ExactEnumeration walks all x tuples; the optimal y is per-coordinate (the
// root nearest in angle to -arg((x^T A)_j)), so the result is globally
// optimal. AlternatingMaximization updates x and y blocks alternately from
// random starts; each half-sweep is the exact block optimum, so the value
// never decreases.
BilinearSolution solve_bilinear_roots(const CTensor& A, int m,
                                      const BaseCaseStrategy& strategy,
                                      RandomSource& rng);

// Same objective over the unit circle: given x the optimal y_j is
// e^{-i arg((x^T A)_j)}, giving the value ||x^T A||_1.
BilinearSolution solve_bilinear_circle(const CTensor& A,
                                       const BaseCaseStrategy& strategy,
                                       RandomSource& rng);

struct SingularPair {
    double sigma = 0.0;
    CVector u;
    CVector v;
    bool converged = true;
};

// Top singular value of the matrix tensor A via power iteration on A^H A,
// phases aligned so that u^T A v = sigma (real, nonnegative).
SingularPair largest_singular_pair(const CTensor& A, double tol, int max_iters,
                                   RandomSource& rng);

struct RatioValue {
    double value = 0.0;
    bool unit_dim_substituted = false;
};

// c4(m) = 0.7118 cos^2(pi / m); 0.7118 for the circle.
double c4(int m);

// Ratio c4(m) delta^{(d-2)/2} prod_{k<=d-2} (ln n_k / n_k)^{1/2} for sorted
// dims. Slots with n_k = 1 substitute ln 2 (the factor would otherwise be 0
// although a 1-dim slot is trivial) and set the flag.
RatioValue ratio_Lm(const std::vector<int>& dims, int m, double delta);

// Ratio gamma^{(d-2)/2} prod_{k<=d-2} (ln n_k / n_k)^{1/2}; 1.0 when d = 2.
RatioValue ratio_LS(const std::vector<int>& dims, double gamma);

// Randomized solver for max Re F over Omega_m^{n_1} x ... x Omega_m^{n_d}
// (finite m) or the circle (sentinel m). Per trial: sample the first d-2
// slots, contract, solve the bilinear base case, evaluate; the best trial
// wins (first attained on ties). trials_override = 0 selects the practical
// default ceil(ln(1/eps) prod n_k^{5 delta}) * 50.
SolveReport solve_Lm(const CTensor& F, int m, double delta, double epsilon,
                     long long trials_override, const BaseCaseStrategy& strategy,
                     RandomSource& rng, int threads = 1);

// Spherical counterpart: sphere-sample d-2 slots, then the top singular pair
// of the remaining matrix. d = 2 is a single exact singular decomposition.
SolveReport solve_LS(const CTensor& F, double gamma, double epsilon,
                     long long trials_override, RandomSource& rng, int threads = 1,
                     const BaseCaseStrategy& svd = BaseCaseStrategy::power_svd());

} // namespace conjopt

#endif
