#ifndef CONJOPT_CONJUGATE_SOLVERS_HPP
#define CONJOPT_CONJUGATE_SOLVERS_HPP

#include <chrono>
#include <cstdint>

#include "conjopt/complex_vec.hpp"
#include "conjopt/form.hpp"
#include "conjopt/multilinear.hpp"
#include "conjopt/rng.hpp"

namespace conjopt {

enum class GSolveMode { Convex, SquareFreeRelative, SquareFreeAbsolute, SphereEven, SphereOdd };

struct GSolveReport {
    CVector solution;
    double value = 0.0; // eval_form at the solution
    GSolveMode mode = GSolveMode::Convex;
    double ratio_formula_value = 0.0;
    bool relative = false; // guarantee is g(z) - v_min >= ratio (v_max - v_min)
    bool ratio_certified = false;
    long long trials_run = 0;
    std::uint64_t seed = 0;
    std::chrono::duration<double> elapsed{0.0};
};

enum class RoundDirection { Up, Down };

// Coordinate sweep rounding an interior point of conv(Omega_m)^n to a vertex
// tuple without decreasing (Up) or increasing (Down) a square-free form:
// per coordinate the form is linear, so the best vertex beats the interior
// value. Ties at p1 = 0 take root index 0.
CVector round_to_vertices(const ConjugateForm& g, const CVector& x, int m,
                          RoundDirection direction);

// Second derivative of t -> g(x + t y) at t = 0, computed through the tensor
// contraction d (d-1) G((conj y; y), (conj y; y), (conj x; x), ...). Negative
// values certify that g is not convex.
double hessian_sample(const ConjugateForm& g, const CVector& x, const CVector& y);

// Conjugate super-symmetric tensor of h(x) = ||x||_2^d (d even), used to
// shift spherical objectives. Multilinear values on unit vectors stay in the
// unit disc.
CTensor build_h_tensor(int n, int d);

// Plumbing knobs shared by the three pipelines.
struct GSolveOptions {
    long long trials_override = 0;
    BaseCaseStrategy strategy = BaseCaseStrategy::exact();
    int threads = 1;
    // Exhaustive xi-search whenever m^d stays below this; otherwise sampled.
    long long xi_enum_guard = 1'000'000;
    int xi_samples_per_degree = 1000;
    // Root order used for the polarization rounding step of the sphere
    // pipeline (any m >= 3 is valid there).
    int sphere_xi_order = 8;
};

// Convex objective over Omega_m^n (tensor relaxation,
// polarization search, per-coordinate vertex sweep justified by convexity).
GSolveReport solve_Gm_convex(const ConjugateForm& g, int m, double delta, double epsilon,
                             RandomSource& rng, const GSolveOptions& opt = {});

// Square-free objective over Omega_m^n. Absolute ratio when d is odd and
// conv(Omega_m) is centrally symmetric (m even or the circle); relative
// ratio otherwise, with g(0) realized as a rounded feasible candidate.
GSolveReport solve_Gm_squarefree(const ConjugateForm& g, int m, double delta,
                                 double epsilon, RandomSource& rng,
                                 const GSolveOptions& opt = {});

// Spherical constraint. d = 2 is the exact top eigenpair; even d >= 4 runs
// the anchored, h-shifted relaxation with a positivity-restricted xi-search
// (relative ratio); odd d runs the plain relaxation with the sign trick
// (absolute ratio).
GSolveReport solve_GS(const ConjugateForm& g, double gamma, double epsilon,
                      RandomSource& rng, const GSolveOptions& opt = {});

} // namespace conjopt

#endif
