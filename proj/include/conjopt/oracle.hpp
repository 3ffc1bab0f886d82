#ifndef CONJOPT_ORACLE_HPP
#define CONJOPT_ORACLE_HPP

#include <vector>

#include "conjopt/constraint.hpp"
#include "conjopt/form.hpp"
#include "conjopt/rng.hpp"
#include "conjopt/tensor.hpp"

namespace conjopt {

// Independent reference optimizer output. For form problems the solutions
// live in argmax[0] / argmin[0]; for multilinear problems there is one vector
// per slot. exact is true only for full enumeration.
struct OracleResult {
    double v_max = 0.0;
    double v_min = 0.0;
    std::vector<CVector> argmax;
    std::vector<CVector> argmin;
    bool exact = false;
};

// Exact v_max / v_min of g over Omega_m^n by full enumeration.
// Guard bounds the number of evaluated points (configuration, not constant).
OracleResult brute_force_form_roots(const ConjugateForm& g, int m,
                                    long long guard = 10'000'000);

// Exact extrema of Re F over Omega_m^{n_1} x ... x Omega_m^{n_d}. Enumerates
// every slot but the last; the final slot optimum is per-coordinate, which
// cuts the exponent by n_d.
OracleResult brute_force_multilinear_roots(const CTensor& F, int m,
                                           long long guard = 10'000'000);

// Projected Wirtinger-gradient ascent/descent for a form over the sphere or
// the circle torus, best/worst over random feasible starts. Start points
// themselves enter both pools, which keeps v_min <= v_max unconditionally.
OracleResult multistart_form(const ConjugateForm& g, const ConstraintSet& constraint,
                             int starts, RandomSource& rng, int threads = 1);

// Alternating exact slot updates for Re F over products of spheres or
// circles, best/worst over random starts.
OracleResult multistart_multilinear(const CTensor& F, ConstraintKind kind,
                                    int starts, RandomSource& rng, int threads = 1);

} // namespace conjopt

#endif
