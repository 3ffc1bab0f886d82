#ifndef CONJOPT_SAMPLING_HPP
#define CONJOPT_SAMPLING_HPP

#include <cstdint>

#include "conjopt/complex_vec.hpp"
#include "conjopt/constraint.hpp"
#include "conjopt/rng.hpp"

namespace conjopt {

// Monte Carlo verdict on one tail-bound event {Re(a^T xi) >= threshold}.
struct TailBoundReport {
    double empirical_prob = 0.0;
    double theoretical_bound_log = 0.0; // natural log of the proved lower bound
    long long samples = 0;
    double threshold = 0.0;
    // Fires only when empirical_prob + 3 * binomial sigma < exp(bound_log).
    bool violation = false;
    // True when the bound carries an implicit constant (sphere case), in
    // which case only the shape is reported and `violation` stays false.
    bool bound_has_unknown_constant = false;
};

// Entries i.i.d. uniform over Omega_m, taken from the precomputed root table.
CVector sample_roots(int m, int n, RandomSource& rng);

// Entries e^{i theta}, theta i.i.d. uniform on [0, 2 pi).
CVector sample_circle(int n, RandomSource& rng);

// Uniform on the complex sphere S^n: normalized standard complex Gaussian.
CVector sample_sphere(int n, RandomSource& rng);

struct Moments {
    double e1;
    double e2;
    double e4;
};

// First, second and fourth moments of eta = Re(a^T xi) for xi uniform on
// Omega_m^n. The fourth moment picks up an extra (1/16) sum (a_i^4 +
// conj(a_i)^4) term exactly when m == 4.
Moments moments_formula(const CVector& a, int m);

// Smallest divisor >= 2 of m; 2 for the circle sentinel.
int c2(int m);

// ln n1(delta) and ln n2(delta): the dimension thresholds beyond which the
// two stages of the roots-of-unity tail proof hold. Both searched on the
// ln n axis; n1's defining expression rises then falls, so its threshold is
// the smallest ln n past the peak.
double n1_log(double delta);
double n2_log(double delta);

// ln c1(delta) = -ln 36 - n0(delta) ln 5 with n0 = max(n1, n2), computed in
// log scale; -inf when n0 ln 5 overflows. Always negative.
double c1_log(double delta);

// Monte Carlo check of Prob{Re(a^T xi) >= sqrt(delta ln n / n) ||a||_1}
// against the proved lower bound c1(delta) / (c2(m) n^{5 delta}).
TailBoundReport tail_bound_roots(const CVector& a, int m, double delta,
                                 long long samples, RandomSource& rng,
                                 int threads = 1);

// Monte Carlo probe of Prob{Re(a^T xi) >= sqrt(gamma ln n / n) ||a||_2} for
// xi uniform on the sphere. The constant c3(gamma) has no explicit formula,
// so only the bound shape -2 gamma ln n - (1/2) ln ln n is reported.
TailBoundReport tail_bound_sphere(const CVector& a, double gamma,
                                  long long samples, RandomSource& rng,
                                  int threads = 1);

} // namespace conjopt

#endif
