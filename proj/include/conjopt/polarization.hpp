#ifndef CONJOPT_POLARIZATION_HPP
#define CONJOPT_POLARIZATION_HPP

#include <span>

#include "conjopt/complex_vec.hpp"
#include "conjopt/rng.hpp"
#include "conjopt/tensor.hpp"

namespace conjopt {

// u_xi = (1/2d) sum_k (conj(xi_k x^k) + xi_k y^k). When every x^k, y^k entry
// and every xi_k lies in Omega_m, each entry of u is a convex combination of
// 2d elements of Omega_m.
CVector build_u(std::span<const CVector> xs, std::span<const CVector> ys,
                std::span<const cplx> xi);

// v_xi = sum_k (conj(xi_k x^k) + xi_k y^k) = 2d * u_xi. When each stacked
// (x^k; y^k) has unit 2-norm, ||v||_2 <= sqrt(2) d.
CVector build_v(std::span<const CVector> xs, std::span<const CVector> ys,
                std::span<const cplx> xi);

// Exact check of the identity
//   E[(prod_i conj(xi_i)) g(v_xi)] = d! G((x^1;y^1), ..., (x^d;y^d))
// for finite m: the expectation over xi in Omega_m^d is the exact average
// over all m^d tuples. Returns |LHS - RHS| / (1 + |RHS|).
double polarization_residual(const CTensor& G, std::span<const CVector> xs,
                             std::span<const CVector> ys, int m);

// Monte Carlo variant (required for m = infinity): returns the deviation of
// the sample mean from the exact right-hand side in units of the estimated
// standard error. Statistically below 4 for a correct implementation.
double polarization_sample(const CTensor& G, std::span<const CVector> xs,
                           std::span<const CVector> ys, int m, long long samples,
                           RandomSource& rng);

} // namespace conjopt

#endif
