#ifndef CONJOPT_COMPLEX_VEC_HPP
#define CONJOPT_COMPLEX_VEC_HPP

#include <complex>
#include <vector>

namespace conjopt {

using cplx = std::complex<double>;

// Dense complex vector. Dimension is entries.size(); indices in the public
// API are 1-based to match the usual subscript convention.
using CVector = std::vector<cplx>;

CVector conj_vec(const CVector& v);
double norm2(const CVector& v);
double norm1(const CVector& v);
double norm_inf(const CVector& v);

// Transpose dot product: sum_i a_i * b_i (no conjugation).
cplx dot_t(const CVector& a, const CVector& b);

CVector scale(const CVector& v, cplx s);
CVector add(const CVector& a, const CVector& b);

// Stacks (conj(x); x), the argument layout used by conjugate tensors:
// slot index t <= n addresses conj(x_t), t > n addresses x_{t-n}.
CVector stack_conj(const CVector& x);

} // namespace conjopt

#endif
