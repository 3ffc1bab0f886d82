#include "conjopt/complex_vec.hpp"

#include <cmath>

namespace conjopt {

CVector conj_vec(const CVector& v) {
    CVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
    return out;
}

double norm2(const CVector& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double norm1(const CVector& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::abs(z);
    return s;
}

double norm_inf(const CVector& v) {
    double s = 0.0;
    for (const cplx& z : v) s = std::max(s, std::abs(z));
    return s;
}

cplx dot_t(const CVector& a, const CVector& b) {
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

CVector scale(const CVector& v, cplx s) {
    CVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
    return out;
}

CVector add(const CVector& a, const CVector& b) {
    CVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

CVector stack_conj(const CVector& x) {
    CVector out;
    out.reserve(2 * x.size());
    for (const cplx& z : x) out.push_back(std::conj(z));
    for (const cplx& z : x) out.push_back(z);
    return out;
}

} // namespace conjopt
