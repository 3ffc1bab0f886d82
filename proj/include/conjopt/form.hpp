#ifndef CONJOPT_FORM_HPP
#define CONJOPT_FORM_HPP

#include <map>
#include <utility>
#include <vector>

#include "conjopt/complex_vec.hpp"
#include "conjopt/tensor.hpp"

namespace conjopt {

// Monomial key of a general conjugate form: sorted index multiset I for the
// conjugated variables and sorted multiset J for the plain variables,
// |I| + |J| = d. Indices are 1-based.
struct MonomialKey {
    std::vector<int> conj_idx;
    std::vector<int> plain_idx;

    MonomialKey() = default;
    MonomialKey(std::vector<int> I, std::vector<int> J);

    MonomialKey mirrored() const { return MonomialKey(plain_idx, conj_idx); }

    auto operator<=>(const MonomialKey&) const = default;
};

// Real-valued general conjugate form
//   g(x) = sum a_{I,J} conj(prod_{i in I} x_i) prod_{j in J} x_j
// of degree d in x in C^n. Validity requires the conjugate pairing
// a_{I,J} == conj(a_{J,I}) for every stored key (checked exactly), which is
// the necessary and sufficient condition for g to take real values.
class ConjugateForm {
public:
    // Merges duplicate keys by addition, drops exact zeros, then validates.
    static ConjugateForm from_coefficients(
        int n, int d, const std::vector<std::pair<MonomialKey, cplx>>& coeffs);

    static ConjugateForm zero(int n, int d);

    int n() const { return n_; }
    int degree() const { return d_; }
    const std::map<MonomialKey, cplx>& coefficients() const { return coeffs_; }

    bool convex_asserted() const { return convex_asserted_; }
    void set_convex_asserted(bool v) { convex_asserted_ = v; }

private:
    ConjugateForm(int n, int d) : n_(n), d_(d) {}
    int n_;
    int d_;
    std::map<MonomialKey, cplx> coeffs_;
    bool convex_asserted_ = false;
};

struct FormFlags {
    bool square_free;
    bool convex_asserted;
};

double eval_form(const ConjugateForm& g, const CVector& x);

// Tensor representation: each monomial is spread uniformly over the distinct
// permutations of the slot word (conjugated index i -> slot i, plain index
// j -> slot j + n), matching the stacked argument (conj(x); x). The result is
// conjugate super-symmetric by the coefficient pairing.
CTensor form_to_tensor(const ConjugateForm& g);

ConjugateForm tensor_to_form(const CTensor& G, int n);

// g(x) = G((conj(x); x), ..., (conj(x); x)); real part under the same
// imaginary-residue check as eval_form.
double eval_conjugate_tensor(const CTensor& G, const CVector& x);

bool is_square_free(const ConjugateForm& g);

FormFlags flags(const ConjugateForm& g);

struct LinearCoeff {
    cplx p1;
    double p3;
};

// For g square-free in variable `var`, g restricted to that coordinate is
// t -> 2 Re(t p1) + p3; recovered from the three evaluations at t = 0, 1, i.
LinearCoeff extract_linear_coefficient(const ConjugateForm& g, const CVector& x, int var);

// Flat-array view of a form for hot loops (oracle iterations, xi-searches).
// Indices are 0-based here.
class CompiledForm {
public:
    explicit CompiledForm(const ConjugateForm& g);

    int n() const { return n_; }
    int degree() const { return d_; }

    cplx eval_raw(const CVector& x) const;
    double eval(const CVector& x) const; // real part, residue-checked

    // Wirtinger gradient c with c_i = dg / d conj(x_i); the first-order change
    // along h is 2 Re(sum_i conj(h_i) c_i).
    CVector gradient(const CVector& x) const;

private:
    struct Term {
        std::vector<int> conj0;
        std::vector<int> plain0;
        cplx a;
    };
    int n_;
    int d_;
    std::vector<Term> terms_;
};

} // namespace conjopt

#endif
