#include "conjopt/form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conjopt/errors.hpp"

namespace conjopt {

namespace {

std::string key_to_string(const MonomialKey& k) {
    std::ostringstream os;
    os << "(I={";
    for (std::size_t i = 0; i < k.conj_idx.size(); ++i)
        os << (i ? "," : "") << k.conj_idx[i];
    os << "}, J={";
    for (std::size_t i = 0; i < k.plain_idx.size(); ++i)
        os << (i ? "," : "") << k.plain_idx[i];
    os << "})";
    return os.str();
}

double checked_real(cplx value, const char* what) {
    if (std::abs(value.imag()) > 1e-9 * (1.0 + std::abs(value.real())))
        throw ImaginaryResidueError(std::string(what) + ": imaginary residue " +
                                    std::to_string(value.imag()));
    return value.real();
}

// Number of distinct permutations of a sorted word.
double distinct_permutation_count(const std::vector<int>& word) {
    double count = 1.0;
    // multinomial d! / prod(mult_k!), built multiplicatively to stay exact
    // for the small degrees in play
    int pos = 0;
    int run = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        ++pos;
        if (i > 0 && word[i] == word[i - 1])
            ++run;
        else
            run = 1;
        count = count * pos / run;
    }
    return count;
}

} // namespace

MonomialKey::MonomialKey(std::vector<int> I, std::vector<int> J)
    : conj_idx(std::move(I)), plain_idx(std::move(J)) {
    std::sort(conj_idx.begin(), conj_idx.end());
    std::sort(plain_idx.begin(), plain_idx.end());
}

ConjugateForm ConjugateForm::from_coefficients(
    int n, int d, const std::vector<std::pair<MonomialKey, cplx>>& coeffs) {
    if (n < 1) throw ParameterError("form dimension must be positive");
    if (d < 0) throw ParameterError("form degree must be nonnegative");
    ConjugateForm g(n, d);
    for (const auto& [raw_key, a] : coeffs) {
        MonomialKey key(raw_key.conj_idx, raw_key.plain_idx); // re-sorts
        if (static_cast<int>(key.conj_idx.size() + key.plain_idx.size()) != d)
            throw ParameterError("key " + key_to_string(key) + " has degree != " +
                                 std::to_string(d));
        for (int i : key.conj_idx)
            if (i < 1 || i > n)
                throw IndexRangeError("index " + std::to_string(i) + " outside 1.." +
                                      std::to_string(n));
        for (int j : key.plain_idx)
            if (j < 1 || j > n)
                throw IndexRangeError("index " + std::to_string(j) + " outside 1.." +
                                      std::to_string(n));
        g.coeffs_[key] += a;
    }
    // Drop exact zeros so that zero coefficients need no mirror.
    for (auto it = g.coeffs_.begin(); it != g.coeffs_.end();) {
        if (it->second == cplx(0.0, 0.0))
            it = g.coeffs_.erase(it);
        else
            ++it;
    }
    for (const auto& [key, a] : g.coeffs_) {
        auto mirror = g.coeffs_.find(key.mirrored());
        if (mirror == g.coeffs_.end() || mirror->second != std::conj(a))
            throw RealValuednessError("coefficient at " + key_to_string(key) +
                                      " is not conjugate-paired with " +
                                      key_to_string(key.mirrored()));
    }
    return g;
}

ConjugateForm ConjugateForm::zero(int n, int d) { return ConjugateForm(n, d); }

double eval_form(const ConjugateForm& g, const CVector& x) {
    if (static_cast<int>(x.size()) != g.n())
        throw DimensionError("point has dimension " + std::to_string(x.size()) +
                             ", form expects " + std::to_string(g.n()));
    cplx sum(0.0, 0.0);
    for (const auto& [key, a] : g.coefficients()) {
        cplx term = a;
        for (int i : key.conj_idx) term *= std::conj(x[i - 1]);
        for (int j : key.plain_idx) term *= x[j - 1];
        sum += term;
    }
    return checked_real(sum, "eval_form");
}

CTensor form_to_tensor(const ConjugateForm& g) {
    const int n = g.n();
    const int d = g.degree();
    CTensor G(std::vector<int>(d, 2 * n));
    std::vector<int> word(d);
    for (const auto& [key, a] : g.coefficients()) {
        std::size_t p = 0;
        for (int i : key.conj_idx) word[p++] = i;
        for (int j : key.plain_idx) word[p++] = j + n;
        std::sort(word.begin(), word.end());
        const cplx share = a / distinct_permutation_count(word);
        // std::next_permutation enumerates each distinct rearrangement once.
        std::vector<int> w = word;
        do {
            G.at_mut(std::span<const int>(w)) += share;
        } while (std::next_permutation(w.begin(), w.end()));
    }
    return G;
}

ConjugateForm tensor_to_form(const CTensor& G, int n) {
    if (!is_conjugate_super_symmetric(G, n))
        throw NotConjugateSuperSymmetric("tensor is not conjugate super-symmetric for n = " +
                                         std::to_string(n));
    const int d = G.order();
    std::vector<std::pair<MonomialKey, cplx>> coeffs;
    auto key_of = [n](const std::vector<int>& word) {
        std::vector<int> I, J;
        for (int t : word) {
            if (t <= n)
                I.push_back(t);
            else
                J.push_back(t - n);
        }
        return MonomialKey(std::move(I), std::move(J));
    };
    // Sorted words enumerate each monomial once. Each word is emitted
    // together with its n-shift mirror, with the mirror coefficient taken as
    // the exact conjugate of the representative so the pairing validation
    // cannot be defeated by tolerance-level asymmetry in G.
    std::vector<int> w(d, 1), mirror(d);
    while (true) {
        if (std::is_sorted(w.begin(), w.end())) {
            for (int k = 0; k < d; ++k) mirror[k] = w[k] <= n ? w[k] + n : w[k] - n;
            std::sort(mirror.begin(), mirror.end());
            if (w <= mirror) {
                cplx v = G.at(std::span<const int>(w)) * distinct_permutation_count(w);
                if (w == mirror) v = cplx(v.real(), 0.0);
                if (v != cplx(0.0, 0.0)) {
                    coeffs.emplace_back(key_of(w), v);
                    if (w != mirror) coeffs.emplace_back(key_of(mirror), std::conj(v));
                }
            }
        }
        if (!next_index(w, G.dims())) break;
    }
    return ConjugateForm::from_coefficients(n, d, coeffs);
}

double eval_conjugate_tensor(const CTensor& G, const CVector& x) {
    const int d = G.order();
    if (d == 0) return checked_real(G.entries()[0], "eval_conjugate_tensor");
    const int two_n = G.dims()[0];
    if (!G.cubical() || two_n != 2 * static_cast<int>(x.size()))
        throw ShapeError("tensor must be cubical with every dimension 2n");
    CVector stacked = stack_conj(x);
    std::vector<CVector> args(d, stacked);
    return checked_real(eval_multilinear(G, args), "eval_conjugate_tensor");
}

bool is_square_free(const ConjugateForm& g) {
    for (const auto& [key, a] : g.coefficients()) {
        (void)a;
        std::vector<int> mult(g.n() + 1, 0);
        for (int i : key.conj_idx)
            if (++mult[i] > 1) return false;
        for (int j : key.plain_idx)
            if (++mult[j] > 1) return false;
    }
    return true;
}

FormFlags flags(const ConjugateForm& g) {
    return FormFlags{is_square_free(g), g.convex_asserted()};
}

LinearCoeff extract_linear_coefficient(const ConjugateForm& g, const CVector& x, int var) {
    if (var < 1 || var > g.n()) throw IndexRangeError("variable index out of range");
    for (const auto& [key, a] : g.coefficients()) {
        (void)a;
        int mult = 0;
        for (int i : key.conj_idx) mult += (i == var);
        for (int j : key.plain_idx) mult += (j == var);
        if (mult > 1)
            throw NotSquareFreeInVariable("form is not square-free in variable " +
                                          std::to_string(var));
    }
    CVector pt = x;
    pt[var - 1] = cplx(0.0, 0.0);
    double p0 = eval_form(g, pt);
    pt[var - 1] = cplx(1.0, 0.0);
    double pr = eval_form(g, pt);
    pt[var - 1] = cplx(0.0, 1.0);
    double pi = eval_form(g, pt);
    return LinearCoeff{cplx((pr - p0) / 2.0, (p0 - pi) / 2.0), p0};
}

CompiledForm::CompiledForm(const ConjugateForm& g) : n_(g.n()), d_(g.degree()) {
    terms_.reserve(g.coefficients().size());
    for (const auto& [key, a] : g.coefficients()) {
        Term t;
        t.a = a;
        for (int i : key.conj_idx) t.conj0.push_back(i - 1);
        for (int j : key.plain_idx) t.plain0.push_back(j - 1);
        terms_.push_back(std::move(t));
    }
}

cplx CompiledForm::eval_raw(const CVector& x) const {
    cplx sum(0.0, 0.0);
    for (const Term& t : terms_) {
        cplx v = t.a;
        for (int i : t.conj0) v *= std::conj(x[i]);
        for (int j : t.plain0) v *= x[j];
        sum += v;
    }
    return sum;
}

double CompiledForm::eval(const CVector& x) const {
    return checked_real(eval_raw(x), "CompiledForm::eval");
}

CVector CompiledForm::gradient(const CVector& x) const {
    CVector grad(static_cast<std::size_t>(n_), cplx(0.0, 0.0));
    for (const Term& t : terms_) {
        for (std::size_t skip = 0; skip < t.conj0.size(); ++skip) {
            cplx v = t.a;
            for (std::size_t u = 0; u < t.conj0.size(); ++u)
                if (u != skip) v *= std::conj(x[t.conj0[u]]);
            for (int j : t.plain0) v *= x[j];
            grad[t.conj0[skip]] += v;
        }
    }
    return grad;
}

} // namespace conjopt
