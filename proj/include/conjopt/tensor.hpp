#ifndef CONJOPT_TENSOR_HPP
#define CONJOPT_TENSOR_HPP

#include <map>
#include <span>
#include <vector>

#include "conjopt/complex_vec.hpp"

namespace conjopt {

// Dense d-th order complex tensor over dims n_1 x ... x n_d, row-major over
// the index tuple (i_1, ..., i_d). Indices in the API are 1-based. Immutable
// use after construction is the intended pattern; operations below are pure.
//
// An order-0 tensor (empty dims, one entry) is allowed as the result of
// contracting every slot.
class CTensor {
public:
    CTensor() : dims_(), entries_(1, cplx(0.0, 0.0)) {}
    explicit CTensor(std::vector<int> dims);
    static CTensor scalar(cplx value);

    const std::vector<int>& dims() const { return dims_; }
    int order() const { return static_cast<int>(dims_.size()); }
    std::size_t size() const { return entries_.size(); }

    const std::vector<cplx>& entries() const { return entries_; }
    std::vector<cplx>& entries() { return entries_; }

    // 1-based multi-index access.
    cplx at(std::span<const int> idx) const { return entries_[offset(idx)]; }
    cplx& at(std::span<const int> idx) { return entries_[offset(idx)]; }
    cplx at(std::initializer_list<int> idx) const {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }
    cplx& at(std::initializer_list<int> idx) {
        return at_mut(std::span<const int>(idx.begin(), idx.size()));
    }
    cplx& at_mut(std::span<const int> idx) { return entries_[offset(idx)]; }

    std::size_t offset(std::span<const int> idx) const;

    double max_abs() const;

    bool cubical() const;

private:
    std::vector<int> dims_;
    std::vector<cplx> entries_;
};

// Advances a 1-based multi-index in row-major order; returns false after the
// last tuple.
bool next_index(std::vector<int>& idx, const std::vector<int>& dims);

// F(x^1, ..., x^d) = sum over index tuples of F_{i_1...i_d} x^1_{i_1}...x^d_{i_d}.
cplx eval_multilinear(const CTensor& F, std::span<const CVector> xs);

// Averages entries over all permutations of the index tuple. Requires a
// cubical tensor; the multilinear form on equal arguments is unchanged.
CTensor symmetrize(const CTensor& F);

// Definition: G in C^{(2n)^d} is conjugate super-symmetric iff it is
// permutation-symmetric and G_{i_1..i_d} = conj(G_{j_1..j_d}) whenever
// |i_k - j_k| = n for every k. tol < 0 selects 1e-9 * max|entry|.
bool is_conjugate_super_symmetric(const CTensor& G, int n, double tol = -1.0);

// Sums the fixed slots (1-based keys) against the given vectors, producing a
// tensor of order d - |fixed|. Composing with eval_multilinear on the
// remaining slots equals eval_multilinear on the full argument list.
CTensor contract(const CTensor& F, const std::map<int, CVector>& fixed);

// Fast path used by the solvers: contracts slots 1..k against firsts[0..k).
CTensor contract_prefix(const CTensor& F, std::span<const CVector> firsts);

// Reorders slots: output slot k reads input slot perm[k] (0-based perm).
CTensor permute_slots(const CTensor& F, const std::vector<int>& perm);

} // namespace conjopt

#endif
