#include "conjopt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "conjopt/errors.hpp"

namespace conjopt {

CTensor::CTensor(std::vector<int> dims) : dims_(std::move(dims)) {
    std::size_t total = 1;
    for (int n : dims_) {
        if (n < 1) throw ShapeError("tensor dimensions must be positive");
        total *= static_cast<std::size_t>(n);
    }
    entries_.assign(total, cplx(0.0, 0.0));
}

CTensor CTensor::scalar(cplx value) {
    CTensor t;
    t.entries_[0] = value;
    return t;
}

std::size_t CTensor::offset(std::span<const int> idx) const {
    if (idx.size() != dims_.size())
        throw ShapeError("index tuple has wrong length");
    std::size_t off = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        int i = idx[k];
        if (i < 1 || i > dims_[k])
            throw ShapeError("index " + std::to_string(i) + " out of range in slot " +
                             std::to_string(k + 1));
        off = off * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(i - 1);
    }
    return off;
}

double CTensor::max_abs() const {
    double m = 0.0;
    for (const cplx& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

bool CTensor::cubical() const {
    for (int n : dims_)
        if (n != dims_[0]) return false;
    return true;
}

bool next_index(std::vector<int>& idx, const std::vector<int>& dims) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        if (idx[k] < dims[k]) {
            ++idx[k];
            return true;
        }
        idx[k] = 1;
    }
    return false;
}

cplx eval_multilinear(const CTensor& F, std::span<const CVector> xs) {
    const auto& dims = F.dims();
    if (xs.size() != dims.size())
        throw DimensionError("expected " + std::to_string(dims.size()) +
                             " argument vectors, got " + std::to_string(xs.size()));
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (static_cast<int>(xs[k].size()) != dims[k])
            throw DimensionError("argument in slot " + std::to_string(k + 1) +
                                 " has dimension " + std::to_string(xs[k].size()) +
                                 ", expected " + std::to_string(dims[k]));
    }
    // Fold the last slot repeatedly; row-major layout makes each fold a
    // contiguous pass.
    std::vector<cplx> cur(F.entries());
    std::size_t len = cur.size();
    for (std::size_t k = dims.size(); k-- > 0;) {
        const CVector& x = xs[k];
        std::size_t n = static_cast<std::size_t>(dims[k]);
        len /= n;
        for (std::size_t i = 0; i < len; ++i) {
            cplx s(0.0, 0.0);
            const cplx* row = cur.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
            cur[i] = s;
        }
    }
    return cur[0];
}

CTensor symmetrize(const CTensor& F) {
    if (!F.cubical()) throw ShapeError("symmetrize requires equal dimensions in every slot");
    const int d = F.order();
    if (d <= 1) return F;

    // All permutations of slot positions, generated once.
    std::vector<int> base(d);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    CTensor out(F.dims());
    std::vector<int> idx(d, 1), src(d);
    const double inv = 1.0 / static_cast<double>(perms.size());
    do {
        cplx s(0.0, 0.0);
        for (const auto& p : perms) {
            for (int k = 0; k < d; ++k) src[k] = idx[p[k]];
            s += F.at(std::span<const int>(src));
        }
        out.at_mut(std::span<const int>(idx)) = s * inv;
    } while (next_index(idx, F.dims()));
    return out;
}

bool is_conjugate_super_symmetric(const CTensor& G, int n, double tol) {
    const auto& dims = G.dims();
    if (dims.empty()) throw ShapeError("order-0 tensor has no symmetry class");
    for (int m : dims)
        if (m != 2 * n) throw ShapeError("every dimension must equal 2n");
    if (tol < 0.0) tol = 1e-9 * G.max_abs();

    const int d = G.order();
    std::vector<int> idx(d, 1), tmp(d);
    do {
        // (i) symmetry: compare against the sorted representative.
        tmp = idx;
        std::sort(tmp.begin(), tmp.end());
        if (std::abs(G.at(std::span<const int>(idx)) - G.at(std::span<const int>(tmp))) > tol)
            return false;
        // (ii) n-shift conjugation.
        for (int k = 0; k < d; ++k) tmp[k] = idx[k] <= n ? idx[k] + n : idx[k] - n;
        if (std::abs(G.at(std::span<const int>(idx)) -
                     std::conj(G.at(std::span<const int>(tmp)))) > tol)
            return false;
    } while (next_index(idx, dims));
    return true;
}

CTensor contract(const CTensor& F, const std::map<int, CVector>& fixed) {
    const auto& dims = F.dims();
    const int d = F.order();
    for (const auto& [slot, vec] : fixed) {
        if (slot < 1 || slot > d)
            throw ShapeError("contract: slot " + std::to_string(slot) + " out of range");
        if (static_cast<int>(vec.size()) != dims[slot - 1])
            throw DimensionError("contract: vector for slot " + std::to_string(slot) +
                                 " has dimension " + std::to_string(vec.size()) +
                                 ", expected " + std::to_string(dims[slot - 1]));
    }

    std::vector<int> keep;
    for (int k = 1; k <= d; ++k)
        if (!fixed.count(k)) keep.push_back(k);

    std::vector<int> out_dims;
    for (int k : keep) out_dims.push_back(dims[k - 1]);
    CTensor out(out_dims);

    if (d == 0) return F;

    std::vector<int> idx(d, 1);
    std::vector<int> out_idx(keep.size());
    std::size_t off = 0;
    do {
        cplx weight = F.entries()[off++];
        for (const auto& [slot, vec] : fixed) weight *= vec[idx[slot - 1] - 1];
        for (std::size_t k = 0; k < keep.size(); ++k) out_idx[k] = idx[keep[k] - 1];
        out.at_mut(std::span<const int>(out_idx)) += weight;
    } while (next_index(idx, dims));
    return out;
}

CTensor contract_prefix(const CTensor& F, std::span<const CVector> firsts) {
    const auto& dims = F.dims();
    if (firsts.size() > dims.size()) throw ShapeError("contract_prefix: too many vectors");
    std::vector<cplx> cur(F.entries());
    std::size_t len = cur.size();
    for (std::size_t k = 0; k < firsts.size(); ++k) {
        std::size_t n = static_cast<std::size_t>(dims[k]);
        if (firsts[k].size() != n)
            throw DimensionError("contract_prefix: vector " + std::to_string(k + 1) +
                                 " has wrong dimension");
        len /= n;
        std::vector<cplx> next(len, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < n; ++j) {
            const cplx c = firsts[k][j];
            const cplx* block = cur.data() + j * len;
            for (std::size_t i = 0; i < len; ++i) next[i] += c * block[i];
        }
        cur = std::move(next);
    }
    std::vector<int> out_dims(dims.begin() + static_cast<std::ptrdiff_t>(firsts.size()),
                              dims.end());
    CTensor out(out_dims);
    out.entries() = std::move(cur);
    return out;
}

CTensor permute_slots(const CTensor& F, const std::vector<int>& perm) {
    const auto& dims = F.dims();
    const int d = F.order();
    if (static_cast<int>(perm.size()) != d) throw ShapeError("permute_slots: bad permutation");
    std::vector<int> out_dims(d);
    for (int k = 0; k < d; ++k) out_dims[k] = dims[perm[k]];
    CTensor out(out_dims);
    if (d == 0) return F;
    std::vector<int> oi(d, 1), si(d);
    do {
        for (int k = 0; k < d; ++k) si[perm[k]] = oi[k];
        out.at_mut(std::span<const int>(oi)) = F.at(std::span<const int>(si));
    } while (next_index(oi, out_dims));
    return out;
}

} // namespace conjopt
