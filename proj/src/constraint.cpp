#include "conjopt/constraint.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "conjopt/errors.hpp"

namespace conjopt {

bool is_finite_order(int m) { return m >= 3; }

void validate_root_order(int m) {
    if (m != kUnitCircleOrder && m < 3)
        throw ConstraintError("root order must be >= 3 (got " + std::to_string(m) + ")");
}

ConstraintSet ConstraintSet::roots(int m, int n) {
    if (m < 3) throw ConstraintError("root order must be >= 3");
    return ConstraintSet{ConstraintKind::RootsOfUnity, m, n};
}

ConstraintSet ConstraintSet::circle(int n) {
    return ConstraintSet{ConstraintKind::UnitCircle, kUnitCircleOrder, n};
}

ConstraintSet ConstraintSet::sphere(int n) {
    return ConstraintSet{ConstraintKind::Sphere, kUnitCircleOrder, n};
}

std::vector<cplx> roots_of_unity(int m) {
    if (m < 3) throw ConstraintError("root order must be >= 3");
    std::vector<cplx> table(static_cast<std::size_t>(m));
    for (int j = 0; j <= m / 2; ++j) {
        cplx w;
        if (j == 0)
            w = cplx(1.0, 0.0);
        else if (2 * j == m)
            w = cplx(-1.0, 0.0);
        else if (4 * j == m)
            w = cplx(0.0, 1.0);
        else {
            double t = 2.0 * M_PI * j / m;
            w = cplx(std::cos(t), std::sin(t));
        }
        table[static_cast<std::size_t>(j)] = w;
        if (j > 0 && 2 * j != m) table[static_cast<std::size_t>(m - j)] = std::conj(w);
    }
    return table;
}

const std::vector<cplx>& roots_table(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, roots_of_unity(m)).first;
    return it->second;
}

bool in_conv_roots(cplx z, int m, double tol) {
    if (m == kUnitCircleOrder) return std::abs(z) <= 1.0 + tol;
    const auto& table = roots_table(m);
    for (int j = 0; j < m; ++j) {
        cplx a = table[static_cast<std::size_t>(j)];
        cplx b = table[static_cast<std::size_t>((j + 1) % m)];
        // CCW polygon: inside iff cross(b - a, z - a) >= -tol for all edges.
        double cross = (b.real() - a.real()) * (z.imag() - a.imag()) -
                       (b.imag() - a.imag()) * (z.real() - a.real());
        if (cross < -tol) return false;
    }
    return true;
}

bool is_on_roots(cplx z, int m, double tol) {
    if (m == kUnitCircleOrder) return std::abs(std::abs(z) - 1.0) <= tol;
    const auto& table = roots_table(m);
    for (const cplx& w : table)
        if (std::abs(z - w) <= tol) return true;
    return false;
}

bool feasible_point(const CVector& x, const ConstraintSet& c, double tol) {
    if (static_cast<int>(x.size()) != c.n) return false;
    switch (c.kind) {
        case ConstraintKind::RootsOfUnity:
            for (const cplx& z : x)
                if (!is_on_roots(z, c.m, tol)) return false;
            return true;
        case ConstraintKind::UnitCircle:
            for (const cplx& z : x)
                if (std::abs(std::abs(z) - 1.0) > tol) return false;
            return true;
        case ConstraintKind::Sphere:
            return std::abs(norm2(x) - 1.0) <= tol;
    }
    return false;
}

} // namespace conjopt
