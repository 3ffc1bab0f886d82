#ifndef CONJOPT_CONSTRAINT_HPP
#define CONJOPT_CONSTRAINT_HPP

#include <vector>

#include "conjopt/complex_vec.hpp"

namespace conjopt {

// Sentinel standing for m = infinity (the complex unit circle) wherever a
// root order is expected. Finite orders require m >= 3, so the sentinel can
// never collide with a valid order, and no formula treats it as a number.
inline constexpr int kUnitCircleOrder = 0;

bool is_finite_order(int m);

// Accepts m >= 3 or the circle sentinel; throws ConstraintError otherwise.
void validate_root_order(int m);

enum class ConstraintKind { RootsOfUnity, UnitCircle, Sphere };

struct ConstraintSet {
    ConstraintKind kind;
    int m; // root order when kind == RootsOfUnity, else kUnitCircleOrder
    int n;

    static ConstraintSet roots(int m, int n);
    static ConstraintSet circle(int n);
    static ConstraintSet sphere(int n);
};

// The m-th roots of unity, index j holding exp(i 2 pi j / m). Quadrant values
// are exact and table[m - j] == conj(table[j]), so conjugation stays inside
// the table bitwise.
std::vector<cplx> roots_of_unity(int m);

// Cached table, built once per order.
const std::vector<cplx>& roots_table(int m);

// Membership of z in conv(Omega_m): point-in-convex-polygon against the m
// root vertices (supporting-line inequalities within tol). For the circle
// sentinel, |z| <= 1 + tol.
bool in_conv_roots(cplx z, int m, double tol = 1e-12);

// Membership of z in Omega_m itself (table entry within tol); circle
// sentinel checks |z| = 1 within tol.
bool is_on_roots(cplx z, int m, double tol = 1e-12);

bool feasible_point(const CVector& x, const ConstraintSet& c, double tol = 1e-12);

} // namespace conjopt

#endif
