#include <doctest.h>

#include <cmath>

#include "conjopt/errors.hpp"
#include "conjopt/oracle.hpp"
#include "conjopt/sampling.hpp"
#include "test_util.hpp"

using namespace conjopt;

namespace {

// Full enumeration over every slot, no last-slot shortcut; validates the
// production oracle's exponent cut.
void full_enumeration(const CTensor& F, int m, double& vmax, double& vmin) {
    const auto& table = roots_table(m);
    const auto& dims = F.dims();
    long long total = 1;
    for (int nk : dims)
        for (int j = 0; j < nk; ++j) total *= m;
    vmax = -1e300;
    vmin = 1e300;
    std::vector<CVector> args(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k)
        args[k] = CVector(static_cast<std::size_t>(dims[k]));
    for (long long t = 0; t < total; ++t) {
        long long rem = t;
        for (std::size_t k = 0; k < dims.size(); ++k)
            for (auto& z : args[k]) {
                z = table[static_cast<std::size_t>(rem % m)];
                rem /= m;
            }
        double v = std::real(eval_multilinear(F, args));
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
}

} // namespace

TEST_CASE("form enumeration oracle") {
    ConjugateForm g = ConjugateForm::from_coefficients(
        2, 2, {{MonomialKey({1}, {2}), 1.0}, {MonomialKey({2}, {1}), 1.0}});
    OracleResult res = brute_force_form_roots(g, 4);
    CHECK(res.v_max == doctest::Approx(2.0));
    CHECK(res.v_min == doctest::Approx(-2.0));
    CHECK(res.exact);
    CHECK(eval_form(g, res.argmax[0]) == doctest::Approx(res.v_max));
    CHECK(eval_form(g, res.argmin[0]) == doctest::Approx(res.v_min));

    OracleResult zero = brute_force_form_roots(ConjugateForm::zero(2, 2), 3);
    CHECK(zero.v_max == 0.0);
    CHECK(zero.v_min == 0.0);

    ConjugateForm norm_form = ConjugateForm::from_coefficients(
        3, 2,
        {{MonomialKey({1}, {1}), 1.0}, {MonomialKey({2}, {2}), 1.0},
         {MonomialKey({3}, {3}), 1.0}});
    OracleResult constant = brute_force_form_roots(norm_form, 5);
    CHECK(constant.v_max == doctest::Approx(3.0));
    CHECK(constant.v_min == doctest::Approx(3.0));

    CHECK_THROWS_AS(brute_force_form_roots(g, 4, 10), EnumerationTooLarge);
}

TEST_CASE("multilinear enumeration oracle with the last-slot shortcut") {
    CTensor A(std::vector<int>{1, 1});
    A.entries()[0] = 1.0;
    OracleResult res = brute_force_multilinear_roots(A, 3);
    CHECK(res.v_max == doctest::Approx(1.0));
    CHECK(res.v_min == doctest::Approx(-0.5));

    CTensor ones(std::vector<int>{2, 2, 2});
    for (auto& e : ones.entries()) e = 1.0;
    res = brute_force_multilinear_roots(ones, 4);
    CHECK(res.v_max == doctest::Approx(8.0));
    CHECK(std::abs(std::real(eval_multilinear(ones, res.argmax)) - res.v_max) <= 1e-10);

    CTensor zero(std::vector<int>{2, 2});
    res = brute_force_multilinear_roots(zero, 3);
    CHECK(res.v_max == 0.0);
    CHECK(res.v_min == 0.0);

    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        RandomSource gen(seed);
        int m = 3 + static_cast<int>(seed % 2);
        CTensor F = generate_tensor({2, 2}, 1.0, gen);
        OracleResult fast = brute_force_multilinear_roots(F, m);
        double vmax, vmin;
        full_enumeration(F, m, vmax, vmin);
        CHECK(fast.v_max == doctest::Approx(vmax).epsilon(1e-12));
        CHECK(fast.v_min == doctest::Approx(vmin).epsilon(1e-12));
    }
}

TEST_CASE("multistart form reference on spectra we can verify") {
    // Hermitian quadratic diag(3, 1): v_max = 3, v_min = 1 on the sphere.
    ConjugateForm quad = ConjugateForm::from_coefficients(
        2, 2, {{MonomialKey({1}, {1}), 3.0}, {MonomialKey({2}, {2}), 1.0}});
    RandomSource rng(71);
    OracleResult res = multistart_form(quad, ConstraintSet::sphere(2), 200, rng);
    CHECK(res.v_max == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(res.v_min == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(res.exact);

    // ||x||^4 is constant 1 on the sphere.
    ConjugateForm h = ConjugateForm::from_coefficients(
        2, 4,
        {{MonomialKey({1, 1}, {1, 1}), 1.0},
         {MonomialKey({1, 2}, {1, 2}), 2.0},
         {MonomialKey({2, 2}, {2, 2}), 1.0}});
    RandomSource rng2(73);
    OracleResult hres = multistart_form(h, ConstraintSet::sphere(2), 200, rng2);
    CHECK(hres.v_max == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(hres.v_min == doctest::Approx(1.0).epsilon(1e-8));

    RandomSource rng3(74);
    CHECK_THROWS_AS(multistart_form(quad, ConstraintSet::sphere(2), 50, rng3),
                    ParameterError);
}

TEST_CASE("multistart multilinear reference finds rank-one optima") {
    RandomSource gen(75);
    CVector a = testutil::random_cvector(2, gen);
    CVector b = testutil::random_cvector(3, gen);
    CVector c = testutil::random_cvector(2, gen);
    CTensor F(std::vector<int>{2, 3, 2});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 2; ++k)
                F.at({i + 1, j + 1, k + 1}) = a[static_cast<std::size_t>(i)] *
                                              b[static_cast<std::size_t>(j)] *
                                              c[static_cast<std::size_t>(k)];
    double opt = norm2(a) * norm2(b) * norm2(c);
    RandomSource rng(76);
    OracleResult res = multistart_multilinear(F, ConstraintKind::Sphere, 200, rng);
    CHECK(res.v_max == doctest::Approx(opt).epsilon(1e-6));
    CHECK(std::abs(std::real(eval_multilinear(F, res.argmax)) - res.v_max) <= 1e-9);
    CHECK(res.v_min <= res.v_max);
}

TEST_CASE("circle multistart stays below the fine-grid enumeration") {
    // Omega_720 is a subset of the circle, so its enumerated optimum lower
    // bounds the continuous one; the discretization gap at this smoothness
    // stays under 1e-3.
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        ConjugateForm g = testutil::random_form(InstanceKind::FormGeneral, 2, 2, 600 + seed);
        RandomSource rng(700 + seed);
        OracleResult cont = multistart_form(g, ConstraintSet::circle(2), 300, rng);
        OracleResult grid = brute_force_form_roots(g, 720);
        CHECK(cont.v_max <= grid.v_max + 1e-3);
        CHECK(cont.v_min >= grid.v_min - 1e-3);
        CHECK(cont.v_max >= grid.v_max - 1e-6); // ascent should not fall short
    }
}
