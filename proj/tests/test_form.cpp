#include <doctest.h>

#include <cmath>

#include "conjopt/errors.hpp"
#include "conjopt/form.hpp"
#include "test_util.hpp"

using namespace conjopt;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("worked example: coefficients, evaluation, matrix") {
    ConjugateForm g = testutil::example_form();
    CHECK(g.coefficients().size() == 5);

    // Direct substitution: g(1, 0) = i + 2 - i = 2, g(i, 0) = -i + 2 + i = 2.
    CHECK(eval_form(g, CVector{cplx(1.0, 0.0), cplx(0.0, 0.0)}) == doctest::Approx(2.0));
    CHECK(eval_form(g, CVector{I, cplx(0.0, 0.0)}) == doctest::Approx(2.0));

    CTensor G = form_to_tensor(g);
    CTensor expect = testutil::example_matrix();
    REQUIRE(G.dims() == expect.dims());
    for (std::size_t i = 0; i < G.size(); ++i) CHECK(G.entries()[i] == expect.entries()[i]);

    ConjugateForm back = tensor_to_form(expect, 2);
    CHECK(back.coefficients() == g.coefficients());
}

TEST_CASE("real-valuedness validation") {
    CHECK_THROWS_AS(
        ConjugateForm::from_coefficients(2, 2, {{MonomialKey({1, 1}, {}), I}}),
        RealValuednessError);
    CHECK_THROWS_AS(ConjugateForm::from_coefficients(
                        2, 2,
                        {{MonomialKey({1}, {2}), cplx(1.0, 2.0)},
                         {MonomialKey({2}, {1}), cplx(1.0, 2.0)}}), // should be the conjugate
                    RealValuednessError);
    CHECK_THROWS_AS(
        ConjugateForm::from_coefficients(2, 2, {{MonomialKey({3}, {1}), cplx(1.0, 0.0)}}),
        IndexRangeError);

    ConjugateForm zero = ConjugateForm::from_coefficients(3, 2, {});
    CHECK(zero.coefficients().empty());
    CHECK(eval_form(zero, CVector(3, cplx(0.5, 0.5))) == 0.0);
}

TEST_CASE("duplicate keys merge before validation") {
    ConjugateForm g = ConjugateForm::from_coefficients(
        2, 2,
        {{MonomialKey({1}, {2}), cplx(1.0, 1.0)},
         {MonomialKey({1}, {2}), cplx(1.0, -1.0)},
         {MonomialKey({2}, {1}), cplx(2.0, 0.0)}});
    CHECK(g.coefficients().size() == 2);
}

TEST_CASE("form to tensor on the one-variable quadratic") {
    ConjugateForm g = ConjugateForm::from_coefficients(
        1, 2, {{MonomialKey({1}, {1}), cplx(2.0, 0.0)}});
    CTensor G = form_to_tensor(g);
    CHECK(G.at({1, 2}) == cplx(1.0, 0.0));
    CHECK(G.at({2, 1}) == cplx(1.0, 0.0));
    CHECK(G.at({1, 1}) == cplx(0.0, 0.0));
    CHECK(G.at({2, 2}) == cplx(0.0, 0.0));
}

TEST_CASE("round trip form <-> tensor is the identity") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        int n = 1 + static_cast<int>(seed % 3);
        int d = 1 + static_cast<int>(seed % 3);
        ConjugateForm g = testutil::random_form(InstanceKind::FormGeneral, n, d, seed, 0.7);
        CTensor G = form_to_tensor(g);
        CHECK(is_conjugate_super_symmetric(G, n));
        ConjugateForm back = tensor_to_form(G, n);
        REQUIRE(back.coefficients().size() == g.coefficients().size());
        for (const auto& [key, a] : g.coefficients()) {
            auto it = back.coefficients().find(key);
            REQUIRE(it != back.coefficients().end());
            CHECK(std::abs(it->second - a) <= 1e-12 * (1.0 + std::abs(a)));
        }
        CTensor G2 = form_to_tensor(back);
        for (std::size_t i = 0; i < G.size(); ++i)
            CHECK(std::abs(G2.entries()[i] - G.entries()[i]) <= 1e-12);
    }
}

TEST_CASE("tensor_to_form rejects asymmetric tensors") {
    CTensor bad(std::vector<int>{2, 2});
    bad.at({1, 2}) = 1.0; // missing the (2,1) mate
    CHECK_THROWS_AS(tensor_to_form(bad, 1), NotConjugateSuperSymmetric);
}

TEST_CASE("eval_conjugate_tensor agrees with the form and stays real") {
    CTensor G = testutil::example_matrix();
    CHECK(eval_conjugate_tensor(G, CVector{cplx(1.0, 0.0), cplx(1.0, 0.0)}) ==
          doctest::Approx(10.0));
    CHECK(eval_conjugate_tensor(CTensor(std::vector<int>{4, 4}), CVector(2)) == 0.0);

    // h(x) = ||x||^2 for n = 2: tensor of sum conj(x_i) x_i.
    ConjugateForm h = ConjugateForm::from_coefficients(
        2, 2, {{MonomialKey({1}, {1}), 1.0}, {MonomialKey({2}, {2}), 1.0}});
    CTensor H = form_to_tensor(h);
    CHECK(eval_conjugate_tensor(H, CVector{cplx(0.6, 0.0), cplx(0.0, 0.8)}) ==
          doctest::Approx(1.0));

    RandomSource rng(31);
    for (int i = 0; i < 20; ++i) {
        ConjugateForm g = testutil::random_form(InstanceKind::FormGeneral, 2, 3,
                                                100 + static_cast<std::uint64_t>(i));
        CTensor T = form_to_tensor(g);
        CVector x = testutil::random_cvector(2, rng);
        double a = eval_form(g, x);
        double b = eval_conjugate_tensor(T, x);
        CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("real-valuedness holds on random evaluations") {
    RandomSource rng(37);
    for (int i = 0; i < 10; ++i) {
        ConjugateForm g = testutil::random_form(InstanceKind::FormGeneral, 3, 3,
                                                200 + static_cast<std::uint64_t>(i));
        CompiledForm cf(g);
        for (int k = 0; k < 100; ++k) {
            CVector x = testutil::random_cvector(3, rng);
            cplx raw = cf.eval_raw(x);
            CHECK(std::abs(raw.imag()) <= 1e-9 * (1.0 + std::abs(raw.real())));
        }
    }
}

TEST_CASE("corrupted tensors trip the imaginary-residue check") {
    // Not conjugate super-symmetric: the raw stacked evaluation is complex.
    CTensor bad(std::vector<int>{2, 2});
    bad.at({1, 1}) = cplx(0.0, 1.0);
    CHECK_THROWS_AS(eval_conjugate_tensor(bad, CVector{cplx(1.0, 0.0)}),
                    ImaginaryResidueError);
}

TEST_CASE("square-free predicate") {
    ConjugateForm sf = ConjugateForm::from_coefficients(
        2, 2, {{MonomialKey({1}, {2}), 1.0}, {MonomialKey({2}, {1}), 1.0}});
    CHECK(is_square_free(sf));
    CHECK_FALSE(is_square_free(testutil::example_form()));
    CHECK(is_square_free(ConjugateForm::zero(2, 2)));
    CHECK(flags(testutil::example_form()).square_free == false);
}

TEST_CASE("extract_linear_coefficient recovers the per-variable linear part") {
    // g = conj(x1) + x1 = 2 Re(x1).
    ConjugateForm lin = ConjugateForm::from_coefficients(
        1, 1, {{MonomialKey({1}, {}), 1.0}, {MonomialKey({}, {1}), 1.0}});
    LinearCoeff lc = extract_linear_coefficient(lin, CVector{cplx(0.0, 0.0)}, 1);
    CHECK(std::abs(lc.p1 - cplx(1.0, 0.0)) < 1e-12);
    CHECK(lc.p3 == doctest::Approx(0.0));

    // g = conj(x1) x2 + x1 conj(x2) at x2 = i: p1 = conj(i) = -i.
    ConjugateForm sf = ConjugateForm::from_coefficients(
        2, 2, {{MonomialKey({1}, {2}), 1.0}, {MonomialKey({2}, {1}), 1.0}});
    lc = extract_linear_coefficient(sf, CVector{cplx(0.0, 0.0), I}, 1);
    CHECK(std::abs(lc.p1 - cplx(0.0, -1.0)) < 1e-12);
    CHECK(lc.p3 == doctest::Approx(0.0));

    // g = 2 conj(x2) x2: constant in x1.
    ConjugateForm c = ConjugateForm::from_coefficients(
        2, 2, {{MonomialKey({2}, {2}), 2.0}});
    lc = extract_linear_coefficient(c, CVector{cplx(0.0, 0.0), cplx(1.0, 0.0)}, 1);
    CHECK(std::abs(lc.p1) < 1e-12);
    CHECK(lc.p3 == doctest::Approx(2.0));

    CHECK_THROWS_AS(extract_linear_coefficient(testutil::example_form(),
                                               CVector{cplx(0, 0), cplx(0, 0)}, 1),
                    NotSquareFreeInVariable);
}

TEST_CASE("linear reconstruction identity at random evaluation points") {
    RandomSource rng(41);
    for (int i = 0; i < 10; ++i) {
        ConjugateForm g = testutil::random_form(InstanceKind::FormSquareFree, 3, 2,
                                                300 + static_cast<std::uint64_t>(i));
        CVector x = testutil::random_cvector(3, rng);
        for (int var = 1; var <= 3; ++var) {
            LinearCoeff lc = extract_linear_coefficient(g, x, var);
            for (int t = 0; t < 10; ++t) {
                cplx tv = rng.next_complex_gaussian();
                CVector pt = x;
                pt[static_cast<std::size_t>(var - 1)] = tv;
                double direct = eval_form(g, pt);
                double recon = 2.0 * std::real(tv * lc.p1) + lc.p3;
                CHECK(std::abs(direct - recon) <= 1e-9 * (1.0 + std::abs(direct)));
            }
        }
    }
}

TEST_CASE("compiled form gradient matches finite differences of the real map") {
    RandomSource rng(43);
    ConjugateForm g = testutil::random_form(InstanceKind::FormGeneral, 2, 3, 999);
    CompiledForm cf(g);
    CVector x = testutil::random_cvector(2, rng);
    CVector grad = cf.gradient(x);
    const double h = 1e-6;
    for (int i = 0; i < 2; ++i) {
        for (int part = 0; part < 2; ++part) {
            CVector xp = x, xm = x;
            cplx dz = part == 0 ? cplx(h, 0.0) : cplx(0.0, h);
            xp[static_cast<std::size_t>(i)] += dz;
            xm[static_cast<std::size_t>(i)] -= dz;
            double fd = (cf.eval(xp) - cf.eval(xm)) / (2.0 * h);
            // Directional derivative along dz/|dz| is 2 Re(conj(h_i) c_i).
            cplx hdir = part == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
            double analytic = 2.0 * std::real(std::conj(hdir) * grad[static_cast<std::size_t>(i)]);
            CHECK(std::abs(fd - analytic) <= 1e-4 * (1.0 + std::abs(analytic)));
        }
    }
}
