#include <doctest.h>

#include "conjopt/errors.hpp"
#include "conjopt/tensor.hpp"
#include "test_util.hpp"

using namespace conjopt;
using testutil::naive_eval_multilinear;

namespace {

const cplx I(0.0, 1.0);

CTensor all_ones(std::vector<int> dims) {
    CTensor t(std::move(dims));
    for (auto& e : t.entries()) e = 1.0;
    return t;
}

} // namespace

TEST_CASE("eval_multilinear on the scalar, identity and all-ones examples") {
    CTensor s(std::vector<int>{1});
    s.at({1}) = 2.0;
    CHECK(eval_multilinear(s, std::vector<CVector>{{cplx(3.0, 0.0)}}) == cplx(6.0, 0.0));

    CTensor id(std::vector<int>{2, 2});
    id.at({1, 1}) = 1.0;
    id.at({2, 2}) = 1.0;
    CVector e1{1.0, 0.0}, e2{0.0, 1.0};
    CHECK(eval_multilinear(id, std::vector<CVector>{e1, e2}) == cplx(0.0, 0.0));

    CTensor ones = all_ones({2, 2, 2});
    CVector u{1.0, 1.0};
    std::vector<CVector> args{u, u, u};
    // Independent oracle: explicit sum of the 8 unit products.
    cplx expect = naive_eval_multilinear(ones, args);
    CHECK(expect == cplx(8.0, 0.0));
    CHECK(eval_multilinear(ones, args) == expect);
}

TEST_CASE("eval_multilinear matches naive enumeration on random tensors") {
    RandomSource rng(7);
    CTensor F = generate_tensor({3, 2, 4}, 1.0, rng);
    std::vector<CVector> xs{testutil::random_cvector(3, rng),
                            testutil::random_cvector(2, rng),
                            testutil::random_cvector(4, rng)};
    cplx a = eval_multilinear(F, xs);
    cplx b = naive_eval_multilinear(F, xs);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
}

TEST_CASE("eval_multilinear is linear in each slot") {
    RandomSource rng(11);
    CTensor F = generate_tensor({2, 3, 2}, 1.0, rng);
    for (int slot = 0; slot < 3; ++slot) {
        std::vector<CVector> base{testutil::random_cvector(2, rng),
                                  testutil::random_cvector(3, rng),
                                  testutil::random_cvector(2, rng)};
        CVector u = testutil::random_cvector(F.dims()[slot], rng);
        CVector v = testutil::random_cvector(F.dims()[slot], rng);
        cplx alpha = rng.next_complex_gaussian(), beta = rng.next_complex_gaussian();

        auto with_slot = [&](const CVector& w) {
            auto args = base;
            args[static_cast<std::size_t>(slot)] = w;
            return eval_multilinear(F, args);
        };
        CVector mix(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) mix[i] = alpha * u[i] + beta * v[i];
        cplx lhs = with_slot(mix);
        cplx rhs = alpha * with_slot(u) + beta * with_slot(v);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("eval_multilinear rejects mismatched arguments") {
    CTensor F(std::vector<int>{2, 3});
    std::vector<CVector> bad{CVector(2), CVector(2)};
    CHECK_THROWS_AS(eval_multilinear(F, bad), DimensionError);
    std::vector<CVector> wrong_count{CVector(2)};
    CHECK_THROWS_AS(eval_multilinear(F, wrong_count), DimensionError);
}

TEST_CASE("symmetrize averages over permutations") {
    CTensor A(std::vector<int>{2, 2});
    A.at({1, 2}) = 2.0;
    CTensor S = symmetrize(A);
    CHECK(S.at({1, 2}) == cplx(1.0, 0.0));
    CHECK(S.at({2, 1}) == cplx(1.0, 0.0));
    CHECK(S.at({1, 1}) == cplx(0.0, 0.0));

    // Already symmetric: fixed point.
    CTensor S2 = symmetrize(S);
    for (std::size_t i = 0; i < S.size(); ++i) CHECK(S2.entries()[i] == S.entries()[i]);

    CTensor B(std::vector<int>{2, 2, 2});
    B.at({1, 2, 1}) = 6.0;
    CTensor SB = symmetrize(B);
    CHECK(std::abs(SB.at({1, 1, 2}) - cplx(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(SB.at({1, 2, 1}) - cplx(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(SB.at({2, 1, 1}) - cplx(2.0, 0.0)) < 1e-15);
    CHECK(SB.at({2, 2, 2}) == cplx(0.0, 0.0));
}

TEST_CASE("symmetrize preserves the diagonal restriction") {
    RandomSource rng(13);
    CTensor F = generate_tensor({3, 3, 3}, 1.0, rng);
    CTensor S = symmetrize(F);
    CVector x = testutil::random_cvector(3, rng);
    std::vector<CVector> xs{x, x, x};
    cplx a = eval_multilinear(F, xs);
    cplx b = eval_multilinear(S, xs);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
}

TEST_CASE("symmetrize rejects non-cubical tensors") {
    CHECK_THROWS_AS(symmetrize(CTensor(std::vector<int>{2, 3})), ShapeError);
}

TEST_CASE("conjugate super-symmetry predicate") {
    CTensor G = testutil::example_matrix();
    CHECK(is_conjugate_super_symmetric(G, 2));

    CTensor bad = G;
    bad.at({1, 1}) = cplx(1.0, 1.0); // breaks pairing with entry (3,3) = -i
    CHECK_FALSE(is_conjugate_super_symmetric(bad, 2));

    CTensor zero(std::vector<int>{4, 4, 4});
    CHECK(is_conjugate_super_symmetric(zero, 2));

    CHECK_THROWS_AS(is_conjugate_super_symmetric(CTensor(std::vector<int>{3, 3}), 2),
                    ShapeError);
}

TEST_CASE("contract against fixed slots") {
    CTensor id(std::vector<int>{2, 2});
    id.at({1, 1}) = 1.0;
    id.at({2, 2}) = 1.0;
    CVector ab{cplx(2.0, 1.0), cplx(-3.0, 0.5)};
    CTensor v = contract(id, {{1, ab}});
    REQUIRE(v.order() == 1);
    CHECK(v.at({1}) == ab[0]);
    CHECK(v.at({2}) == ab[1]);

    CTensor ones = all_ones({2, 2, 2});
    CTensor m = contract(ones, {{1, CVector{1.0, 1.0}}});
    REQUIRE(m.dims() == std::vector<int>{2, 2});
    for (const cplx& e : m.entries()) CHECK(e == cplx(2.0, 0.0));
}

TEST_CASE("contracting every slot yields the multilinear value") {
    RandomSource rng(17);
    CTensor F = generate_tensor({2, 3, 2}, 1.0, rng);
    std::vector<CVector> xs{testutil::random_cvector(2, rng),
                            testutil::random_cvector(3, rng),
                            testutil::random_cvector(2, rng)};
    CTensor s = contract(F, {{1, xs[0]}, {2, xs[1]}, {3, xs[2]}});
    CHECK(s.order() == 0);
    cplx direct = eval_multilinear(F, xs);
    CHECK(std::abs(s.entries()[0] - direct) <= 1e-12 * (1.0 + std::abs(direct)));
}

TEST_CASE("contract composes with eval_multilinear") {
    RandomSource rng(19);
    CTensor F = generate_tensor({2, 2, 3, 2}, 1.0, rng);
    std::vector<CVector> xs{testutil::random_cvector(2, rng),
                            testutil::random_cvector(2, rng),
                            testutil::random_cvector(3, rng),
                            testutil::random_cvector(2, rng)};
    CTensor C = contract(F, {{2, xs[1]}, {4, xs[3]}});
    cplx partial = eval_multilinear(C, std::vector<CVector>{xs[0], xs[2]});
    cplx full = eval_multilinear(F, xs);
    CHECK(std::abs(partial - full) <= 1e-12 * (1.0 + std::abs(full)));

    CTensor P = contract_prefix(F, std::span<const CVector>(xs.data(), 2));
    cplx partial2 = eval_multilinear(P, std::vector<CVector>{xs[2], xs[3]});
    CHECK(std::abs(partial2 - full) <= 1e-12 * (1.0 + std::abs(full)));
}

TEST_CASE("contract validates slots and dimensions") {
    CTensor F(std::vector<int>{2, 3});
    CHECK_THROWS_AS(contract(F, {{3, CVector(2)}}), ShapeError);
    CHECK_THROWS_AS(contract(F, {{1, CVector(3)}}), DimensionError);
}

TEST_CASE("permute_slots relabels arguments consistently") {
    RandomSource rng(23);
    CTensor F = generate_tensor({2, 3, 4}, 1.0, rng);
    std::vector<int> perm{2, 0, 1};
    CTensor P = permute_slots(F, perm);
    CHECK(P.dims() == std::vector<int>{4, 2, 3});
    std::vector<CVector> xs{testutil::random_cvector(2, rng),
                            testutil::random_cvector(3, rng),
                            testutil::random_cvector(4, rng)};
    std::vector<CVector> permuted{xs[2], xs[0], xs[1]};
    cplx a = eval_multilinear(F, xs);
    cplx b = eval_multilinear(P, permuted);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
}
