#include "doctest.h"

#include "fixtures.hpp"
#include "homotopy_oracles.hpp"
#include "rht/homotopy.hpp"

using namespace rht;

namespace {

Morphism lambda_map(const AlgebraPtr& A, const AlgebraPtr& B, Rational lam) {
    return Morphism(A, B, {lam * el(B, "x1"), lam * lam * el(B, "x2")});
}

} // namespace

TEST_CASE("constant homotopies") {
    auto cp2 = load_algebra("cp2.alg");
    Morphism f = lambda_map(cp2, cp2, 2);
    Homotopy h = Homotopy::constant(f);
    CHECK(verify_homotopy(h).ok);
    auto [f0, f1] = h.endpoints();
    CHECK(f0 == f);
    CHECK(f1 == f);
}

TEST_CASE("Sullivan CP2: beta_0(v) = u^2 from the identity") {
    auto A = load_algebra("sullivan_cp2.alg");
    std::vector<Element> b0 = {Element{}, el(A, "u^2")};
    Homotopy h(Morphism::identity(A), {b0});
    CHECK(verify_homotopy(h).ok);
    auto [f0, f1] = h.endpoints();
    CHECK(f0 == Morphism::identity(A));
    CHECK(f1 == Morphism::identity(A));
}

TEST_CASE("random homotopies satisfy the recursion on every basis element") {
    std::mt19937 rng(5);
    for (auto name : {"cp3.alg", "sullivan_cp2.alg", "nonsparse.alg"}) {
        auto A = load_algebra(name);
        for (int t = 0; t < 3; ++t) {
            Homotopy h(Morphism::identity(A), oracle::random_betas(*A, *A, rng, 2));
            CHECK(verify_homotopy(h).ok);
            CHECK_NOTHROW(h.endpoints());
            CHECK(oracle::recursion_holds_on_basis(h, 6));
        }
    }
}

TEST_CASE("a corrupted beta no longer reaches the claimed end map") {
    std::mt19937 rng(9);
    auto A = load_algebra("cp3.alg");
    Homotopy h(Morphism::identity(A), oracle::random_betas(*A, *A, rng, 1));
    auto end = h.end_images();
    CHECK(verify_homotopy(h, &end).ok);
    auto betas = h.betas();
    betas[0][2] += el(A, "[x2,x2]");
    Homotopy bad(h.alpha0(), betas);
    auto v = verify_homotopy(bad, &end);
    CHECK_FALSE(v.ok);
    CHECK(v.generator == "x3");
}

TEST_CASE("certificate round trip") {
    std::mt19937 rng(2);
    auto A = load_algebra("cp3.alg");
    Homotopy h(Morphism::identity(A), oracle::random_betas(*A, *A, rng, 2));
    auto cert = parse_homotopy(print_homotopy(h), A, A);
    CHECK(cert.homotopy.betas() == h.betas());
    CHECK(verify_homotopy(cert.homotopy, &cert.end).ok);
}

TEST_CASE("extend_homotopy") {
    auto cp2 = load_algebra("cp2.alg");
    auto A1 = truncate(cp2, 1);
    Rational lam = 3;
    Morphism f = lambda_map(cp2, cp2, lam);
    Homotopy h1 = Homotopy::constant(f.restrict_to(A1));
    Homotopy h = extend_homotopy(h1, f, f);
    CHECK(verify_homotopy(h).ok);
    CHECK(h.restrict_to(A1).betas() == h1.betas());
    CHECK(h.end_images() == f.images());

    Morphism g = lambda_map(cp2, cp2, 2);
    CHECK_THROWS_AS(extend_homotopy(h1, f, g), PreconditionError);
}

TEST_CASE("obstructions carry the exact cocycle") {
    auto cp2 = load_algebra("cp2.alg");
    auto B = parse_algebra("algebra lie chain cutoff 8\ngen x1 1\ngen x2 3\ngen y 3\nd x2 = 1/2 [x1,x1]\n");
    Morphism f(cp2, B, {el(B, "x1"), el(B, "x2")});
    Morphism g(cp2, B, {el(B, "x1"), el(B, "x2 + y")});
    auto A1 = truncate(cp2, 1);
    try {
        extend_homotopy(Homotopy::constant(f.restrict_to(A1)), f, g);
        FAIL("expected an obstruction");
    } catch (const ObstructionError& e) {
        CHECK(e.generator() == "x2");
        CHECK(e.cocycle() == -el(B, "y"));
        // brute force: y is a cycle and no degree-4 element bounds it
        CHECK(B->d(e.cocycle()).is_zero());
        CHECK(rank(B->differential_matrix(4)) == 0);
    }

    auto S = load_algebra("sullivan_cp2.alg");
    auto T = parse_algebra("algebra com cochain unitary cutoff 10\ngen u 2\ngen v 5\ngen y 5\nd v = u^3\n");
    Morphism fs(S, T, {el(T, "u"), el(T, "v")});
    Morphism gs(S, T, {el(T, "u"), el(T, "v + y")});
    auto S2 = truncate(S, 2);
    CHECK_THROWS_AS(extend_homotopy(Homotopy::constant(fs.restrict_to(S2)), fs, gs), ObstructionError);
}

TEST_CASE("extend_map") {
    auto cpinf = load_algebra("cp_inf.alg");
    auto A1 = truncate(cpinf, 1), A3 = truncate(cpinf, 3);
    for (Rational lam : {Rational(2), Rational(-1, 3)}) {
        Morphism f(A1, cpinf, {lam * el(cpinf, "x1")});
        auto ext = extend_map(f, A3);
        CHECK(ext.map.image(1) == lam * lam * el(cpinf, "x2"));
        REQUIRE(ext.freedom.size() == 1);
        CHECK(ext.freedom[0].second == 0);
    }

    auto cp2 = load_algebra("cp2.alg"), cp3 = load_algebra("cp3.alg");
    Rational lam = 5;
    Morphism f = lambda_map(cp2, cp3, lam);
    auto ext = extend_map(f, cp3);
    Element x3img = ext.map.image(2);
    CHECK(cp3->d(x3img) == lam * lam * lam * el(cp3, "[x1,x2]"));
    CHECK(cp3->d(x3img - lam * lam * lam * el(cp3, "x3")).is_zero());
    Matrix d5 = cp3->differential_matrix(5);
    CHECK(ext.freedom[0].second == d5.cols() - rank(d5));
}

TEST_CASE("homotopic") {
    auto cp2 = load_algebra("cp2.alg");
    auto r = homotopic(lambda_map(cp2, cp2, 2), lambda_map(cp2, cp2, 2));
    CHECK(r.decision == Decision::Yes);
    r = homotopic(lambda_map(cp2, cp2, 2), lambda_map(cp2, cp2, 3));
    CHECK(r.decision == Decision::No);
    CHECK(r.reason == "H1 invariant differs: 2 vs 3");

    // two extensions of the same map differing by a degree-7 cycle
    auto cpinf = recut(load_algebra("cp_inf.alg"), 8);
    auto A5 = truncate(cpinf, 5);
    Morphism f5(A5, cp2, {Element{}, Element{}, el(cp2, "[x1,[x1,x2]]")});
    auto e1 = extend_map(f5, cpinf).map;
    auto imgs = e1.images();
    imgs[3] += cp2->free().from_coordinates(kernel(cp2->differential_matrix(7))[0], 7);
    Morphism e2(cpinf, cp2, imgs);
    auto r2 = homotopic(e1, e2);
    REQUIRE(r2.decision == Decision::Yes);
    auto end = e2.images();
    CHECK(verify_homotopy(*r2.certificate, &end).ok);
}

TEST_CASE("extend_iso") {
    auto cp2 = load_algebra("cp2.alg"), cp3 = load_algebra("cp3.alg");
    auto A3 = truncate(cp3, 3);
    auto id = extend_iso(Morphism::identity(A3), cp3);
    CHECK(id.map == Morphism::identity(cp3));
    Rational lam = -2;
    auto ext = extend_iso(lambda_map(A3, A3, lam), cp3);
    CHECK(ext.map.linear_part(5)(0, 0) == lam * lam * lam);
    CHECK(compose(ext.map, ext.inverse) == Morphism::identity(cp3));
    CHECK_THROWS_AS(extend_iso(lambda_map(A3, A3, 0), cp3), PreconditionError);
}

TEST_CASE("sparseness gate") {
    auto cpinf = recut(load_algebra("cp_inf.alg"), 8);
    auto A3 = truncate(cpinf, 3);
    Morphism f(A3, cpinf, {Rational(2) * el(cpinf, "x1"), Rational(4) * el(cpinf, "x2")});
    auto r = homotopic(f, f);
    CHECK_NOTHROW(identify_in_truncation(*r.certificate, A3));

    auto ns = load_algebra("nonsparse.alg");
    auto N2 = truncate(ns, 2);
    Morphism g(N2, ns, {el(ns, "a")});
    CHECK_THROWS_AS(identify_in_truncation(Homotopy::constant(g), N2), SparsenessError);
}
