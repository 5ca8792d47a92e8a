#include "doctest.h"

#include "fixtures.hpp"
#include "rht/autalg.hpp"
#include "rht/errors.hpp"

using namespace rht;

namespace {

Morphism cp2_scaling(const AlgebraPtr& g, long lambda) {
    Rational l(lambda);
    return Morphism(g, g, {l * g->generator("x1"), l * l * g->generator("x2")});
}

AutMatrix diag3(long a, long b, long c) {
    AutMatrix M;
    M.level = 3;
    M.flavor = Flavor{Operad::Lie, Direction::Chain, false};
    M.blocks.resize(4);
    M.blocks[1] = Matrix(1, 1);
    M.blocks[1](0, 0) = a;
    M.blocks[2] = Matrix(1, 1);
    M.blocks[2](0, 0) = b;
    M.blocks[3] = Matrix(1, 1);
    M.blocks[3](0, 0) = c;
    return M;
}

// η of degree 1 on cp3 with a nonzero boundary derivation
Derivation cp3_eta(const AlgebraPtr& g) {
    Derivation eta{g, 1, std::vector<Element>(g->size())};
    eta.images[0] = g->free().bracket(g->generator("x1"), g->generator("x1"));
    eta.images[1] = g->free().bracket(g->generator("x1"), g->generator("x2"));
    eta.images[2] = g->free().bracket(g->generator("x2"), g->generator("x2"));
    return eta;
}

} // namespace

TEST_CASE("restricted structure of the polynomial algebra on u") {
    auto S = restricted_structure(load_algebra("lambda_u.alg"), 4);
    const auto& T = S.table;
    REQUIRE(T.basis.size() == 2);
    int u = T.index("u"), u2 = 1 - u;
    CHECK(T.basis[std::size_t(u2)].degree == 4);
    auto it = T.product.find({u, u});
    REQUIRE(it != T.product.end());
    REQUIRE(it->second.size() == 1);
    CHECK(it->second[0].first == u2);
    CHECK(T.product.count({u, u2}) == 0);
}

TEST_CASE("automorphisms of the CP² Lie model at level 3") {
    auto g = load_algebra("cp2.alg");
    auto S = restricted_structure(g, 3);
    // basis: x1, [x1,x1], x2 (the triple bracket vanishes)
    for (long l : {2L, 3L, -1L, 5L}) {
        CHECK(is_automorphism(diag3(l, l * l, l * l), S));
        CHECK_FALSE(is_automorphism(diag3(l, l * l, l * l + 1), S));
        CHECK_FALSE(is_automorphism(diag3(l, l * l + 1, l * l), S));
        CHECK(matrix_of(cp2_scaling(g, l), 3) == diag3(l, l * l, l * l));
    }
    CHECK_FALSE(is_automorphism(diag3(0, 0, 0), S));
    AutMatrix bad = diag3(1, 1, 1);
    bad.blocks[2] = Matrix(2, 2);
    CHECK_THROWS_AS(is_automorphism(bad, S), DimensionError);
}

TEST_CASE("matrices extend one level and back") {
    auto g = load_algebra("cp3.alg");
    Morphism f(g, g, {Rational(2) * g->generator("x1"), Rational(4) * g->generator("x2"),
                      Rational(8) * g->generator("x3")});
    CHECK(is_automorphism(matrix_of(f, 5), restricted_structure(g, 5)));
    auto g3 = truncate(g, 3);
    AutMatrix M3 = matrix_of(f.restrict_to(g3), 3);
    CHECK(morphism_from_matrix(M3, g3).images() == f.restrict_to(g3).images());
    AutMatrix M4 = extend_level(M3, g3);
    CHECK(M4 == matrix_of(f.restrict_to(g3), 4));
    CHECK_THROWS_AS(morphism_from_matrix(M3, g), PreconditionError);
}

TEST_CASE("exp and log of boundary derivations") {
    auto g = load_algebra("cp3.alg");
    Derivation eta = cp3_eta(g);
    Derivation theta = boundary_derivation(eta);
    bool nonzero = false;
    for (const auto& t : theta.images) nonzero = nonzero || !t.is_zero();
    REQUIRE(nonzero);
    Morphism phi = exp_derivation(theta);
    CHECK_FALSE(phi == Morphism::identity(g));
    Derivation back = log_automorphism(phi);
    CHECK(back.images == theta.images);
    auto eta2 = realize_as_boundary(theta);
    REQUIRE(eta2.has_value());
    CHECK(boundary_derivation(*eta2).images == theta.images);
    // a degree-0 derivation that is not nilpotent
    Derivation scale{g, 0, {g->generator("x1"), Element{}, Element{}}};
    CHECK_THROWS_AS(exp_derivation(scale), NilpotenceError);
    CHECK_THROWS_AS(exp_derivation(eta), DegreeError);
}

TEST_CASE("a scaling derivation is not a boundary") {
    auto g = load_algebra("cp2.alg");
    Derivation theta{g, 0, {g->generator("x1"), Rational(2) * g->generator("x2")}};
    CHECK_FALSE(realize_as_boundary(theta).has_value());
}

TEST_CASE("elements of exp(B⁰ Der) are unipotent automorphisms homotopic to the identity") {
    auto g = load_algebra("cp3.alg");
    KGroupElement k = k_group_element(cp3_eta(g), 5);
    CHECK(is_unipotent(k.matrix));
    CHECK(is_automorphism(k.matrix, restricted_structure(g, 5)));
    auto ends = k.certificate.endpoints();
    CHECK(ends.first == Morphism::identity(g));
    CHECK(ends.second == k.map);
    CHECK(verify_homotopy(k.certificate).ok);
    auto r = homotopic_to_identity(k.map);
    CHECK(r.decision == Decision::Yes);
    REQUIRE(r.certificate.has_value());
    CHECK(verify_homotopy(*r.certificate, &k.map.images()).ok);
    CHECK_FALSE(is_unipotent(matrix_of(cp2_scaling(load_algebra("cp2.alg"), 2), 3)));
}

TEST_CASE("homotopic_to_identity on CP² scalings") {
    auto g = load_algebra("cp2.alg");
    CHECK(homotopic_to_identity(Morphism::identity(g)).decision == Decision::Yes);
    auto r = homotopic_to_identity(cp2_scaling(g, 2));
    CHECK(r.decision == Decision::No);
    CHECK(r.reason.find("H1") != std::string::npos);
}

TEST_CASE("theorem setup for the CP² model") {
    auto g = load_algebra("cp2.alg");
    TheoremSetup S = theorem_setup(g, 4);
    CHECK(S.A_n->flavor().direction == Direction::Cochain);
    CHECK(S.A_n->homology_in_range(0, 4) == std::vector<std::size_t>{1, 0, 1, 0, 1});
    CHECK(compose(S.tau, S.kappa) == Morphism::identity(S.tau.target()));
    CHECK_THROWS_AS(theorem_setup(g, 2), HypothesisError);
    CHECK_THROWS_AS(theorem_setup(load_algebra("lambda_u.alg"), 4), FlavorError);
}

TEST_CASE("rho on CP² scalings") {
    auto g = load_algebra("cp2.alg");
    TheoremSetup S = theorem_setup(g, 4);
    for (long l : {2L, 3L, -1L}) {
        Morphism r = rho(S, cp2_scaling(g, l));
        // oracle: the scaling acts on H² by λ (the degree-2 class is dual to x1)
        Matrix h2 = r.induced_on_homology(2);
        REQUIRE(h2.rows() == 1);
        CHECK(h2(0, 0) == Rational(l));
        Matrix h4 = r.induced_on_homology(4);
        CHECK(h4(0, 0) == Rational(l * l));
        AutMatrix M = rho_pipeline(S, cp2_scaling(g, l));
        CHECK(M.level == 5);
        CHECK(is_automorphism(M, restricted_structure(S.A_n, 5)));
    }
}

TEST_CASE("round trip and products for CP² scalings") {
    auto g = load_algebra("cp2.alg");
    TheoremSetup S = theorem_setup(g, 4);
    std::vector<std::pair<std::string, Morphism>> samples;
    for (long l : {2L, 3L, -1L, 1L}) samples.emplace_back("λ=" + std::to_string(l), cp2_scaling(g, l));
    MainTheoremReport R = check_main_theorem(S, samples);
    INFO(R.text());
    CHECK(R.ok);
    CHECK(R.failures.empty());
    for (const auto& s : R.samples) {
        CHECK(s.lie_round_trip == Decision::Yes);
        CHECK(s.com_round_trip == Decision::Yes);
    }
    for (const auto& p : R.pairs) {
        if (p.i < p.j) {
            CHECK(p.lie == Decision::No);
            CHECK(p.com == Decision::No);
        }
        CHECK(p.product == Decision::Yes);
    }
}

TEST_CASE("round trip on the CP³ model with a unipotent sample") {
    auto g = load_algebra("cp3.alg");
    TheoremSetup S = theorem_setup(g, 6);
    Rational two(2);
    Morphism scale(g, g, {two * g->generator("x1"), two * two * g->generator("x2"),
                          two * two * two * g->generator("x3")});
    KGroupElement k = k_group_element(cp3_eta(g), 6);
    MainTheoremReport R = check_main_theorem(S, {{"λ=2", scale}, {"exp", k.map}});
    INFO(R.text());
    CHECK(R.ok);
    // the unipotent element acts trivially on homology and is homotopic to the identity
    CHECK(R.samples[1].invariant_lie == Matrix::identity(1));
    REQUIRE(R.pairs.size() == 4);
    CHECK(R.pairs[1].lie == Decision::No);
    CHECK(R.pairs[1].com == Decision::No);
    CHECK(homotopic_to_identity(rho(S, k.map)).decision == Decision::Yes);
}
