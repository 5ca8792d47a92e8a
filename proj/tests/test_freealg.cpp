#include "doctest.h"

#include "rht/errors.hpp"
#include "rht/freealg.hpp"

#include <random>

using namespace rht;

namespace {

FreeAlgebra lie(std::vector<Generator> g) {
    return FreeAlgebra({Operad::Lie, Direction::Chain, false}, Generators(std::move(g)));
}

FreeAlgebra com(std::vector<Generator> g) {
    return FreeAlgebra({Operad::Com, Direction::Cochain, true}, Generators(std::move(g)));
}

// Tensor-algebra rank oracle: span all iterated brackets of generators (not
// only right-normed ones) in a degree and compute the rank of their
// coefficient matrix over words.
std::size_t lie_rank_oracle(const FreeAlgebra& L, int degree) {
    std::map<int, std::vector<Element>> brackets;
    for (std::size_t i = 0; i < L.generators().size(); ++i)
        brackets[L.generators()[i].degree].push_back(L.generator(int(i)));
    for (int d = 2; d <= degree; ++d)
        for (int a = 1; a < d; ++a)
            for (const auto& x : brackets[a])
                for (const auto& y : brackets[d - a]) {
                    Element z = L.bracket(x, y);
                    if (!z.is_zero()) brackets[d].push_back(z);
                }
    std::map<Word, std::size_t> rows;
    for (const auto& e : brackets[degree])
        for (const auto& [w, c] : e.terms()) rows.emplace(w, rows.size());
    Matrix m(rows.size(), brackets[degree].size());
    for (std::size_t j = 0; j < brackets[degree].size(); ++j)
        for (const auto& [w, c] : brackets[degree][j].terms()) m(rows[w], j) = c;
    return rank(m);
}

} // namespace

TEST_CASE("products and brackets") {
    FreeAlgebra C = com({{"u", 2}, {"v", 5}});
    Element u = C.generator(0), v = C.generator(1);
    CHECK_FALSE(C.multiply(u, u).is_zero());
    CHECK(C.multiply(v, v).is_zero());
    CHECK(C.multiply(u, v) == C.multiply(v, u));

    FreeAlgebra L = lie({{"x1", 1}});
    Element x = L.generator(0);
    Element xx = L.bracket(x, x);
    CHECK(xx == Element::monomial({0, 0}, 2));
    CHECK(L.bracket(x, xx).is_zero());

    FreeAlgebra L2 = lie({{"x1", 1}, {"x2", 3}});
    CHECK_THROWS_AS(C.bracket(u, u), FlavorError);
    CHECK_THROWS_AS(C.extend_as_morphism({L2.generator(0), L2.generator(1)}, L2, u), FlavorError);
}

TEST_CASE("odd generator signs in com") {
    FreeAlgebra C = com({{"a", 3}, {"b", 3}, {"c", 2}});
    Element a = C.generator(*C.generators().index("a"));
    Element b = C.generator(*C.generators().index("b"));
    Element c = C.generator(*C.generators().index("c"));
    CHECK(C.multiply(a, b) == -C.multiply(b, a));
    CHECK(C.multiply(a, c) == C.multiply(c, a));
    CHECK(C.multiply(C.multiply(a, b), a).is_zero());
}

TEST_CASE("bases per degree") {
    FreeAlgebra L = lie({{"x1", 1}});
    CHECK(L.dim(1) == 1);
    CHECK(L.dim(2) == 1);
    CHECK(L.dim(3) == 0);
    CHECK(L.dim(-1) == 0);

    FreeAlgebra C = com({{"u", 2}});
    CHECK(C.dim(4) == 1);
    CHECK(C.basis(4).labels[0] == "u*u");

    FreeAlgebra L2 = lie({{"x1", 1}, {"x2", 3}});
    CHECK(L2.dim(3) == 1);
    CHECK(L2.basis(3).labels[0] == "x2");
    CHECK(L2.dim(4) == 1);
    CHECK(L2.basis(4).labels[0] == "[x1,x2]");

    FreeAlgebra L3 = lie({{"a", 1}, {"b", 2}, {"c", 2}, {"e", 3}});
    for (int d = 1; d <= 7; ++d) CHECK(L3.dim(d) == lie_rank_oracle(L3, d));
    // renaming generators does not change dimensions
    FreeAlgebra L4 = lie({{"z", 1}, {"y", 2}, {"x", 2}, {"w", 3}});
    for (int d = 1; d <= 7; ++d) CHECK(L3.dim(d) == L4.dim(d));
}

TEST_CASE("coordinates round trip and reject non-Lie tensors") {
    FreeAlgebra L = lie({{"a", 1}, {"b", 2}});
    for (int d = 1; d <= 6; ++d) {
        const auto& B = L.basis(d);
        for (std::size_t j = 0; j < B.dim(); ++j) {
            Vector c = L.coordinates(B.elements[j], d);
            for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == (k == j ? 1 : 0));
        }
    }
    CHECK_THROWS_AS(L.coordinates(Element::monomial({0, 1}), 3), DimensionError);
}

TEST_CASE("jacobi, antisymmetry and leibniz on random elements") {
    FreeAlgebra L = lie({{"a", 1}, {"b", 2}, {"c", 3}});
    std::mt19937 rng(3);
    auto random_elt = [&](int d) {
        const auto& B = L.basis(d);
        Vector v(B.dim());
        for (auto& q : v) q = Rational(int(rng() % 5) - 2);
        return L.from_coordinates(v, d);
    };
    for (int t = 0; t < 30; ++t) {
        int p = 1 + rng() % 3, q = 1 + rng() % 3, r = 1 + rng() % 2;
        Element x = random_elt(p), y = random_elt(q), z = random_elt(r);
        CHECK((L.bracket(x, y) + Rational(parity_sign(p * q)) * L.bracket(y, x)).is_zero());
        Element jac = Rational(parity_sign(p * r)) * L.bracket(x, L.bracket(y, z)) +
                      Rational(parity_sign(q * p)) * L.bracket(y, L.bracket(z, x)) +
                      Rational(parity_sign(r * q)) * L.bracket(z, L.bracket(x, y));
        CHECK(jac.is_zero());

        // a degree-1 derivation
        Element ga = L.generator(0), gb = L.generator(1);
        std::vector<Element> dv = {L.bracket(ga, ga), L.bracket(ga, gb), L.bracket(gb, gb)};
        Element lhs = L.extend_as_derivation(dv, 1, L.bracket(x, y));
        Element rhs = L.bracket(L.extend_as_derivation(dv, 1, x), y) +
                      Rational(parity_sign(p)) * L.bracket(x, L.extend_as_derivation(dv, 1, y));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("extend_as_morphism and derivations on fixtures") {
    FreeAlgebra L = lie({{"x1", 1}, {"x2", 3}});
    Element x1 = L.generator(0), x2 = L.generator(1);
    Rational lam(3, 2);
    std::vector<Element> f = {lam * x1, lam * lam * x2};
    CHECK(L.extend_as_morphism(f, L, L.bracket(x1, x1)) == lam * lam * L.bracket(x1, x1));
    std::vector<Element> id = {x1, x2};
    Element y = L.bracket(x1, x2);
    CHECK(L.extend_as_morphism(id, L, y) == y);

    std::vector<Element> d = {Element{}, Rational(1, 2) * L.bracket(x1, x1)};
    CHECK(L.extend_as_derivation(d, -1, L.bracket(x1, x2)).is_zero());
    CHECK(L.extend_as_derivation({Element{}, Element{}}, -1, y).is_zero());

    FreeAlgebra C = com({{"u", 2}, {"w", 2}});
    Element u = C.generator(0), w = C.generator(1);
    std::vector<Element> g = {u + w, w};
    CHECK(C.extend_as_morphism(g, C, C.multiply(u, u)) ==
          C.multiply(u, u) + Rational(2) * C.multiply(u, w) + C.multiply(w, w));

    // CP-infinity: 1/2([x1,x2] + [x2,x1]) = [x1,x2]
    CHECK(Rational(1, 2) * (L.bracket(x1, x2) + L.bracket(x2, x1)) == L.bracket(x1, x2));
    CHECK_THROWS_AS(L.check_shift({Element{}, x1}, -1), ShiftError);
}

TEST_CASE("coefficients are stored in lowest terms") {
    Element a = Element::monomial(Word{0}, Rational(2, 2));
    CHECK(a == Element::monomial(Word{0}));
    Element b = Element::monomial(Word{0});
    b *= Rational(4, 6);
    CHECK(b == Element::monomial(Word{0}, Rational(2, 3)));
}
