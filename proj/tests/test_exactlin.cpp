#include "doctest.h"

#include "rht/errors.hpp"
#include "rht/exactlin.hpp"

#include <random>

using namespace rht;

namespace {

Matrix random_sparse(std::mt19937& rng, std::size_t r, std::size_t c) {
    Matrix m(r, c);
    std::uniform_int_distribution<int> coin(0, 4), val(-3, 3);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (coin(rng) == 0) {
                m(i, j) = Rational(val(rng), 1 + coin(rng));
                m(i, j).canonicalize();
            }
    return m;
}

} // namespace

TEST_CASE("solve on tiny systems") {
    Matrix id = Matrix::identity(1);
    auto x = solve(id, Vector{Rational(3, 2)});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(3, 2));

    Matrix zero(2, 2);
    auto z = solve(zero, Vector{0, 0});
    REQUIRE(z);
    CHECK(is_zero(*z));
    CHECK_FALSE(solve(zero, Vector{1, 0}));
    CHECK_THROWS_AS(solve(zero, Vector{1}), DimensionError);

    // d: x2 -> 1/2 [x1,x1] in the one-dimensional degree 3 -> degree 2 block
    Matrix d(1, 1);
    d(0, 0) = Rational(1, 2);
    auto s = solve(d, Vector{1});
    REQUIRE(s);
    CHECK((*s)[0] == 2);
}

TEST_CASE("rank-nullity and solve on random sparse matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
        Matrix m = random_sparse(rng, r, c);
        auto ker = kernel(m);
        CHECK(rank(m) + ker.size() == c);
        for (const auto& v : ker) CHECK(is_zero(m * v));
        Vector x(c);
        for (auto& q : x) q = Rational(int(rng() % 7) - 3);
        Vector b = m * x;
        auto sol = solve(m, b);
        REQUIRE(sol);
        CHECK(m * *sol == b);
    }
}

TEST_CASE("homology_dims") {
    Matrix in(2, 0), out(0, 2);
    CHECK(homology_dims(in, out) == 2);

    // degree-2 part of the CP2 Lie model: [x1,x1] is a cycle and a boundary
    Matrix d3(1, 1), d2(0, 1);
    d3(0, 0) = Rational(1, 2);
    CHECK(homology_dims(d3, d2) == 0);
    // degree 1: x1 is a cycle, nothing hits it
    CHECK(homology_dims(Matrix(1, 0), Matrix(0, 1)) == 1);

    Matrix a(1, 1), b(1, 1);
    a(0, 0) = 1;
    b(0, 0) = 1;
    CHECK_THROWS_AS(homology_dims(a, b), NotAComplexError);
}

TEST_CASE("homology_dims is invariant under change of basis") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        // build a complex X -> Y -> Z with d_out d_in = 0 by factoring through a kernel
        std::size_t nx = 1 + rng() % 6, ny = 2 + rng() % 6, nz = 1 + rng() % 6;
        Matrix out = random_sparse(rng, nz, ny);
        auto ker = kernel(out);
        Matrix in(ny, nx);
        for (std::size_t j = 0; j < nx && !ker.empty(); ++j) in.set_column(j, ker[rng() % ker.size()]);
        std::size_t h = homology_dims(in, out);
        Matrix p;
        do {
            p = random_sparse(rng, ny, ny) + Matrix::identity(ny);
        } while (!inverse(p));
        Matrix pinv = *inverse(p);
        CHECK(homology_dims(p * in, out * pinv) == h);
    }
}

TEST_CASE("inverse") {
    Matrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 1) = 3;
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(m * *inv == Matrix::identity(2));
    CHECK_FALSE(inverse(Matrix(2, 2)));
}
