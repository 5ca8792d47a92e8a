#pragma once
// Independent checks of the homotopy recursion on arbitrary elements.

#include "rht/homotopy.hpp"

#include <random>

namespace oracle {

using namespace rht;

// -(i+1) α_{i+1}(x) = d β_i(x) + β_i(dx) and d α_i(x) = α_i(dx) for every
// basis element x of the source in degrees 1..top.
inline bool recursion_holds_on_basis(const Homotopy& h, int top) {
    const QuasiFreeAlgebra& A = *h.source();
    const QuasiFreeAlgebra& B = *h.target();
    int imax = h.top_alpha() + 2;
    for (int k = 1; k <= top; ++k)
        for (const auto& x : A.free().basis(k).elements) {
            Element dx = A.d(x);
            for (int i = 0; i <= imax; ++i) {
                Element lhs = Rational(-(i + 1)) * h.alpha(i + 1, x);
                Element rhs = B.d(h.beta(i, x)) + h.beta(i, dx);
                if (!(lhs == rhs)) return false;
                if (!(B.d(h.alpha(i, x)) == h.alpha(i, dx))) return false;
            }
        }
    return true;
}

inline Element random_element(const FreeAlgebra& F, int degree, std::mt19937& rng, int spread = 3) {
    const auto& b = F.basis(degree);
    Vector v(b.dim());
    for (auto& q : v) {
        q = Rational(int(rng() % (2 * spread + 1)) - spread, 1 + int(rng() % 3));
        q.canonicalize();
    }
    return F.from_coordinates(v, degree);
}

inline std::vector<std::vector<Element>> random_betas(const QuasiFreeAlgebra& A, const QuasiFreeAlgebra& B,
                                                      std::mt19937& rng, int count) {
    std::vector<std::vector<Element>> betas(count);
    for (auto& b : betas)
        for (const auto& g : A.generators().all()) {
            int k = g.degree - A.d_degree();
            b.push_back(k >= 1 && k <= B.cutoff() + 1 ? random_element(B.free(), k, rng) : Element{});
        }
    return betas;
}

} // namespace oracle
