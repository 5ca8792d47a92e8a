#pragma once
// Koszul-duality functors for the (Lie, Com) and (Assoc, Assoc) pairs.
//
//   ce_cochains: chain Lie (or Assoc) algebra g  ->  cochain algebra on (s g)^∨,
//                generator w_a of degree |e_a| + 1 for each basis vector e_a.
//   quillen_L:   cochain Com (or Assoc) algebra A ->  chain algebra on
//                s^{-1}(reduced A)^∨, generator x_a of degree |e_a| - 1.
//
// With D^c_a the coefficient of e_c in d e_a and C^c_{ab} the coefficient of
// e_c in the product (bracket) e_a e_b:
//
//   d w_c = -Σ_a D^c_a w_a + ½ Σ_{a,b} (-1)^{|e_a|} C^c_{ab} w_a w_b      (CE)
//   d x_c = -Σ_a D^c_a x_a + ½ Σ_{a,b} (-1)^{|e_a|} C^c_{ab} [x_a, x_b]  (Quillen)
//
// and for the associative pair the same formulas without the factor ½ and
// with concatenation in place of the product and bracket. These signs were
// fixed by requiring d² = 0 and that the functors send morphisms and
// homotopies to morphisms and homotopies.
//
// Certified ranges: g with cutoff D gives C*(g) with cutoff D (generators up
// to degree D + 1); A with cutoff D gives L(A) with cutoff D - 1.

#include "rht/dga.hpp"
#include "rht/homotopy.hpp"

#include <string>
#include <vector>

namespace rht {

struct KoszulDual {
    AlgebraPtr algebra;
    FiniteTypeAlgebra input;
    AlgebraPtr source;                     // quasi-free input, if the dual was built from one
    std::vector<int> generator_of_basis;   // input basis index -> generator index
    std::vector<int> basis_of_generator;   // generator index -> input basis index
};

KoszulDual ce_cochains(const FiniteTypeAlgebra& g);
KoszulDual ce_cochains(const AlgebraPtr& g);
KoszulDual quillen_L(const FiniteTypeAlgebra& A);
KoszulDual quillen_L(const AlgebraPtr& A);

/// Contravariant action on a morphism f: X -> Y of quasi-free algebras, given
/// the duals of X and Y; returns F(Y) -> F(X).
Morphism functor_on_morphism(const Morphism& f, const KoszulDual& dual_source, const KoszulDual& dual_target);

/// Image of a homotopy h: f ≃ g (X -> Y) under the functor: a homotopy
/// F(f) ≃ F(g) from F(Y) to F(X), obtained by dualizing h over Λ(t,dt), with
/// β_i(w'_c) = -Σ_a <e'_c, β_i(e_a)> w_a. For chain outputs the source is the
/// truncation below the cutoff degree. Throws MalformedHomotopyError if the
/// result fails verify_homotopy against F(g).
Homotopy functor_on_homotopy(const Homotopy& h, const KoszulDual& dual_source, const KoszulDual& dual_target);

/// Counit τ: L(C*(g)) -> g, recut to the cutoff of L(C*(g)): the generator
/// dual to a generator w_c of C*(g) goes to -e_c, e_c the basis element of g, the
/// generators dual to products go to 0. `ce` must be built from g and `l`
/// from ce.algebra.
Morphism counit(const KoszulDual& ce, const KoszulDual& l);

struct Minimalization {
    AlgebraPtr minimal;
    Morphism projection;  // ν: A -> minimal, a surjective quasi-isomorphism
    Morphism section;     // η: minimal -> A with ν ∘ η = id
};

/// Cancels linear pairs (v, w) with dv = c w + ... one at a time by dividing
/// out the ideal they generate.
Minimalization minimalize(const AlgebraPtr& A);

/// The cylinder P(V ⊕ V̂ ⊕ sV̂) with D v = dv, D v̂ = 0 and D(sv̂) = v̂, where
/// sv̂ has degree |v| - deg(d).
AlgebraPtr cylinder(const AlgebraPtr& A);

struct FiniteGeneration {
    Decision decision = Decision::Unknown;
    std::size_t generators = 0;       // generators of the minimal model of L(A) found
    std::size_t reduced_betti_sum = 0;
    std::vector<std::size_t> betti;   // H^0..H^top of A
    std::string reason;
};

/// Whether the minimal model of L(A) is finitely generated, i.e. whether
/// H*(A) is finite dimensional, as far as the cutoff allows a decision.
FiniteGeneration check_finite_generation(const FiniteTypeAlgebra& A);
FiniteGeneration check_finite_generation(const AlgebraPtr& A);

} // namespace rht
