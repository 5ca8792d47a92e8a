#pragma once
// Matrix realizations of automorphism groups of quasi-free algebras, the
// unipotent subgroup exp(B⁰ Der A) and the comparison between a chain Lie
// algebra and the truncation of its minimal cochain model.
//
// Levels. An automorphism of a quasi-free algebra generated in degrees <= n
// is determined by its restriction to degrees <= n + ε, where ε = 0 for chain
// and ε = 1 for cochain algebras (the differential of a degree-n generator
// lands in degree n + 1 for cochain algebras).

#include "rht/dga.hpp"
#include "rht/homotopy.hpp"
#include "rht/koszul.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rht {

int level_epsilon(const Flavor& f);

/// The n-restricted structure maps: basis of A^{<=n}, the differential
/// between degrees <= n and the binary product (bracket) wherever it stays
/// in degrees <= n. Throws CutoffError if n exceeds the cutoff.
struct RestrictedStructure {
    AlgebraPtr algebra;
    int level = 0;
    FiniteTypeAlgebra table;
};

RestrictedStructure restricted_structure(const AlgebraPtr& A, int n);

/// Block matrices on A^{<=level}, blocks[k] acting on degree k (k = 1..level;
/// blocks[0] is unused).
struct AutMatrix {
    int level = 0;
    Flavor flavor;
    std::vector<Matrix> blocks;

    friend bool operator==(const AutMatrix& a, const AutMatrix& b) { return a.blocks == b.blocks; }
};

AutMatrix matrix_of(const Morphism& f, int n);
/// Invertible, commutes with the differential and with every product in the
/// table. Throws DimensionError if block sizes do not match.
bool is_automorphism(const AutMatrix& M, const RestrictedStructure& S);
/// Algebra map determined by the generator columns of M. Throws
/// PreconditionError if A has generators above the level.
Morphism morphism_from_matrix(const AutMatrix& M, const AlgebraPtr& A);
/// Rebuilds M one level higher from its generator blocks.
AutMatrix extend_level(const AutMatrix& M, const AlgebraPtr& A);
/// Every diagonal block unipotent (M_k - I nilpotent).
bool is_unipotent(const AutMatrix& M);

/// A derivation of the given degree determined by its values on generators.
struct Derivation {
    AlgebraPtr algebra;
    int degree = 0;
    std::vector<Element> images;

    Element apply(const Element& x) const;
};

/// θ = [d, η] = dη + ηd for η of degree -deg(d).
Derivation boundary_derivation(const Derivation& eta);
/// exp(θ) for a degree-0 derivation, nilpotent on every degree. Throws
/// DegreeError or NilpotenceError.
Morphism exp_derivation(const Derivation& theta);
/// log φ = Σ (-1)^{j+1} (φ - id)^j / j on generators. Throws NilpotenceError
/// unless φ - id is nilpotent in every degree.
Derivation log_automorphism(const Morphism& phi);
/// η with dη + ηd = θ on every generator, solved degree by degree, or nothing.
std::optional<Derivation> realize_as_boundary(const Derivation& theta);

struct KGroupElement {
    Derivation eta;
    Derivation theta;
    Morphism map;
    AutMatrix matrix;
    Homotopy certificate;  // from the identity to map
};

/// exp(dη + ηd) with an explicit homotopy to the identity,
/// β_i(v) = -η(θ^i v) / i!.
KGroupElement k_group_element(const Derivation& eta, int n);

/// Yes with certificate when φ = exp(dη + ηd) for a solvable η or when the
/// homotopy engine proves φ ≃ id; otherwise the engine's verdict.
HomotopicResult homotopic_to_identity(const Morphism& phi);

/// The data relating a chain Lie algebra a to the truncation A_n of the
/// minimal model A of C*(a).
struct TheoremSetup {
    AlgebraPtr lie;
    int n = 0;
    KoszulDual ce;
    Minimalization model;  // C*(a) -> A and back
    AlgebraPtr A_n;
    KoszulDual quillen;    // L(C*(a))
    Morphism tau;          // L(C*(a)) -> a
    Morphism kappa;        // a -> L(C*(a)), τ ∘ κ = id
};

/// Throws HypothesisError unless H*(A) vanishes in degrees n+1 .. top certified.
TheoremSetup theorem_setup(const AlgebraPtr& lie, int n);

/// ν ∘ C*(φ) ∘ η restricted to A_n (a self-map of A_n).
Morphism rho(const TheoremSetup& S, const Morphism& phi);
/// Matrix of rho on A_n^{<= n+1}.
AutMatrix rho_pipeline(const TheoremSetup& S, const Morphism& phi);
/// Surjectivity recipe: extend Φ from A_n to A, conjugate to C*(a), apply L
/// and return τ ∘ L(η Φ ν) ∘ κ, an automorphism of a recut by one degree.
Morphism rho_preimage(const TheoremSetup& S, const Morphism& Phi);

/// Same generators and differentials, re-read on another algebra object.
Morphism transplant(const Morphism& f, const AlgebraPtr& source, const AlgebraPtr& target);

struct SampleReport {
    std::string name;
    Matrix invariant_lie;  // induced map on the lowest nonzero homology of a
    Matrix invariant_com;  // induced map on the lowest nonzero cohomology of A_n
    AutMatrix rho_matrix;
    Decision lie_round_trip = Decision::Unknown;  // ρ^{-1}(ρ(φ)) ≃ φ
    Decision com_round_trip = Decision::Unknown;  // ρ(ρ^{-1}(Φ)) ≃ Φ
};

struct PairReport {
    std::size_t i = 0, j = 0;
    Decision lie = Decision::Unknown;       // φ_i ≃ φ_j
    Decision com = Decision::Unknown;       // ρ(φ_i) ≃ ρ(φ_j)
    Decision product = Decision::Unknown;   // ρ(φ_i φ_j) ≃ ρ(φ_j) ρ(φ_i)
};

struct MainTheoremReport {
    std::vector<SampleReport> samples;
    std::vector<PairReport> pairs;
    bool ok = true;
    std::vector<std::string> failures;
    std::string text() const;
};

MainTheoremReport check_main_theorem(const TheoremSetup& S, const std::vector<std::pair<std::string, Morphism>>& samples);

} // namespace rht
