#pragma once
// Quasi-free (co)chain algebras (P(V), d), their morphisms and truncations.
//
// Cutoff semantics. An algebra carries a cutoff D and is an honest copy of the
// intended algebra in degrees <= D. Chain algebras may only have generators in
// degrees <= D. Cochain algebras may also carry generators of degree D+1 so
// that differentials out of degree D are complete. Homology is certified in
// degrees <= D-1 only.

#include "rht/freealg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rht {

class QuasiFreeAlgebra;
using AlgebraPtr = std::shared_ptr<const QuasiFreeAlgebra>;

class QuasiFreeAlgebra {
public:
    /// `differential[i]` is d of the i-th generator in `Generators` order,
    /// written in the free algebra on `gens`.
    /// Throws ConnectivityError, DegreeError, CutoffError or NotAComplexError.
    QuasiFreeAlgebra(Flavor flavor, Generators gens, std::vector<Element> differential, int cutoff);

    const Flavor& flavor() const noexcept { return free_.flavor(); }
    const FreeAlgebra& free() const noexcept { return free_; }
    const Generators& generators() const noexcept { return free_.generators(); }
    std::size_t size() const noexcept { return generators().size(); }
    int cutoff() const noexcept { return cutoff_; }
    int d_degree() const noexcept { return flavor().differential_degree(); }

    const std::vector<Element>& differential() const noexcept { return d_; }
    const Element& d_of(int generator) const { return d_[generator]; }
    Element d(const Element& x) const { return free_.extend_as_derivation(d_, d_degree(), x); }
    Element generator(const std::string& name) const;

    /// Matrix of d from degree k to degree k + d_degree() in the bases of `free()`.
    Matrix differential_matrix(int k) const;
    /// Betti numbers for degrees lo..hi (the unit counts in degree 0 for
    /// unitary algebras). Throws CutoffError if hi > cutoff - 1.
    std::vector<std::size_t> homology_in_range(int lo, int hi) const;

    /// Largest degree in which homology is certified.
    int certified_homology() const noexcept { return cutoff_ - 1; }

private:
    FreeAlgebra free_;
    std::vector<Element> d_;
    int cutoff_;
};

/// Same flavor, cutoff, generators and differentials.
bool same_algebra(const QuasiFreeAlgebra& a, const QuasiFreeAlgebra& b);

bool check_minimal(const QuasiFreeAlgebra& A);
bool check_sparsely_generated(const QuasiFreeAlgebra& A);
/// Sub-algebra on generators of degree <= n. Throws NotClosedError if d leaves it.
AlgebraPtr truncate(const AlgebraPtr& A, int n);
/// Same generators up to the new (smaller or equal) cutoff.
AlgebraPtr recut(const AlgebraPtr& A, int cutoff);

/// Cycle representatives of a homology group in one degree, with a reducer
/// computing the class of any cycle.
class HomologyDegree {
public:
    HomologyDegree(const QuasiFreeAlgebra& A, int k);
    std::size_t dim() const noexcept { return reps_.size(); }
    const std::vector<Element>& representatives() const noexcept { return reps_; }
    /// Class coordinates of a cycle; throws NotAComplexError if x is not a cycle.
    Vector class_of(const Element& x) const;
    bool is_boundary(const Element& x) const;

private:
    const QuasiFreeAlgebra* A_;
    int k_;
    Matrix cycle_test_;
    Matrix span_;           // columns: boundary basis, then representatives
    std::size_t n_boundaries_ = 0;
    std::vector<Element> reps_;
};

class Morphism {
public:
    /// Throws FlavorError, CutoffError, DegreeError or MorphismError.
    Morphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element> images);
    static Morphism identity(const AlgebraPtr& A);
    /// Generator images by name; unnamed generators go to zero.
    static Morphism from_names(AlgebraPtr source, AlgebraPtr target,
                               const std::vector<std::pair<std::string, Element>>& images);

    const AlgebraPtr& source() const noexcept { return source_; }
    const AlgebraPtr& target() const noexcept { return target_; }
    const std::vector<Element>& images() const noexcept { return images_; }
    const Element& image(int generator) const { return images_[generator]; }

    Element apply(const Element& x) const;
    /// Matrix from source degree k to target degree k.
    Matrix matrix(int k) const;
    Matrix induced_on_homology(int k) const;
    /// Matrix on indecomposables (generators) in degree k.
    Matrix linear_part(int k) const;

    /// Restriction to a sub-algebra generated by some of the source generators.
    Morphism restrict_to(const AlgebraPtr& sub) const;

    bool is_isomorphism() const;
    /// Strict inverse of an isomorphism. Throws InversionError.
    Morphism inverse() const;

    friend bool operator==(const Morphism& a, const Morphism& b);

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<Element> images_;
};

/// f ∘ g  (apply g first).
Morphism compose(const Morphism& f, const Morphism& g);
bool is_quasi_iso_in_range(const Morphism& f, int lo, int hi);

/// Lift f: X -> B along a surjective quasi-isomorphism p: A -> B, producing
/// g: X -> A with p ∘ g = f. Throws PreconditionError if a step fails.
Morphism lift_along(const Morphism& f, const Morphism& p);

/// Same generator data viewed with another cutoff (source and target recut).
Morphism recut(const Morphism& f, int cutoff);

/// A (co)chain algebra given by a finite basis per degree, a differential and
/// a binary structure table (product for Com/Assoc, bracket for Lie). Entries
/// are exact only in degrees <= cutoff.
struct FiniteTypeAlgebra {
    Flavor flavor;
    int cutoff = 0;
    std::vector<Generator> basis;  // name and degree of each basis vector
    std::vector<std::vector<std::pair<int, Rational>>> d;  // d(e_i) = sum c e_j
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> product;

    int index(const std::string& name) const;
    std::vector<int> in_degree(int k) const;
    /// Throws NotAComplexError unless d² = 0 and d is a derivation of the table.
    void validate() const;
};

/// Degreewise basis of A in degrees 1..level (0 for a unitary algebra is
/// implicit) with its products and differential.
FiniteTypeAlgebra to_finite_type(const QuasiFreeAlgebra& A, int level);

} // namespace rht
