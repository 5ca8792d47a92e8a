#pragma once
// Free graded-commutative, free graded Lie and free associative algebras on a
// finite graded generator set.
//
// Sign convention (shared by every module): all signs are Koszul signs for
// the total degree, i.e. moving a homogeneous x past y costs (-1)^{|x||y|}.
// A free Lie algebra is realized inside the tensor algebra on the same
// generators through [a,b] = a⊗b - (-1)^{|a||b|} b⊗a, so Lie elements are
// stored as combinations of tensor words. Graded-commutative monomials are
// stored as generator-index sequences sorted by generator order.

#include "rht/exactlin.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rht {

enum class Operad { Com, Lie, Assoc };
enum class Direction { Chain, Cochain };

struct Flavor {
    Operad operad = Operad::Com;
    Direction direction = Direction::Cochain;
    bool unitary = false;

    /// Degree of the differential: -1 for chain, +1 for cochain algebras.
    int differential_degree() const { return direction == Direction::Chain ? -1 : 1; }
    /// Lie and associative algebras share the tensor-word representation.
    bool tensor_words() const { return operad != Operad::Com; }

    friend bool operator==(const Flavor&, const Flavor&) = default;
};

std::string to_string(Operad op);
std::string to_string(Direction dir);

using Word = std::vector<int>;

/// Exact-rational combination of monomials. Zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<Word, Rational>;

    Element() = default;
    static Element monomial(Word w, Rational c = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add(const Word& w, const Rational& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Rational& s);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& s, Element a) { return a *= s; }
    Element operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

    /// Coefficient of the single-letter word on generator `g`.
    Rational linear_coefficient(int g) const;
    /// True if some monomial has length 1.
    bool has_linear_part() const;
    /// Smallest word length over all monomials (0 for the zero element).
    std::size_t min_length() const;

private:
    Terms terms_;
};

struct Generator {
    std::string name;
    int degree;
};

/// Ordered degree-indexed basis of a generator space, sorted by (degree, name).
class Generators {
public:
    Generators() = default;
    explicit Generators(std::vector<Generator> gens);

    std::size_t size() const noexcept { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<Generator>& all() const noexcept { return gens_; }
    std::optional<int> index(const std::string& name) const;
    int max_degree() const;
    GradedVectorSpace as_space() const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
};

/// A basis of one degree of a free algebra, with a reducer that expresses any
/// element of that degree in the basis.
struct DegreeBasis {
    int degree = 0;
    std::vector<Element> elements;
    std::vector<std::string> labels;
    std::vector<Word> source_words;  // word each basis element was generated from

    // Reduction data: pivot word -> (reduced vector, its expression in the basis).
    struct Pivot {
        Element vector;
        Vector combination;
    };
    std::map<Word, Pivot> pivots;

    std::size_t dim() const noexcept { return elements.size(); }
};

class FreeAlgebra {
public:
    FreeAlgebra() = default;
    FreeAlgebra(Flavor flavor, Generators gens);

    const Flavor& flavor() const noexcept { return flavor_; }
    const Generators& generators() const noexcept { return gens_; }

    int word_degree(const Word& w) const;
    /// Degree of a homogeneous element; nothing for zero. Throws DegreeError on
    /// inhomogeneous input.
    std::optional<int> degree(const Element& x) const;

    Element generator(int i) const { return Element::monomial(Word{i}); }

    /// Product in the ambient associative algebra: graded-commutative product
    /// for Com, concatenation for Lie and Assoc.
    Element ambient_product(const Element& a, const Element& b) const;
    /// Structure product of the flavor: Com product, Lie bracket, Assoc product.
    Element multiply(const Element& a, const Element& b) const;
    Element bracket(const Element& a, const Element& b) const;

    /// Image of x under the algebra map determined by generator images, which
    /// live in `target` (same operad). Throws FlavorError on operad mismatch.
    Element extend_as_morphism(const std::vector<Element>& images, const FreeAlgebra& target,
                               const Element& x) const;
    /// Degree-`shift` derivation determined by generator images, applied to x.
    Element extend_as_derivation(const std::vector<Element>& images, int shift, const Element& x) const;
    /// Throws ShiftError unless every nonzero image has degree |v| + shift.
    void check_shift(const std::vector<Element>& images, int shift) const;

    /// Linearly independent spanning set of the degree-d component (cached).
    const DegreeBasis& basis(int degree) const;
    std::size_t dim(int degree) const { return basis(degree).dim(); }
    /// Coordinates of a homogeneous element of the given degree. Throws
    /// DimensionError if x is not in the span (e.g. a non-Lie tensor).
    Vector coordinates(const Element& x, int degree) const;
    Element from_coordinates(const Vector& c, int degree) const;

    std::string monomial_label(const Word& w) const;

private:
    Element right_normed_bracket(const Word& w) const;
    std::shared_ptr<DegreeBasis> build_basis(int degree) const;
    Element com_times_word(const Word& a, const Word& b, const Rational& c) const;

    Flavor flavor_;
    Generators gens_;
    struct Cache {
        std::mutex mutex;
        std::map<int, std::shared_ptr<DegreeBasis>> bases;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// (-1)^n
inline int parity_sign(long n) { return (n % 2 == 0) ? 1 : -1; }

} // namespace rht
