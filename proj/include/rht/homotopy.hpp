#pragma once
// Homotopies h: A -> B ⊗ Λ(t,dt) between morphisms of quasi-free algebras.
//
// Convention: on a generator v,
//     h(v) = Σ_i α_i(v) t^i + (-1)^{|v|} β_i(v) t^i dt,
// with elements of B written to the left of forms, dt of degree equal to the
// degree of d, d(t^i) = i t^{i-1} dt and
//     (b ⊗ ω)(b' ⊗ ω') = (-1)^{|ω||b'|} bb' ⊗ ωω',
//     d(b ⊗ ω) = db ⊗ ω + (-1)^{|b|} b ⊗ dω.
// With this placement h is a chain map exactly when every α_i commutes with d
// and -(i+1) α_{i+1} = d β_i + β_i d. β_i(x) on a product x is read off the
// t^i dt coefficient of h(x) with the same sign (-1)^{|x|}.

#include "rht/dga.hpp"
#include "rht/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Element of B ⊗ Λ(t,dt): Σ poly[i] t^i + Σ dt[i] t^i dt.
struct Form {
    std::map<int, Element> poly;
    std::map<int, Element> dt;

    bool is_zero() const;
    friend bool operator==(const Form& a, const Form& b);
};

/// Raised when a map or homotopy cannot be extended over a generator. The
/// payload is the cycle whose class obstructs the extension.
class ObstructionError : public Error {
public:
    ObstructionError(std::string generator, int degree, Element cocycle, const std::string& printed)
        : Error("ObstructionError", "obstruction at generator '" + generator + "' (degree " +
                                        std::to_string(degree) + "): cocycle " + printed + " is not a boundary"),
          generator_(std::move(generator)), degree_(degree), cocycle_(std::move(cocycle)) {}
    const std::string& generator() const noexcept { return generator_; }
    int degree() const noexcept { return degree_; }
    const Element& cocycle() const noexcept { return cocycle_; }

private:
    std::string generator_;
    int degree_;
    Element cocycle_;
};

class Homotopy {
public:
    /// betas[i][v] = β_i(v) for source generators v. Throws DegreeError,
    /// DimensionError or MalformedHomotopyError.
    Homotopy(Morphism alpha0, std::vector<std::vector<Element>> betas);
    static Homotopy constant(const Morphism& f);

    const AlgebraPtr& source() const noexcept { return alpha0_.source(); }
    const AlgebraPtr& target() const noexcept { return alpha0_.target(); }
    const Morphism& alpha0() const noexcept { return alpha0_; }
    const std::vector<std::vector<Element>>& betas() const noexcept { return betas_; }

    /// h(x) for any element of the source.
    Form apply(const Element& x) const;
    const Form& on_generator(int v) const { return forms_[v]; }
    /// α_i(x) and β_i(x) read off h(x).
    Element alpha(int i, const Element& x) const;
    Element beta(int i, const Element& x) const;
    /// Largest i with α_i nonzero on some generator.
    int top_alpha() const;

    /// (ev_0, ev_1) = (α_0, Σ α_i). Throws MalformedHomotopyError if the end
    /// map fails the chain-map condition.
    std::pair<Morphism, Morphism> endpoints() const;
    /// Generator assignment of Σ α_i (unchecked).
    std::vector<Element> end_images() const;

    Homotopy restrict_to(const AlgebraPtr& sub) const;

private:
    void build();

    Morphism alpha0_;
    std::vector<std::vector<Element>> betas_;
    std::vector<Form> forms_;
};

/// Form algebra operations in the target of a homotopy.
Form form_product(const QuasiFreeAlgebra& B, const Form& a, const Form& b);
Form form_differential(const QuasiFreeAlgebra& B, const Form& a);

struct Verification {
    bool ok = true;
    std::string generator;  // first failing generator
    std::string detail;
};

/// Checks D(h(v)) = h(dv) for every source generator of degree <= cutoff,
/// that both endpoints are morphisms and, if given, that ev_1 agrees with the
/// claimed end map on those generators.
Verification verify_homotopy(const Homotopy& h, const std::vector<Element>* claimed_end = nullptr);

/// Generator-by-generator extension of h_n (on a truncation of the source of f_next)
/// to a homotopy between f_next and g_next. New generators get α_0 = f,
/// β_0 = z with dz = f(v) - g(v) - Σ_i β_i(dv)/(i+1) and β_{i>=1} = 0.
/// Throws PreconditionError on endpoint mismatch and ObstructionError if
/// some z does not exist.
Homotopy extend_homotopy(const Homotopy& h_n, const Morphism& f_next, const Morphism& g_next);

struct MapExtension {
    Morphism map;
    /// For each new generator, dim ker d_B in its degree (the freedom in the
    /// choice of image).
    std::vector<std::pair<std::string, std::size_t>> freedom;
};

/// Extends f_prev (defined on a truncation of `next`) over the remaining
/// generators of `next` by solving d_B b = f(dv). Throws ObstructionError.
MapExtension extend_map(const Morphism& f_prev, const AlgebraPtr& next);

enum class Decision { Yes, No, Unknown };
std::string to_string(Decision d);

struct HomotopicResult {
    Decision decision = Decision::Unknown;
    std::optional<Homotopy> certificate;
    std::string reason;
};

/// Three-valued homotopy test. A certificate is returned for Yes; No is only
/// returned when induced maps on homology differ. Throws HypothesisError if
/// no decision is reached and the homology of the target cannot be shown to
/// vanish near the top of the certified range.
HomotopicResult homotopic(const Morphism& f, const Morphism& g);

struct IsoExtension {
    Morphism map;
    Morphism inverse;
};
/// Extends an isomorphism on a truncation to `next` and checks that the
/// extension is again an isomorphism. Throws PreconditionError if f_n is not
/// invertible and InversionError if the extension is not.
IsoExtension extend_iso(const Morphism& f_n, const AlgebraPtr& next);

/// For a homotopy A_n -> A ⊗ Λ(t,dt) whose target A is a sparsely generated
/// chain algebra, the same homotopy with target A_n. Throws SparsenessError
/// for non-sparse targets or images escaping A_n.
Homotopy identify_in_truncation(const Homotopy& h, const AlgebraPtr& A_n);

/// Serialized homotopy plus the end map it claims to reach.
struct HomotopyCertificate {
    Homotopy homotopy;
    std::vector<Element> end;
};

/// Text form: `alpha0 <gen> = <expr>`, `beta <i> <gen> = <expr>` and
/// `end <gen> = <expr>` lines after a `homotopy` header.
std::string print_homotopy(const Homotopy& h);
HomotopyCertificate parse_homotopy(const std::string& text, const AlgebraPtr& source, const AlgebraPtr& target);

} // namespace rht
