#include "rht/freealg.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <functional>

namespace rht {

std::string to_string(Operad op) {
    switch (op) {
    case Operad::Com: return "com";
    case Operad::Lie: return "lie";
    case Operad::Assoc: return "assoc";
    }
    return "?";
}

std::string to_string(Direction dir) { return dir == Direction::Chain ? "chain" : "cochain"; }

// ---------------------------------------------------------------- Element

Element Element::monomial(Word w, Rational c) {
    Element e;
    e.add(w, c);
    return e;
}

void Element::add(const Word& w, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (inserted) {
        it->second.canonicalize();  // callers may pass Rational(p, q) unreduced
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

Element& Element::operator*=(const Rational& s) {
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    Rational t = s;
    t.canonicalize();
    for (auto& [w, c] : terms_) c *= t;
    return *this;
}

Rational Element::linear_coefficient(int g) const {
    auto it = terms_.find(Word{g});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool Element::has_linear_part() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.size() == 1; });
}

std::size_t Element::min_length() const {
    std::size_t m = 0;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (first || w.size() < m) m = w.size();
        first = false;
    }
    return m;
}

// ------------------------------------------------------------- Generators

Generators::Generators(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::stable_sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
    });
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (!index_.emplace(gens_[i].name, static_cast<int>(i)).second)
            throw DegreeError("duplicate generator name '" + gens_[i].name + "'");
        if (gens_[i].degree < 1)
            throw ConnectivityError("generator '" + gens_[i].name + "' has degree " +
                                    std::to_string(gens_[i].degree) + " < 1");
    }
}

std::optional<int> Generators::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Generators::max_degree() const { return gens_.empty() ? 0 : gens_.back().degree; }

GradedVectorSpace Generators::as_space() const {
    GradedVectorSpace v;
    for (const auto& g : gens_) v.add(g.degree, g.name);
    return v;
}

// ------------------------------------------------------------ FreeAlgebra

FreeAlgebra::FreeAlgebra(Flavor flavor, Generators gens) : flavor_(flavor), gens_(std::move(gens)) {
    if (flavor_.operad == Operad::Lie) flavor_.unitary = false;
}

int FreeAlgebra::word_degree(const Word& w) const {
    int d = 0;
    for (int g : w) d += gens_[g].degree;
    return d;
}

std::optional<int> FreeAlgebra::degree(const Element& x) const {
    std::optional<int> d;
    for (const auto& [w, c] : x.terms()) {
        int wd = word_degree(w);
        if (d && *d != wd) throw DegreeError("element is not homogeneous");
        d = wd;
    }
    return d;
}

// Product of two sorted commutative words with the Koszul sign of the merge.
Element FreeAlgebra::com_times_word(const Word& a, const Word& b, const Rational& c) const {
    Word out;
    out.reserve(a.size() + b.size());
    int sign = 1;
    std::size_t i = 0, j = 0;
    // suffix parity of a: total degree of a[i..] mod 2
    std::vector<int> suffix(a.size() + 1, 0);
    for (std::size_t k = a.size(); k-- > 0;) suffix[k] = (suffix[k + 1] + gens_[a[k]].degree) & 1;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
            out.push_back(a[i++]);
        } else {
            if ((gens_[b[j]].degree & 1) && suffix[i]) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    for (std::size_t k = 1; k < out.size(); ++k)
        if (out[k] == out[k - 1] && (gens_[out[k]].degree & 1)) return Element{};
    return Element::monomial(std::move(out), sign * c);
}

Element FreeAlgebra::ambient_product(const Element& a, const Element& b) const {
    Element r;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            if (flavor_.tensor_words()) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add(w, ca * cb);
            } else {
                r += com_times_word(wa, wb, ca * cb);
            }
        }
    return r;
}

Element FreeAlgebra::bracket(const Element& a, const Element& b) const {
    if (!flavor_.tensor_words()) throw FlavorError("bracket requested in a graded-commutative algebra");
    Element r;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word ab = wa;
            ab.insert(ab.end(), wb.begin(), wb.end());
            Word ba = wb;
            ba.insert(ba.end(), wa.begin(), wa.end());
            r.add(ab, ca * cb);
            r.add(ba, -parity_sign(long(word_degree(wa)) * word_degree(wb)) * ca * cb);
        }
    return r;
}

Element FreeAlgebra::multiply(const Element& a, const Element& b) const {
    return flavor_.operad == Operad::Lie ? bracket(a, b) : ambient_product(a, b);
}

Element FreeAlgebra::extend_as_morphism(const std::vector<Element>& images, const FreeAlgebra& target,
                                        const Element& x) const {
    if (target.flavor_.operad != flavor_.operad)
        throw FlavorError("morphism between " + to_string(flavor_.operad) + " and " +
                          to_string(target.flavor_.operad) + " algebras");
    if (images.size() != gens_.size()) throw DimensionError("assignment does not cover every generator");
    Element r;
    for (const auto& [w, c] : x.terms()) {
        if (w.empty()) throw DegreeError("unit term in a reduced algebra element");
        Element prod = images[w[0]];
        for (std::size_t k = 1; k < w.size() && !prod.is_zero(); ++k)
            prod = target.ambient_product(prod, images[w[k]]);
        r += c * prod;
    }
    return r;
}

void FreeAlgebra::check_shift(const std::vector<Element>& images, int shift) const {
    if (images.size() != gens_.size()) throw DimensionError("assignment does not cover every generator");
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto d = degree(images[i]);
        if (d && *d != gens_[i].degree + shift)
            throw ShiftError("image of '" + gens_[i].name + "' has degree " + std::to_string(*d) +
                             ", expected " + std::to_string(gens_[i].degree + shift));
    }
}

Element FreeAlgebra::extend_as_derivation(const std::vector<Element>& images, int shift,
                                          const Element& x) const {
    if (images.size() != gens_.size()) throw DimensionError("assignment does not cover every generator");
    Element r;
    for (const auto& [w, c] : x.terms()) {
        int prefix_degree = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Element& di = images[w[i]];
            if (!di.is_zero()) {
                Element left = Element::monomial(Word(w.begin(), w.begin() + long(i)));
                Element right = Element::monomial(Word(w.begin() + long(i) + 1, w.end()));
                Element piece = di;
                if (i > 0) piece = ambient_product(left, piece);
                if (i + 1 < w.size()) piece = ambient_product(piece, right);
                r += (parity_sign(long(shift) * prefix_degree) * c) * piece;
            }
            prefix_degree += gens_[w[i]].degree;
        }
    }
    return r;
}

Element FreeAlgebra::right_normed_bracket(const Word& w) const {
    Element r = Element::monomial(Word{w.back()});
    for (std::size_t k = w.size() - 1; k-- > 0;) r = bracket(generator(w[k]), r);
    return r;
}

std::string FreeAlgebra::monomial_label(const Word& w) const {
    if (w.empty()) return "1";
    if (flavor_.operad == Operad::Lie) {
        std::string s = gens_[w.back()].name;
        for (std::size_t k = w.size() - 1; k-- > 0;) s = "[" + gens_[w[k]].name + "," + s + "]";
        return s;
    }
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += gens_[w[k]].name;
    }
    return s;
}

namespace {

// All words of total degree `degree`; commutative words are nondecreasing with
// odd letters used at most once.
void enumerate_words(const Generators& gens, int degree, bool commutative, std::vector<Word>& out) {
    Word cur;
    std::function<void(int, int)> rec = [&](int remaining, int start) {
        if (remaining == 0) {
            if (!cur.empty()) out.push_back(cur);
            return;
        }
        for (int g = commutative ? start : 0; g < int(gens.size()); ++g) {
            int d = gens[g].degree;
            if (d > remaining) break;
            if (commutative && !cur.empty() && cur.back() == g && (d & 1)) continue;
            cur.push_back(g);
            rec(remaining - d, g);
            cur.pop_back();
        }
    };
    rec(degree, 0);
}

// Reduce x against the pivots; returns the coordinates accumulated and leaves
// the residual in x.
Vector reduce(const std::map<Word, DegreeBasis::Pivot>& pivots, std::size_t dim, Element& x) {
    Vector coords(dim);
    auto it = x.terms().begin();
    while (it != x.terms().end()) {
        auto p = pivots.find(it->first);
        if (p == pivots.end()) {
            ++it;
            continue;
        }
        Word at = it->first;
        Rational f = it->second;
        x -= f * p->second.vector;
        for (std::size_t j = 0; j < dim && j < p->second.combination.size(); ++j)
            if (sgn(p->second.combination[j]) != 0) coords[j] += f * p->second.combination[j];
        it = x.terms().upper_bound(at);
    }
    return coords;
}

} // namespace

std::shared_ptr<DegreeBasis> FreeAlgebra::build_basis(int degree) const {
    auto b = std::make_shared<DegreeBasis>();
    b->degree = degree;
    if (degree < 1) return b;
    std::vector<Word> words;
    enumerate_words(gens_, degree, !flavor_.tensor_words(), words);
    std::stable_sort(words.begin(), words.end(), [](const Word& a, const Word& c) {
        return a.size() != c.size() ? a.size() < c.size() : a < c;
    });
    if (flavor_.operad != Operad::Lie) {
        for (const Word& w : words) {
            b->elements.push_back(Element::monomial(w));
            b->labels.push_back(monomial_label(w));
            b->source_words.push_back(w);
        }
        for (std::size_t j = 0; j < words.size(); ++j) {
            Vector comb(words.size());
            comb[j] = 1;
            b->pivots.emplace(words[j], DegreeBasis::Pivot{Element::monomial(words[j]), std::move(comb)});
        }
        return b;
    }
    // Lie: greedily keep right-normed brackets that are independent of the
    // ones already kept inside the tensor algebra.
    for (const Word& w : words) {
        Element e = right_normed_bracket(w);
        if (e.is_zero()) continue;
        Element residual = e;
        Vector coords = reduce(b->pivots, b->dim(), residual);
        if (residual.is_zero()) continue;
        std::size_t j = b->dim();
        b->elements.push_back(e);
        b->labels.push_back(monomial_label(w));
        b->source_words.push_back(w);
        // residual = e - sum coords_k * basis_k
        Vector comb(j + 1);
        for (std::size_t k = 0; k < j; ++k) comb[k] = -coords[k];
        comb[j] = 1;
        Rational lead = residual.terms().begin()->second;
        Word pivot = residual.terms().begin()->first;
        Rational inv = 1 / lead;
        residual *= inv;
        for (auto& q : comb) q *= inv;
        b->pivots.emplace(pivot, DegreeBasis::Pivot{std::move(residual), std::move(comb)});
    }
    return b;
}

const DegreeBasis& FreeAlgebra::basis(int degree) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->bases.find(degree);
    if (it != cache_->bases.end()) return *it->second;
    auto b = build_basis(degree);
    return *cache_->bases.emplace(degree, std::move(b)).first->second;
}

Vector FreeAlgebra::coordinates(const Element& x, int degree) const {
    const DegreeBasis& b = basis(degree);
    Element residual = x;
    Vector coords = reduce(b.pivots, b.dim(), residual);
    if (!residual.is_zero())
        throw DimensionError("element does not lie in the degree-" + std::to_string(degree) +
                             " component of the " + to_string(flavor_.operad) + " algebra");
    return coords;
}

Element FreeAlgebra::from_coordinates(const Vector& c, int degree) const {
    const DegreeBasis& b = basis(degree);
    if (c.size() != b.dim()) throw DimensionError("coordinate vector length mismatch");
    Element r;
    for (std::size_t j = 0; j < c.size(); ++j)
        if (sgn(c[j]) != 0) r += c[j] * b.elements[j];
    return r;
}

} // namespace rht
