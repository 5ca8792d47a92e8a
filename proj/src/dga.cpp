#include "rht/dga.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <set>

namespace rht {

bool same_algebra(const QuasiFreeAlgebra& a, const QuasiFreeAlgebra& b) {
    if (&a == &b) return true;
    if (!(a.flavor() == b.flavor()) || a.cutoff() != b.cutoff() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.generators()[i].name != b.generators()[i].name ||
            a.generators()[i].degree != b.generators()[i].degree)
            return false;
        if (!(a.d_of(int(i)) == b.d_of(int(i)))) return false;
    }
    return true;
}

namespace {

// Rewrite an element of `from` in the free algebra on a generator subset
// `to`, given the index map; returns nothing if a dropped generator appears.
std::optional<Element> reindex(const Element& x, const std::vector<int>& map) {
    Element r;
    for (const auto& [w, c] : x.terms()) {
        Word nw;
        nw.reserve(w.size());
        for (int g : w) {
            if (map[g] < 0) return std::nullopt;
            nw.push_back(map[g]);
        }
        r.add(nw, c);
    }
    return r;
}

AlgebraPtr sub_algebra(const AlgebraPtr& A, int max_gen_degree, int cutoff) {
    std::vector<Generator> kept;
    std::vector<int> map(A->size(), -1);
    for (std::size_t i = 0; i < A->size(); ++i)
        if (A->generators()[i].degree <= max_gen_degree) {
            map[i] = int(kept.size());
            kept.push_back(A->generators()[i]);
        }
    std::vector<Element> d;
    for (std::size_t i = 0; i < A->size(); ++i) {
        if (map[i] < 0) continue;
        auto r = reindex(A->d_of(int(i)), map);
        if (!r)
            throw NotClosedError("d(" + A->generators()[i].name + ") involves a generator of degree > " +
                                 std::to_string(max_gen_degree));
        d.push_back(std::move(*r));
    }
    return std::make_shared<QuasiFreeAlgebra>(A->flavor(), Generators(std::move(kept)), std::move(d), cutoff);
}

} // namespace

// ------------------------------------------------------- QuasiFreeAlgebra

QuasiFreeAlgebra::QuasiFreeAlgebra(Flavor flavor, Generators gens, std::vector<Element> differential,
                                   int cutoff)
    : free_(flavor, std::move(gens)), d_(std::move(differential)), cutoff_(cutoff) {
    const Generators& g = free_.generators();
    if (d_.size() != g.size()) throw DimensionError("differential does not cover every generator");
    bool cochain = flavor.direction == Direction::Cochain;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (cochain && g[i].degree < 2)
            throw ConnectivityError("cochain generator '" + g[i].name + "' has degree " +
                                    std::to_string(g[i].degree) + " < 2");
        int limit = cochain ? cutoff_ + 1 : cutoff_;
        if (g[i].degree > limit)
            throw CutoffError("generator '" + g[i].name + "' of degree " + std::to_string(g[i].degree) +
                              " lies beyond cutoff " + std::to_string(cutoff_));
        for (const auto& [w, c] : d_[i].terms())
            for (int letter : w)
                if (letter < 0 || letter >= int(g.size())) throw DimensionError("differential uses unknown generator");
        auto deg = free_.degree(d_[i]);
        if (deg && *deg != g[i].degree + d_degree())
            throw DegreeError("d(" + g[i].name + ") has degree " + std::to_string(*deg) + ", expected " +
                              std::to_string(g[i].degree + d_degree()));
        if (deg && flavor.operad == Operad::Lie) free_.coordinates(d_[i], *deg);
    }
    // d² is only honest where it lands in degrees <= cutoff + 1
    for (std::size_t i = 0; i < g.size(); ++i)
        if ((!cochain || g[i].degree <= cutoff_ - 1) && !d(d_[i]).is_zero()) throw NotAComplexError("d² is nonzero on generator '" + g[i].name + "'");
}

Element QuasiFreeAlgebra::generator(const std::string& name) const {
    auto i = generators().index(name);
    if (!i) throw DimensionError("unknown generator '" + name + "'");
    return free_.generator(*i);
}

Matrix QuasiFreeAlgebra::differential_matrix(int k) const {
    const DegreeBasis& src = free_.basis(k);
    int t = k + d_degree();
    std::size_t rows = free_.dim(t);
    Matrix m(rows, src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
        Element y = d(src.elements[j]);
        if (y.is_zero()) continue;
        m.set_column(j, free_.coordinates(y, t));
    }
    return m;
}

std::vector<std::size_t> QuasiFreeAlgebra::homology_in_range(int lo, int hi) const {
    if (hi > certified_homology())
        throw CutoffError("homology requested up to degree " + std::to_string(hi) + " but only degrees <= " +
                          std::to_string(certified_homology()) + " are certified");
    std::vector<std::size_t> out;
    for (int k = lo; k <= hi; ++k) {
        if (k < 0) {
            out.push_back(0);
        } else if (k == 0) {
            out.push_back(flavor().unitary ? 1 : 0);
        } else {
            Matrix in = differential_matrix(k - d_degree());
            Matrix outm = differential_matrix(k);
            out.push_back(homology_dims(in, outm));
        }
    }
    return out;
}

bool check_minimal(const QuasiFreeAlgebra& A) {
    return std::none_of(A.differential().begin(), A.differential().end(),
                        [](const Element& e) { return e.has_linear_part(); });
}

bool check_sparsely_generated(const QuasiFreeAlgebra& A) {
    std::set<int> degs;
    for (const auto& g : A.generators().all()) degs.insert(g.degree);
    for (int k : degs)
        if (degs.count(k + 1)) return false;
    return true;
}

AlgebraPtr truncate(const AlgebraPtr& A, int n) {
    if (n < 0) throw DegreeError("truncation degree must be >= 0");
    return sub_algebra(A, n, A->cutoff());
}

AlgebraPtr recut(const AlgebraPtr& A, int cutoff) {
    if (cutoff > A->cutoff())
        throw CutoffError("cannot raise cutoff from " + std::to_string(A->cutoff()) + " to " +
                          std::to_string(cutoff));
    if (cutoff == A->cutoff()) return A;
    int top = A->flavor().direction == Direction::Cochain ? cutoff + 1 : cutoff;
    return sub_algebra(A, top, cutoff);
}

// --------------------------------------------------------- HomologyDegree

HomologyDegree::HomologyDegree(const QuasiFreeAlgebra& A, int k) : A_(&A), k_(k) {
    if (k > A.certified_homology())
        throw CutoffError("homology in degree " + std::to_string(k) + " is not certified");
    cycle_test_ = A.differential_matrix(k);
    Matrix in = A.differential_matrix(k - A.d_degree());
    std::size_t n = A.free().dim(k);
    std::vector<Vector> cols;
    for (std::size_t j : rref(in).pivots) cols.push_back(in.column(j));
    n_boundaries_ = cols.size();
    auto z = kernel(cycle_test_);
    // candidate columns: boundaries then cycles; pivots among cycles give reps
    std::vector<Vector> all = cols;
    all.insert(all.end(), z.begin(), z.end());
    Matrix m = Matrix::from_columns(n, all);
    for (std::size_t p : n > 0 ? rref(m).pivots : std::vector<std::size_t>{})
        if (p >= n_boundaries_) {
            cols.push_back(all[p]);
            reps_.push_back(A.free().from_coordinates(all[p], k));
        }
    span_ = Matrix::from_columns(n, cols);
}

Vector HomologyDegree::class_of(const Element& x) const {
    Vector c = A_->free().coordinates(x, k_);
    if (!is_zero(cycle_test_ * c)) throw NotAComplexError("element is not a cycle");
    auto s = solve(span_, c);
    if (!s) throw NotAComplexError("cycle outside the computed span");
    return Vector(s->begin() + long(n_boundaries_), s->end());
}

bool HomologyDegree::is_boundary(const Element& x) const { return is_zero(class_of(x)); }

// --------------------------------------------------------------- Morphism

Morphism::Morphism(AlgebraPtr source, AlgebraPtr target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    const auto& fs = source_->flavor();
    const auto& ft = target_->flavor();
    if (fs.operad != ft.operad || fs.direction != ft.direction)
        throw FlavorError("morphism between " + to_string(fs.operad) + "/" + to_string(fs.direction) + " and " +
                          to_string(ft.operad) + "/" + to_string(ft.direction) + " algebras");
    if (source_->cutoff() != target_->cutoff())
        throw CutoffError("source cutoff " + std::to_string(source_->cutoff()) + " differs from target cutoff " +
                          std::to_string(target_->cutoff()));
    if (images_.size() != source_->size()) throw DimensionError("assignment does not cover every generator");
    const auto& g = source_->generators();
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const auto& [w, c] : images_[i].terms())
            for (int letter : w)
                if (letter < 0 || letter >= int(target_->size())) throw DimensionError("image uses unknown generator");
        auto deg = target_->free().degree(images_[i]);
        if (deg && *deg != g[i].degree)
            throw DegreeError("image of '" + g[i].name + "' has degree " + std::to_string(*deg) + ", expected " +
                              std::to_string(g[i].degree));
        if (deg && ft.operad == Operad::Lie) target_->free().coordinates(images_[i], *deg);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].degree > source_->cutoff()) continue;
        if (!(apply(source_->d_of(int(i))) == target_->d(images_[i])))
            throw MorphismError("f(d " + g[i].name + ") != d f(" + g[i].name + ")");
    }
}

Morphism Morphism::identity(const AlgebraPtr& A) {
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < A->size(); ++i) imgs.push_back(A->free().generator(int(i)));
    return Morphism(A, A, std::move(imgs));
}

Morphism Morphism::from_names(AlgebraPtr source, AlgebraPtr target,
                              const std::vector<std::pair<std::string, Element>>& images) {
    std::vector<Element> imgs(source->size());
    for (const auto& [name, e] : images) {
        auto i = source->generators().index(name);
        if (!i) throw DimensionError("unknown source generator '" + name + "'");
        imgs[*i] = e;
    }
    return Morphism(std::move(source), std::move(target), std::move(imgs));
}

Element Morphism::apply(const Element& x) const {
    return source_->free().extend_as_morphism(images_, target_->free(), x);
}

Matrix Morphism::matrix(int k) const {
    const DegreeBasis& b = source_->free().basis(k);
    Matrix m(target_->free().dim(k), b.dim());
    for (std::size_t j = 0; j < b.dim(); ++j) {
        Element y = apply(b.elements[j]);
        if (!y.is_zero()) m.set_column(j, target_->free().coordinates(y, k));
    }
    return m;
}

Matrix Morphism::induced_on_homology(int k) const {
    HomologyDegree hs(*source_, k), ht(*target_, k);
    Matrix m(ht.dim(), hs.dim());
    for (std::size_t j = 0; j < hs.dim(); ++j) m.set_column(j, ht.class_of(apply(hs.representatives()[j])));
    return m;
}

Matrix Morphism::linear_part(int k) const {
    std::vector<int> src, tgt;
    for (std::size_t i = 0; i < source_->size(); ++i)
        if (source_->generators()[i].degree == k) src.push_back(int(i));
    for (std::size_t i = 0; i < target_->size(); ++i)
        if (target_->generators()[i].degree == k) tgt.push_back(int(i));
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (std::size_t r = 0; r < tgt.size(); ++r) m(r, j) = images_[src[j]].linear_coefficient(tgt[r]);
    return m;
}

Morphism Morphism::restrict_to(const AlgebraPtr& sub) const {
    std::vector<Element> imgs;
    for (const auto& g : sub->generators().all()) {
        auto i = source_->generators().index(g.name);
        if (!i || source_->generators()[*i].degree != g.degree)
            throw DimensionError("'" + g.name + "' is not a generator of the source");
        imgs.push_back(images_[*i]);
    }
    return Morphism(sub, target_, std::move(imgs));
}

bool Morphism::is_isomorphism() const {
    std::set<int> degs;
    for (const auto& g : source_->generators().all()) degs.insert(g.degree);
    for (const auto& g : target_->generators().all()) degs.insert(g.degree);
    for (int k : degs) {
        Matrix m = linear_part(k);
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
    return true;
}

Morphism Morphism::inverse() const {
    if (!is_isomorphism()) throw InversionError("morphism is not invertible on generators");
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < target_->size(); ++i) {
        int k = target_->generators()[i].degree;
        Matrix m = matrix(k);
        auto x = solve(m, target_->free().coordinates(target_->free().generator(int(i)), k));
        if (!x) throw InversionError("degree " + std::to_string(k) + " block is singular");
        imgs.push_back(source_->free().from_coordinates(*x, k));
    }
    return Morphism(target_, source_, std::move(imgs));
}

bool operator==(const Morphism& a, const Morphism& b) {
    return same_algebra(*a.source_, *b.source_) && same_algebra(*a.target_, *b.target_) && a.images_ == b.images_;
}

Morphism compose(const Morphism& f, const Morphism& g) {
    if (!same_algebra(*g.target(), *f.source())) throw MorphismError("morphisms are not composable");
    std::vector<Element> imgs;
    for (const auto& e : g.images()) imgs.push_back(f.apply(e));
    return Morphism(g.source(), f.target(), std::move(imgs));
}

bool is_quasi_iso_in_range(const Morphism& f, int lo, int hi) {
    for (int k = std::max(lo, 1); k <= hi; ++k) {
        Matrix m = f.induced_on_homology(k);
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
    return true;
}

Morphism lift_along(const Morphism& f, const Morphism& p) {
    if (!same_algebra(*f.target(), *p.target())) throw PreconditionError("lift: targets differ");
    const AlgebraPtr& X = f.source();
    const AlgebraPtr& A = p.source();
    if (X->flavor().direction == Direction::Cochain && !check_minimal(*X))
        throw PreconditionError("lift: cochain source must be minimal");
    std::vector<Element> imgs(X->size());
    for (std::size_t i = 0; i < X->size(); ++i) {
        int k = X->generators()[i].degree;
        Matrix P = p.matrix(k);
        auto a0c = solve(P, p.target()->free().coordinates(f.image(int(i)), k));
        if (!a0c) throw PreconditionError("lift: map is not surjective in degree " + std::to_string(k));
        Element a0 = A->free().from_coordinates(*a0c, k);
        Element gdx = X->free().extend_as_morphism(imgs, A->free(), X->d_of(int(i)));
        Element e = gdx - A->d(a0);
        // top cochain generators have no honest differential to match
        bool top = X->flavor().direction == Direction::Cochain && k > X->cutoff();
        if (!top && !e.is_zero()) {
            int t = k + A->d_degree();
            auto K = kernel(P);
            Matrix DK = A->differential_matrix(k) * Matrix::from_columns(P.cols(), K);
            auto c = solve(DK, A->free().coordinates(e, t));
            if (!c)
                throw PreconditionError("lift: kernel is not acyclic in degree " + std::to_string(t) +
                                        " (not a quasi-isomorphism)");
            for (std::size_t j = 0; j < K.size(); ++j)
                if (sgn((*c)[j]) != 0) a0 += (*c)[j] * A->free().from_coordinates(K[j], k);
        }
        imgs[i] = std::move(a0);
    }
    return Morphism(X, A, std::move(imgs));
}

Morphism recut(const Morphism& f, int cutoff) {
    AlgebraPtr s = recut(f.source(), cutoff), t = recut(f.target(), cutoff);
    std::vector<int> map(f.target()->size(), -1);
    for (std::size_t i = 0; i < t->size(); ++i) map[*f.target()->generators().index(t->generators()[i].name)] = int(i);
    std::vector<Element> imgs;
    for (const auto& g : s->generators().all()) {
        auto r = reindex(f.image(*f.source()->generators().index(g.name)), map);
        if (!r) throw NotClosedError("image of '" + g.name + "' leaves the recut target");
        imgs.push_back(std::move(*r));
    }
    return Morphism(s, t, std::move(imgs));
}

// ------------------------------------------------------ FiniteTypeAlgebra

int FiniteTypeAlgebra::index(const std::string& name) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].name == name) return int(i);
    throw DimensionError("unknown basis element '" + name + "'");
}

std::vector<int> FiniteTypeAlgebra::in_degree(int k) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].degree == k) out.push_back(int(i));
    return out;
}

namespace {

using Sparse = std::map<int, Rational>;

void accumulate(Sparse& acc, const std::vector<std::pair<int, Rational>>& v, const Rational& c) {
    for (const auto& [j, q] : v) {
        acc[j] += c * q;
        if (sgn(acc[j]) == 0) acc.erase(j);
    }
}

} // namespace

void FiniteTypeAlgebra::validate() const {
    int dd = flavor.differential_degree();
    if (d.size() != basis.size()) throw DimensionError("differential table does not cover the basis");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (const auto& [j, q] : d[i])
            if (basis[j].degree != basis[i].degree + dd)
                throw DegreeError("d(" + basis[i].name + ") has a term of the wrong degree");
        Sparse dd2;
        for (const auto& [j, q] : d[i]) accumulate(dd2, d[j], q);
        if (!dd2.empty()) throw NotAComplexError("d² is nonzero on '" + basis[i].name + "'");
    }
    auto prod = [&](int a, int b) -> const std::vector<std::pair<int, Rational>>& {
        static const std::vector<std::pair<int, Rational>> none;
        auto it = product.find({a, b});
        return it == product.end() ? none : it->second;
    };
    for (const auto& [ab, v] : product) {
        auto [a, b] = ab;
        for (const auto& [j, q] : v)
            if (basis[j].degree != basis[a].degree + basis[b].degree)
                throw DegreeError("product " + basis[a].name + "*" + basis[b].name + " has a term of the wrong degree");
    }
    // Leibniz on every pair whose terms all stay within the cutoff.
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            int top = basis[a].degree + basis[b].degree + std::max(dd, 0);
            if (top > cutoff) continue;
            Sparse lhs, rhs;
            for (const auto& [j, q] : prod(int(a), int(b))) accumulate(lhs, d[j], q);
            for (const auto& [j, q] : d[a]) accumulate(rhs, prod(j, int(b)), q);
            Rational s = parity_sign(basis[a].degree);
            for (const auto& [j, q] : d[b]) accumulate(rhs, prod(int(a), j), s * q);
            if (lhs != rhs)
                throw NotAComplexError("d is not a derivation on " + basis[a].name + ", " + basis[b].name);
        }
}

FiniteTypeAlgebra to_finite_type(const QuasiFreeAlgebra& A, int level) {
    if (level > A.cutoff()) throw CutoffError("level beyond the algebra cutoff");
    FiniteTypeAlgebra F;
    F.flavor = A.flavor();
    F.cutoff = level;
    std::map<int, int> offset;
    for (int k = 1; k <= level; ++k) {
        offset[k] = int(F.basis.size());
        for (const auto& label : A.free().basis(k).labels) F.basis.push_back({label, k});
    }
    F.d.resize(F.basis.size());
    for (int k = 1; k <= level; ++k) {
        int t = k + A.d_degree();
        if (t < 1 || t > level) continue;
        Matrix m = A.differential_matrix(k);
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t r = 0; r < m.rows(); ++r)
                if (sgn(m(r, j)) != 0) F.d[offset[k] + j].push_back({offset[t] + int(r), m(r, j)});
    }
    for (int p = 1; p <= level; ++p)
        for (int q = 1; p + q <= level; ++q) {
            const auto& bp = A.free().basis(p);
            const auto& bq = A.free().basis(q);
            for (std::size_t i = 0; i < bp.dim(); ++i)
                for (std::size_t j = 0; j < bq.dim(); ++j) {
                    Element y = A.free().multiply(bp.elements[i], bq.elements[j]);
                    if (y.is_zero()) continue;
                    Vector c = A.free().coordinates(y, p + q);
                    std::vector<std::pair<int, Rational>> v;
                    for (std::size_t r = 0; r < c.size(); ++r)
                        if (sgn(c[r]) != 0) v.push_back({offset[p + q] + int(r), c[r]});
                    F.product[{offset[p] + int(i), offset[q] + int(j)}] = std::move(v);
                }
        }
    return F;
}

} // namespace rht
