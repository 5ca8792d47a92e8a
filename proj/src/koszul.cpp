#include "rht/koszul.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace rht {

namespace {

std::string padded(int j, std::size_t count) {
    std::string s = std::to_string(j);
    std::size_t width = std::to_string(count).size();
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

// Quasi-free algebra on one generator per basis vector of `in` of degree in
// [1, top], shifted by `shift`, with the dual differential.
KoszulDual build_dual(const FiniteTypeAlgebra& in, Flavor out, int shift, int top, int cutoff,
                      const std::string& prefix) {
    in.validate();
    KoszulDual K;
    K.input = in;
    std::map<int, std::size_t> per_degree;
    std::vector<int> used;
    for (std::size_t a = 0; a < in.basis.size(); ++a) {
        int k = in.basis[a].degree;
        if (k < 1) throw ConnectivityError("basis element '" + in.basis[a].name + "' has degree < 1");
        if (k <= top) {
            used.push_back(int(a));
            ++per_degree[k];
        }
    }
    std::vector<Generator> gens;
    std::vector<std::string> names(in.basis.size());
    std::map<int, int> counter;
    for (int a : used) {
        int k = in.basis[a].degree;
        names[a] = prefix + std::to_string(k + shift) + "_" + padded(++counter[k], per_degree[k]);
        gens.push_back({names[a], k + shift});
    }
    Generators G(gens);  // throws ConnectivityError on degree < 1
    FreeAlgebra F(out, G);
    K.generator_of_basis.assign(in.basis.size(), -1);
    K.basis_of_generator.assign(G.size(), -1);
    for (int a : used) {
        int g = *G.index(names[a]);
        K.generator_of_basis[a] = g;
        K.basis_of_generator[g] = a;
    }
    Rational half = out.operad == Operad::Assoc ? Rational(1) : Rational(1, 2);
    std::vector<Element> d(G.size());
    for (int a : used) {
        for (const auto& [c, q] : in.d[a]) {
            int gc = K.generator_of_basis[c];
            if (gc < 0) continue;
            d[gc] -= q * F.generator(K.generator_of_basis[a]);
        }
    }
    for (const auto& [ab, v] : in.product) {
        auto [a, b] = ab;
        int ga = K.generator_of_basis[a], gb = K.generator_of_basis[b];
        if (ga < 0 || gb < 0) continue;
        Element wab;
        bool have = false;
        for (const auto& [c, q] : v) {
            int gc = K.generator_of_basis[c];
            if (gc < 0) continue;
            if (!have) {
                wab = F.multiply(F.generator(ga), F.generator(gb));
                have = true;
            }
            Rational s = half * q * parity_sign(in.basis[a].degree);
            d[gc] += s * wab;
        }
    }
    K.algebra = std::make_shared<QuasiFreeAlgebra>(out, G, std::move(d), cutoff);
    return K;
}

} // namespace

KoszulDual ce_cochains(const FiniteTypeAlgebra& g) {
    if (g.flavor.direction != Direction::Chain || g.flavor.operad == Operad::Com)
        throw FlavorError("ce_cochains expects a chain Lie or associative algebra");
    Flavor out{g.flavor.operad == Operad::Lie ? Operad::Com : Operad::Assoc, Direction::Cochain,
               g.flavor.operad == Operad::Lie};
    return build_dual(g, out, 1, g.cutoff, g.cutoff, "w");
}

KoszulDual ce_cochains(const AlgebraPtr& g) {
    KoszulDual K = ce_cochains(to_finite_type(*g, g->cutoff()));
    K.source = g;
    return K;
}

KoszulDual quillen_L(const FiniteTypeAlgebra& A) {
    if (A.flavor.direction != Direction::Cochain || A.flavor.operad == Operad::Lie)
        throw FlavorError("quillen_L expects a cochain commutative or associative algebra");
    if (A.cutoff < 2) throw CutoffError("quillen_L needs cutoff >= 2");
    Flavor out{A.flavor.operad == Operad::Com ? Operad::Lie : Operad::Assoc, Direction::Chain, false};
    for (const auto& b : A.basis)
        if (b.degree == 1) throw ConnectivityError("basis element '" + b.name + "' of degree 1");
    return build_dual(A, out, -1, A.cutoff, A.cutoff - 1, "x");
}

KoszulDual quillen_L(const AlgebraPtr& A) {
    KoszulDual K = quillen_L(to_finite_type(*A, A->cutoff()));
    K.source = A;
    return K;
}

namespace {

void require_source(const KoszulDual& K, const AlgebraPtr& X, const char* what) {
    if (!K.source || !same_algebra(*K.source, *X))
        throw PreconditionError(std::string(what) + ": dual was not built from the expected algebra");
}

// Dual of a linear map given on basis elements (phi returns image, sign, degree): generator c
// of `to` (dual of target basis e'_c) goes to Σ_a <e'_c, phi(e_a)> gen_a.
template <class Phi>
std::vector<Element> dualize(const KoszulDual& from, const KoszulDual& to, Phi phi) {
    const QuasiFreeAlgebra& Y = *to.source;
    const QuasiFreeAlgebra& X = *from.source;
    std::vector<Element> imgs(to.algebra->size());
    std::map<int, int> x_offset, y_offset;
    for (std::size_t a = 0; a < from.input.basis.size(); ++a)
        if (!x_offset.count(from.input.basis[a].degree)) x_offset[from.input.basis[a].degree] = int(a);
    for (std::size_t a = 0; a < to.input.basis.size(); ++a)
        if (!y_offset.count(to.input.basis[a].degree)) y_offset[to.input.basis[a].degree] = int(a);
    const FreeAlgebra& FX = from.algebra->free();
    for (std::size_t a = 0; a < from.input.basis.size(); ++a) {
        int ga = from.generator_of_basis[a];
        if (ga < 0) continue;
        int k = from.input.basis[a].degree;
        const Element& ea = X.free().basis(k).elements[std::size_t(int(a) - x_offset[k])];
        auto [img, sign, t] = phi(ea, k);
        if (img.is_zero() || !y_offset.count(t)) continue;
        Vector c = Y.free().coordinates(img, t);
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (sgn(c[r]) == 0) continue;
            int gc = to.generator_of_basis[std::size_t(y_offset[t] + int(r))];
            if (gc < 0) continue;
            imgs[gc] += Rational(sign) * c[r] * FX.generator(ga);
        }
    }
    return imgs;
}

} // namespace

Morphism functor_on_morphism(const Morphism& f, const KoszulDual& dual_source, const KoszulDual& dual_target) {
    require_source(dual_source, f.source(), "functor_on_morphism");
    require_source(dual_target, f.target(), "functor_on_morphism");
    if (dual_source.algebra->flavor() != dual_target.algebra->flavor())
        throw FlavorError("functor_on_morphism: duals of different kinds");
    auto imgs = dualize(dual_source, dual_target,
                        [&](const Element& e, int k) { return std::tuple<Element, int, int>(f.apply(e), 1, k); });
    return Morphism(dual_target.algebra, dual_source.algebra, std::move(imgs));
}

Homotopy functor_on_homotopy(const Homotopy& h, const KoszulDual& dual_source, const KoszulDual& dual_target) {
    require_source(dual_source, h.source(), "functor_on_homotopy");
    require_source(dual_target, h.target(), "functor_on_homotopy");
    auto [f, g] = h.endpoints();
    Morphism Ff = functor_on_morphism(f, dual_source, dual_target);
    Morphism Fg = functor_on_morphism(g, dual_source, dual_target);
    // β_i on products picks up t-powers from every factor
    int bound = (h.top_alpha() + int(h.betas().size()) + 1) * (h.source()->cutoff() + 2);
    std::vector<std::vector<Element>> betas;
    for (int i = 0; i < bound; ++i)
        betas.push_back(dualize(dual_source, dual_target, [&](const Element& e, int k) {
            return std::tuple<Element, int, int>(h.beta(i, e), -1, k - h.source()->d_degree());
        }));
    while (!betas.empty() && std::all_of(betas.back().begin(), betas.back().end(),
                                         [](const Element& x) { return x.is_zero(); }))
        betas.pop_back();
    Homotopy H(Ff, std::move(betas));
    if (H.source()->flavor().direction == Direction::Chain) {
        // β on a top chain generator needs input data one degree above the cutoff
        AlgebraPtr below = truncate(H.source(), H.source()->cutoff() - 1);
        H = H.restrict_to(below);
        Fg = Fg.restrict_to(below);
    }
    Verification v = verify_homotopy(H, &Fg.images());
    if (!v.ok)
        throw MalformedHomotopyError("transported homotopy fails at '" + v.generator + "': " + v.detail);
    return H;
}

Morphism counit(const KoszulDual& ce, const KoszulDual& l) {
    if (!ce.source || ce.source->flavor().direction != Direction::Chain)
        throw PreconditionError("counit: first dual must be C* of a chain algebra");
    require_source(l, ce.algebra, "counit");
    AlgebraPtr g = recut(ce.source, l.algebra->cutoff());
    const QuasiFreeAlgebra& C = *ce.algebra;
    std::map<int, int> offset;
    for (std::size_t a = 0; a < ce.input.basis.size(); ++a)
        if (!offset.count(ce.input.basis[a].degree)) offset[ce.input.basis[a].degree] = int(a);
    std::vector<Element> imgs(l.algebra->size());
    for (std::size_t x = 0; x < l.algebra->size(); ++x) {
        int b = l.basis_of_generator[x];
        auto w = C.generators().index(l.input.basis[std::size_t(b)].name);
        if (!w) continue;  // dual of a product
        int e = ce.basis_of_generator[*w];
        int k = ce.input.basis[std::size_t(e)].degree;
        if (k > g->cutoff()) continue;
        Element v = ce.source->free().basis(k).elements[std::size_t(e - offset[k])];
        imgs[x] = -v;
    }
    // the images are written on the generators of ce.source; recut keeps names and order
    return Morphism(l.algebra, g, std::move(imgs));
}

// ------------------------------------------------------------ minimalize

namespace {

struct Cancellation {
    AlgebraPtr Y;
    Morphism phi;  // X -> Y
};

Element reindex_into(const Element& x, const std::vector<int>& map) {
    Element out;
    for (const auto& [w, c] : x.terms()) {
        Word nw;
        nw.reserve(w.size());
        for (int i : w) {
            if (map[i] < 0) throw PreconditionError("cancelled generator survives in a differential");
            nw.push_back(map[i]);
        }
        out.add(nw, c);
    }
    return out;
}

std::optional<Cancellation> cancel_one(const AlgebraPtr& X) {
    for (std::size_t v = 0; v < X->size(); ++v) {
        const Element& dv = X->d_of(int(v));
        for (std::size_t w = 0; w < X->size(); ++w) {
            Rational c = dv.linear_coefficient(int(w));
            if (sgn(c) == 0) continue;
            std::vector<Generator> kept;
            std::vector<int> map(X->size(), -1);
            for (std::size_t i = 0; i < X->size(); ++i)
                if (i != v && i != w) kept.push_back(X->generators()[i]);
            Generators G(kept);
            for (std::size_t i = 0; i < X->size(); ++i)
                if (i != v && i != w) map[i] = *G.index(X->generators()[i].name);
            Element rest = dv - c * X->free().generator(int(w));
            Rational inv = Rational(-1) / c;
            std::vector<Element> phi_imgs(X->size());
            phi_imgs[w] = inv * reindex_into(rest, map);
            for (std::size_t i = 0; i < X->size(); ++i)
                if (map[i] >= 0) phi_imgs[i] = Element::monomial(Word{map[i]});
            FreeAlgebra FY(X->flavor(), G);
            std::vector<Element> dY(G.size());
            for (std::size_t i = 0; i < X->size(); ++i)
                if (map[i] >= 0) dY[map[i]] = X->free().extend_as_morphism(phi_imgs, FY, X->d_of(int(i)));
            auto Y = std::make_shared<QuasiFreeAlgebra>(X->flavor(), G, std::move(dY), X->cutoff());
            return Cancellation{Y, Morphism(X, Y, std::move(phi_imgs))};
        }
    }
    return std::nullopt;
}

} // namespace

Minimalization minimalize(const AlgebraPtr& A) {
    AlgebraPtr X = A;
    Morphism nu = Morphism::identity(A);
    while (auto step = cancel_one(X)) {
        nu = compose(step->phi, nu);
        X = step->Y;
    }
    Morphism eta = lift_along(Morphism::identity(X), nu);
    return {X, nu, eta};
}

AlgebraPtr cylinder(const AlgebraPtr& A) {
    int dd = A->d_degree();
    std::vector<Generator> gens;
    for (const auto& g : A->generators().all()) {
        gens.push_back(g);
        gens.push_back({g.name + "_hat", g.degree});
        gens.push_back({g.name + "_s", g.degree - dd});
    }
    Generators G(gens);
    std::vector<int> map(A->size());
    for (std::size_t i = 0; i < A->size(); ++i) map[i] = *G.index(A->generators()[i].name);
    FreeAlgebra F(A->flavor(), G);
    std::vector<Element> d(G.size());
    for (std::size_t i = 0; i < A->size(); ++i) {
        const std::string& n = A->generators()[i].name;
        d[map[i]] = reindex_into(A->d_of(int(i)), map);
        d[*G.index(n + "_s")] = F.generator(*G.index(n + "_hat"));
    }
    int cutoff = A->cutoff();
    if (dd < 0) cutoff = std::max(cutoff, G.max_degree());
    return std::make_shared<QuasiFreeAlgebra>(A->flavor(), G, std::move(d), cutoff);
}

// ---------------------------------------------------- finite generation

namespace {

std::vector<std::size_t> cohomology(const FiniteTypeAlgebra& A) {
    // H^k of the finite-type complex for 0 <= k <= cutoff - 1
    std::vector<std::size_t> out(std::size_t(std::max(A.cutoff, 1)), 0);
    if (A.flavor.unitary) out[0] = 1;
    auto block = [&](int k) {
        auto src = A.in_degree(k), dst = A.in_degree(k + 1);
        Matrix m(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j)
            for (const auto& [t, q] : A.d[src[j]]) {
                auto it = std::find(dst.begin(), dst.end(), t);
                if (it != dst.end()) m(std::size_t(it - dst.begin()), j) = q;
            }
        return m;
    };
    for (int k = 1; k < A.cutoff; ++k) {
        std::size_t n = A.in_degree(k).size();
        std::size_t r_out = n == 0 ? 0 : rank(block(k));
        std::size_t r_in = (k == 1 || A.in_degree(k - 1).empty() || n == 0) ? 0 : rank(block(k - 1));
        out[std::size_t(k)] = n - r_out - r_in;
    }
    return out;
}

} // namespace

FiniteGeneration check_finite_generation(const FiniteTypeAlgebra& A) {
    if (A.flavor.direction != Direction::Cochain || A.flavor.operad != Operad::Com)
        throw FlavorError("check_finite_generation expects a commutative cochain algebra");
    FiniteGeneration r;
    r.betti = cohomology(A);
    int certified = A.cutoff - 1;
    int t = 0;
    for (int k = 1; k <= certified; ++k) {
        if (r.betti[std::size_t(k)] > 0) t = k;
        r.reduced_betti_sum += r.betti[std::size_t(k)];
    }
    KoszulDual L = quillen_L(A);
    Minimalization m = minimalize(L.algebra);
    for (const auto& g : m.minimal->generators().all())
        if (g.degree <= certified - 1) ++r.generators;
    if (r.generators != r.reduced_betti_sum)
        throw PreconditionError("minimal model of L(A) has " + std::to_string(r.generators) +
                                " generators but the reduced Betti sum is " + std::to_string(r.reduced_betti_sum));
    if (t == 0) {
        r.decision = Decision::Yes;
        r.reason = "reduced cohomology vanishes through degree " + std::to_string(certified);
    } else if (certified >= 2 * t) {
        r.decision = Decision::Yes;
        r.reason = "cohomology vanishes in degrees " + std::to_string(t + 1) + ".." + std::to_string(certified);
    } else if (t >= certified - 1) {
        r.decision = Decision::No;
        r.reason = "cohomology is nonzero in degree " + std::to_string(t) + " at the top of the certified range";
    } else {
        r.reason = "gap above degree " + std::to_string(t) + " too short to decide";
    }
    return r;
}

FiniteGeneration check_finite_generation(const AlgebraPtr& A) {
    return check_finite_generation(to_finite_type(*A, A->cutoff()));
}

} // namespace rht
