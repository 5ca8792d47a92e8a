#include "rht/homotopy.hpp"

#include "rht/textio.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rht {

namespace {

int deg_of(const FreeAlgebra& F, const Element& x) {
    auto d = F.degree(x);
    return d ? *d : 0;
}

void add_to(std::map<int, Element>& m, int i, const Element& x) {
    if (x.is_zero()) return;
    Element& slot = m[i];
    slot += x;
    if (slot.is_zero()) m.erase(i);
}

const Element& at(const std::map<int, Element>& m, int i) {
    static const Element zero;
    auto it = m.find(i);
    return it == m.end() ? zero : it->second;
}

// Index of each generator of `from` among the generators of `to` (by name),
// or -1 when absent.
std::vector<int> name_map(const QuasiFreeAlgebra& from, const QuasiFreeAlgebra& to) {
    std::vector<int> m(from.size(), -1);
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto j = to.generators().index(from.generators()[i].name);
        if (j && to.generators()[*j].degree == from.generators()[i].degree) m[i] = *j;
    }
    return m;
}

std::optional<Element> reindex(const Element& x, const std::vector<int>& map) {
    Element r;
    for (const auto& [w, c] : x.terms()) {
        Word nw;
        for (int g : w) {
            if (map[g] < 0) return std::nullopt;
            nw.push_back(map[g]);
        }
        r.add(nw, c);
    }
    return r;
}

std::string fmt(const FreeAlgebra& F, const Element& x) {
    try {
        return print_element(F, x);
    } catch (const Error&) {
        return "<" + std::to_string(x.size()) + " terms>";
    }
}

} // namespace

bool Form::is_zero() const { return poly.empty() && dt.empty(); }

bool operator==(const Form& a, const Form& b) { return a.poly == b.poly && a.dt == b.dt; }

Form form_product(const QuasiFreeAlgebra& B, const Form& a, const Form& b) {
    const FreeAlgebra& F = B.free();
    Form r;
    for (const auto& [i, x] : a.poly) {
        for (const auto& [j, y] : b.poly) add_to(r.poly, i + j, F.ambient_product(x, y));
        for (const auto& [j, y] : b.dt) add_to(r.dt, i + j, F.ambient_product(x, y));
    }
    for (const auto& [i, x] : a.dt)
        for (const auto& [j, y] : b.poly)
            add_to(r.dt, i + j, Rational(parity_sign(deg_of(F, y))) * F.ambient_product(x, y));
    return r;
}

Form form_differential(const QuasiFreeAlgebra& B, const Form& a) {
    Form r;
    for (const auto& [i, x] : a.poly) {
        add_to(r.poly, i, B.d(x));
        if (i >= 1) add_to(r.dt, i - 1, Rational(parity_sign(deg_of(B.free(), x)) * i) * x);
    }
    for (const auto& [i, x] : a.dt) add_to(r.dt, i, B.d(x));
    return r;
}

// ------------------------------------------------------------- Homotopy

Homotopy::Homotopy(Morphism alpha0, std::vector<std::vector<Element>> betas)
    : alpha0_(std::move(alpha0)), betas_(std::move(betas)) {
    const QuasiFreeAlgebra& A = *source();
    const QuasiFreeAlgebra& B = *target();
    if (betas_.empty()) betas_.emplace_back(A.size());
    for (std::size_t i = 0; i < betas_.size(); ++i) {
        if (betas_[i].size() != A.size())
            throw DimensionError("beta_" + std::to_string(i) + " does not cover every generator");
        for (std::size_t v = 0; v < A.size(); ++v) {
            const Element& b = betas_[i][v];
            auto d = B.free().degree(b);
            int want = A.generators()[v].degree - A.d_degree();
            if (d && *d != want)
                throw DegreeError("beta_" + std::to_string(i) + "(" + A.generators()[v].name + ") has degree " +
                                  std::to_string(*d) + ", expected " + std::to_string(want));
            if (d && B.flavor().operad == Operad::Lie) B.free().coordinates(b, *d);
        }
    }
    while (betas_.size() > 1 &&
           std::all_of(betas_.back().begin(), betas_.back().end(), [](const Element& e) { return e.is_zero(); }))
        betas_.pop_back();
    build();
}

Homotopy Homotopy::constant(const Morphism& f) { return Homotopy(f, {}); }

void Homotopy::build() {
    const QuasiFreeAlgebra& A = *source();
    const QuasiFreeAlgebra& B = *target();
    forms_.assign(A.size(), Form{});
    std::vector<int> state(A.size(), 0);
    std::vector<int> stack;
    auto compute = [&](auto&& self, int v) -> void {
        state[v] = 1;
        for (const auto& [w, c] : A.d_of(v).terms())
            for (int g : w) {
                if (state[g] == 1)
                    throw MalformedHomotopyError("differential dependencies of '" + A.generators()[v].name +
                                                 "' are cyclic");
                if (state[g] == 0) self(self, g);
            }
        Form fdv = apply(A.d_of(v));
        int dv_sign = parity_sign(A.generators()[v].degree + A.d_degree());
        Form& h = forms_[v];
        add_to(h.poly, 0, alpha0_.image(v));
        std::set<int> indices;
        for (std::size_t i = 0; i < betas_.size(); ++i)
            if (!betas_[i][v].is_zero()) indices.insert(int(i));
        for (const auto& [i, x] : fdv.dt) indices.insert(i);
        for (int i : indices) {
            Element bv = i < int(betas_.size()) ? betas_[i][v] : Element{};
            Element bdv = Rational(dv_sign) * at(fdv.dt, i);
            Element a = B.d(bv) + bdv;
            add_to(h.poly, i + 1, Rational(-1, i + 1) * a);
            add_to(h.dt, i, Rational(parity_sign(A.generators()[v].degree)) * bv);
        }
        state[v] = 2;
    };
    for (std::size_t v = 0; v < A.size(); ++v)
        if (state[v] == 0) compute(compute, int(v));
}

Form Homotopy::apply(const Element& x) const {
    const QuasiFreeAlgebra& B = *target();
    Form r;
    for (const auto& [w, c] : x.terms()) {
        Form p = forms_[w[0]];
        for (std::size_t k = 1; k < w.size() && !p.is_zero(); ++k) p = form_product(B, p, forms_[w[k]]);
        for (const auto& [i, y] : p.poly) add_to(r.poly, i, c * y);
        for (const auto& [i, y] : p.dt) add_to(r.dt, i, c * y);
    }
    return r;
}

Element Homotopy::alpha(int i, const Element& x) const { return at(apply(x).poly, i); }

Element Homotopy::beta(int i, const Element& x) const {
    int s = parity_sign(deg_of(source()->free(), x));
    return Rational(s) * at(apply(x).dt, i);
}

int Homotopy::top_alpha() const {
    int top = 0;
    for (const auto& f : forms_)
        if (!f.poly.empty()) top = std::max(top, f.poly.rbegin()->first);
    return top;
}

std::vector<Element> Homotopy::end_images() const {
    std::vector<Element> out;
    for (const auto& f : forms_) {
        Element s;
        for (const auto& [i, x] : f.poly) s += x;
        out.push_back(std::move(s));
    }
    return out;
}

std::pair<Morphism, Morphism> Homotopy::endpoints() const {
    try {
        return {alpha0_, Morphism(source(), target(), end_images())};
    } catch (const MorphismError& e) {
        throw MalformedHomotopyError(std::string("end map is not a morphism: ") + e.what());
    }
}

Homotopy Homotopy::restrict_to(const AlgebraPtr& sub) const {
    auto m = name_map(*sub, *source());
    std::vector<std::vector<Element>> betas(betas_.size());
    for (std::size_t i = 0; i < betas_.size(); ++i)
        for (std::size_t v = 0; v < sub->size(); ++v) {
            if (m[v] < 0) throw DimensionError("'" + sub->generators()[v].name + "' is not a source generator");
            betas[i].push_back(betas_[i][m[v]]);
        }
    return Homotopy(alpha0_.restrict_to(sub), std::move(betas));
}

Verification verify_homotopy(const Homotopy& h, const std::vector<Element>* claimed_end) {
    const QuasiFreeAlgebra& A = *h.source();
    const QuasiFreeAlgebra& B = *h.target();
    Verification out;
    for (std::size_t v = 0; v < A.size(); ++v) {
        if (A.generators()[v].degree > A.cutoff()) continue;
        Form lhs = form_differential(B, h.on_generator(int(v)));
        Form rhs = h.apply(A.d_of(int(v)));
        if (!(lhs == rhs)) {
            out.ok = false;
            out.generator = A.generators()[v].name;
            for (const auto& [i, x] : lhs.poly)
                if (!(x == at(rhs.poly, i))) {
                    out.detail = "alpha_" + std::to_string(i) + " does not commute with d";
                    break;
                }
            if (out.detail.empty()) out.detail = "t^i dt components of D h and h d differ";
            return out;
        }
    }
    try {
        h.endpoints();
    } catch (const MalformedHomotopyError& e) {
        out.ok = false;
        out.detail = e.what();
        return out;
    }
    if (claimed_end) {
        auto end = h.end_images();
        for (std::size_t v = 0; v < A.size(); ++v)
            if (A.generators()[v].degree <= A.cutoff() && !(end[v] == (*claimed_end)[v])) {
                out.ok = false;
                out.generator = A.generators()[v].name;
                out.detail = "ev_1(" + out.generator + ") = " + fmt(B.free(), end[v]) + " but the claimed end is " +
                             fmt(B.free(), (*claimed_end)[v]);
                return out;
            }
    }
    return out;
}

// ------------------------------------------------------------ extension

Homotopy extend_homotopy(const Homotopy& h_n, const Morphism& f_next, const Morphism& g_next) {
    const AlgebraPtr& A = f_next.source();
    const QuasiFreeAlgebra& B = *f_next.target();
    const AlgebraPtr& An = h_n.source();
    auto m = name_map(*An, *A);
    for (std::size_t v = 0; v < An->size(); ++v)
        if (m[v] < 0) throw PreconditionError("'" + An->generators()[v].name + "' is not a generator of the larger algebra");
    if (!(f_next.restrict_to(An) == h_n.alpha0()))
        throw PreconditionError("f does not restrict to the starting point of the given homotopy");
    if (!(g_next.restrict_to(An) == Morphism(An, h_n.target(), h_n.end_images())))
        throw PreconditionError("g does not restrict to the end point of the given homotopy");

    std::vector<std::vector<Element>> betas(std::max<std::size_t>(1, h_n.betas().size()),
                                            std::vector<Element>(A->size()));
    std::vector<bool> known(A->size(), false);
    for (std::size_t v = 0; v < An->size(); ++v) {
        known[m[v]] = true;
        for (std::size_t i = 0; i < h_n.betas().size(); ++i) betas[i][m[v]] = h_n.betas()[i][v];
    }
    for (std::size_t v = 0; v < A->size(); ++v) {
        if (known[v]) continue;
        Homotopy cur(f_next, betas);
        int k = A->generators()[v].degree;
        Form fdv = cur.apply(A->d_of(int(v)));
        int dv_sign = parity_sign(k + A->d_degree());
        Element rhs = f_next.image(int(v)) - g_next.image(int(v));
        for (const auto& [i, x] : fdv.dt) rhs -= Rational(dv_sign, i + 1) * x;
        if (!rhs.is_zero()) {
            int zdeg = k - A->d_degree();
            auto z = solve(B.differential_matrix(zdeg), B.free().coordinates(rhs, k));
            if (!z) throw ObstructionError(A->generators()[v].name, k, rhs, fmt(B.free(), rhs));
            betas[0][v] = B.free().from_coordinates(*z, zdeg);
        }
        known[v] = true;
    }
    Homotopy out(f_next, std::move(betas));
    auto check = verify_homotopy(out, &g_next.images());
    if (!check.ok) throw MalformedHomotopyError("extended homotopy failed verification at '" + check.generator + "': " + check.detail);
    return out;
}

MapExtension extend_map(const Morphism& f_prev, const AlgebraPtr& next) {
    const AlgebraPtr& An = f_prev.source();
    const QuasiFreeAlgebra& B = *f_prev.target();
    if (next->flavor().direction == Direction::Cochain && !check_minimal(*next))
        throw PreconditionError("extend_map needs a minimal cochain source");
    auto m = name_map(*An, *next);
    std::vector<Element> imgs(next->size());
    std::vector<bool> known(next->size(), false);
    for (std::size_t v = 0; v < An->size(); ++v) {
        if (m[v] < 0) throw PreconditionError("'" + An->generators()[v].name + "' is not a generator of the larger algebra");
        imgs[m[v]] = f_prev.image(int(v));
        known[m[v]] = true;
    }
    std::vector<std::pair<std::string, std::size_t>> freedom;
    for (std::size_t v = 0; v < next->size(); ++v) {
        if (known[v]) continue;
        int k = next->generators()[v].degree;
        Element rhs = next->free().extend_as_morphism(imgs, B.free(), next->d_of(int(v)));
        Matrix d = B.differential_matrix(k);
        freedom.push_back({next->generators()[v].name, d.cols() - rank(d)});
        if (!rhs.is_zero()) {
            auto b = solve(d, B.free().coordinates(rhs, k + B.d_degree()));
            if (!b) throw ObstructionError(next->generators()[v].name, k + B.d_degree(), rhs, fmt(B.free(), rhs));
            imgs[v] = B.free().from_coordinates(*b, k);
        }
    }
    return {Morphism(next, f_prev.target(), std::move(imgs)), std::move(freedom)};
}

std::string to_string(Decision d) {
    switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Unknown: return "unknown";
    }
    return "?";
}

HomotopicResult homotopic(const Morphism& f, const Morphism& g) {
    HomotopicResult out;
    if (f == g) {
        out.decision = Decision::Yes;
        out.certificate = Homotopy::constant(f);
        out.reason = "maps are equal";
        return out;
    }
    const AlgebraPtr& A = f.source();
    const QuasiFreeAlgebra& B = *f.target();
    int top = B.certified_homology();
    for (int k = 1; k <= top; ++k) {
        Matrix mf = f.induced_on_homology(k), mg = g.induced_on_homology(k);
        if (!(mf == mg)) {
            out.decision = Decision::No;
            if (mf.rows() == 1 && mf.cols() == 1)
                out.reason = "H" + std::to_string(k) + " invariant differs: " + mf(0, 0).get_str() + " vs " +
                             mg(0, 0).get_str();
            else
                out.reason = "induced maps on H" + std::to_string(k) + " differ";
            return out;
        }
    }
    std::set<int> degrees;
    for (const auto& gen : A->generators().all()) degrees.insert(gen.degree);
    auto A0 = truncate(A, 0);
    Homotopy h = Homotopy::constant(f.restrict_to(A0));
    try {
        for (int k : degrees) {
            auto Ak = truncate(A, k);
            h = extend_homotopy(h, f.restrict_to(Ak), g.restrict_to(Ak));
        }
    } catch (const ObstructionError& e) {
        auto hb = B.homology_in_range(top, top);
        if (top >= 1 && hb[0] != 0)
            throw HypothesisError("no homotopy found and the target homology does not vanish in degree " +
                                  std::to_string(top) + ", the top certified degree");
        out.decision = Decision::Unknown;
        out.reason = e.what();
        return out;
    }
    out.decision = Decision::Yes;
    out.certificate = Homotopy(f, h.betas());
    out.reason = "homotopy constructed generator by generator";
    return out;
}

IsoExtension extend_iso(const Morphism& f_n, const AlgebraPtr& next) {
    if (!f_n.is_isomorphism()) throw PreconditionError("the given map is not an isomorphism");
    Morphism start = f_n;
    if (f_n.target()->size() != next->size()) {
        auto m = name_map(*f_n.target(), *next);
        std::vector<Element> imgs;
        for (const auto& e : f_n.images()) {
            auto r = reindex(e, m);
            if (!r) throw PreconditionError("target of the map is not a truncation of the larger algebra");
            imgs.push_back(std::move(*r));
        }
        start = Morphism(f_n.source(), next, std::move(imgs));
    }
    Morphism ext = extend_map(start, next).map;
    if (next->flavor().direction == Direction::Cochain) {
        // top cochain generators carry no honest equation; keep them in the linear part
        std::vector<Element> imgs = ext.images();
        auto known = name_map(*f_n.source(), *next);
        std::vector<bool> given(next->size(), false);
        for (int j : known)
            if (j >= 0) given[std::size_t(j)] = true;
        for (std::size_t v = 0; v < next->size(); ++v)
            if (!given[v] && next->generators()[v].degree > next->cutoff() && !imgs[v].has_linear_part())
                imgs[v] += next->free().generator(int(v));
        ext = Morphism(next, next, std::move(imgs));
    }
    if (!ext.is_isomorphism()) throw InversionError("extension of an isomorphism is not invertible");
    return {ext, ext.inverse()};
}

Homotopy identify_in_truncation(const Homotopy& h, const AlgebraPtr& A_n) {
    const QuasiFreeAlgebra& A = *h.target();
    if (A.flavor().direction != Direction::Chain)
        throw SparsenessError("identification of truncation self-maps is only available for chain algebras");
    if (!check_sparsely_generated(A)) {
        std::set<int> degs;
        for (const auto& g : A.generators().all()) degs.insert(g.degree);
        int k = 0;
        for (int d : degs)
            if (degs.count(d + 1)) {
                k = d;
                break;
            }
        throw SparsenessError("target is not sparsely generated: generators in consecutive degrees " +
                              std::to_string(k) + " and " + std::to_string(k + 1) +
                              "; a homotopy into the full algebra need not restrict to the truncation");
    }
    auto m = name_map(A, *A_n);
    auto move = [&](const Element& e, const std::string& what) {
        auto r = reindex(e, m);
        if (!r) throw SparsenessError(what + " leaves the truncation");
        return *r;
    };
    std::vector<Element> imgs;
    for (std::size_t v = 0; v < h.source()->size(); ++v)
        imgs.push_back(move(h.alpha0().image(int(v)), "alpha_0(" + h.source()->generators()[v].name + ")"));
    std::vector<std::vector<Element>> betas(h.betas().size());
    for (std::size_t i = 0; i < h.betas().size(); ++i)
        for (std::size_t v = 0; v < h.source()->size(); ++v)
            betas[i].push_back(move(h.betas()[i][v], "beta_" + std::to_string(i) + "(" +
                                                         h.source()->generators()[v].name + ")"));
    return Homotopy(Morphism(h.source(), A_n, std::move(imgs)), std::move(betas));
}

// ------------------------------------------------------------ certificates

std::string print_homotopy(const Homotopy& h) {
    const FreeAlgebra& F = h.target()->free();
    const auto& gens = h.source()->generators();
    std::ostringstream out;
    out << "homotopy\n";
    for (std::size_t v = 0; v < gens.size(); ++v)
        out << "alpha0 " << gens[v].name << " = " << print_element(F, h.alpha0().image(int(v))) << "\n";
    for (std::size_t i = 0; i < h.betas().size(); ++i)
        for (std::size_t v = 0; v < gens.size(); ++v)
            if (!h.betas()[i][v].is_zero())
                out << "beta " << i << " " << gens[v].name << " = " << print_element(F, h.betas()[i][v]) << "\n";
    auto end = h.end_images();
    for (std::size_t v = 0; v < gens.size(); ++v)
        out << "end " << gens[v].name << " = " << print_element(F, end[v]) << "\n";
    return out.str();
}

HomotopyCertificate parse_homotopy(const std::string& text, const AlgebraPtr& source, const AlgebraPtr& target) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    std::vector<Element> alpha(source->size()), end(source->size());
    std::vector<std::vector<Element>> betas(1, std::vector<Element>(source->size()));
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw == "homotopy") continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(n, 1, "expected '='");
        int index = 0;
        if (kw == "beta" && !(ls >> index)) throw ParseError(n, 6, "expected beta index");
        if (index < 0) throw ParseError(n, 6, "negative beta index");
        std::string name;
        ls >> name;
        auto v = source->generators().index(name);
        if (!v) throw ParseError(n, 1, "unknown generator '" + name + "'");
        Element e;
        try {
            e = parse_element(target->free(), line.substr(eq + 1));
        } catch (const ParseError& p) {
            throw ParseError(n, int(eq) + 1 + p.column(), p.what());
        }
        if (kw == "alpha0") {
            alpha[*v] = e;
        } else if (kw == "end") {
            end[*v] = e;
        } else if (kw == "beta") {
            if (int(betas.size()) <= index) betas.resize(index + 1, std::vector<Element>(source->size()));
            betas[index][*v] = e;
        } else {
            throw ParseError(n, 1, "unknown directive '" + kw + "'");
        }
    }
    return {Homotopy(Morphism(source, target, std::move(alpha)), std::move(betas)), std::move(end)};
}

} // namespace rht
