#include "rht/autalg.hpp"

#include "rht/errors.hpp"
#include "rht/textio.hpp"

#include <map>
#include <sstream>

namespace rht {

int level_epsilon(const Flavor& f) { return f.direction == Direction::Cochain ? 1 : 0; }

// ------------------------------------------------------- restricted maps

RestrictedStructure restricted_structure(const AlgebraPtr& A, int n) {
    if (n < 1) throw DegreeError("level must be >= 1");
    return {A, n, to_finite_type(*A, n)};
}

AutMatrix matrix_of(const Morphism& f, int n) {
    AutMatrix M;
    M.level = n;
    M.flavor = f.source()->flavor();
    M.blocks.resize(std::size_t(n + 1));
    for (int k = 1; k <= n; ++k) M.blocks[std::size_t(k)] = f.matrix(k);
    return M;
}

namespace {

// position of each basis index inside its degree
struct DegreeIndex {
    std::map<int, std::vector<int>> members;
    std::vector<int> position;

    explicit DegreeIndex(const FiniteTypeAlgebra& T) : position(T.basis.size()) {
        for (std::size_t a = 0; a < T.basis.size(); ++a) {
            auto& v = members[T.basis[a].degree];
            position[a] = int(v.size());
            v.push_back(int(a));
        }
    }
    std::size_t dim(int k) const {
        auto it = members.find(k);
        return it == members.end() ? 0 : it->second.size();
    }
};

Matrix d_block(const FiniteTypeAlgebra& T, const DegreeIndex& I, int k) {
    int t = k + T.flavor.differential_degree();
    Matrix m(I.dim(t), I.dim(k));
    for (std::size_t j = 0; j < I.dim(k); ++j)
        for (const auto& [c, q] : T.d[std::size_t(I.members.at(k)[j])]) m(std::size_t(I.position[c]), j) += q;
    return m;
}

} // namespace

bool is_automorphism(const AutMatrix& M, const RestrictedStructure& S) {
    const FiniteTypeAlgebra& T = S.table;
    DegreeIndex I(T);
    if (M.level != S.level || M.blocks.size() != std::size_t(S.level + 1))
        throw DimensionError("matrix level does not match the restricted structure");
    for (int k = 1; k <= S.level; ++k) {
        const Matrix& B = M.blocks[std::size_t(k)];
        if (B.rows() != I.dim(k) || B.cols() != I.dim(k))
            throw DimensionError("block in degree " + std::to_string(k) + " has the wrong size");
    }
    for (int k = 1; k <= S.level; ++k)
        if (rank(M.blocks[std::size_t(k)]) != I.dim(k)) return false;
    int dd = T.flavor.differential_degree();
    for (int k = 1; k <= S.level; ++k) {
        int t = k + dd;
        if (t < 1 || t > S.level || I.dim(k) == 0 || I.dim(t) == 0) continue;
        Matrix D = d_block(T, I, k);
        if (!(M.blocks[std::size_t(t)] * D == D * M.blocks[std::size_t(k)])) return false;
    }
    // M(ab) = M(a) M(b) for basis pairs whose product stays in range
    auto prod_coords = [&](int a, int b, Vector& out, const Rational& s) {
        auto it = T.product.find({a, b});
        if (it == T.product.end()) return;
        for (const auto& [c, q] : it->second) out[std::size_t(I.position[c])] += s * q;
    };
    for (const auto& [p, Pa] : I.members)
        for (const auto& [q, Qb] : I.members) {
            int r = p + q;
            if (r > S.level) continue;
            const Matrix& Mp = M.blocks[std::size_t(p)];
            const Matrix& Mq = M.blocks[std::size_t(q)];
            const Matrix& Mr = M.blocks[std::size_t(r)];
            for (std::size_t i = 0; i < Pa.size(); ++i)
                for (std::size_t j = 0; j < Qb.size(); ++j) {
                    Vector lhs(I.dim(r)), rhs(I.dim(r)), ab(I.dim(r));
                    prod_coords(Pa[i], Qb[j], ab, 1);
                    lhs = Mr * ab;
                    for (std::size_t i2 = 0; i2 < Pa.size(); ++i2) {
                        if (sgn(Mp(i2, i)) == 0) continue;
                        for (std::size_t j2 = 0; j2 < Qb.size(); ++j2)
                            if (sgn(Mq(j2, j)) != 0) prod_coords(Pa[i2], Qb[j2], rhs, Mp(i2, i) * Mq(j2, j));
                    }
                    if (lhs != rhs) return false;
                }
        }
    return true;
}

Morphism morphism_from_matrix(const AutMatrix& M, const AlgebraPtr& A) {
    std::vector<Element> imgs;
    for (std::size_t v = 0; v < A->size(); ++v) {
        int k = A->generators()[v].degree;
        if (k > M.level)
            throw PreconditionError("generator '" + A->generators()[v].name + "' lies above level " +
                                    std::to_string(M.level));
        Vector c = A->free().coordinates(A->free().generator(int(v)), k);
        imgs.push_back(A->free().from_coordinates(M.blocks[std::size_t(k)] * c, k));
    }
    return Morphism(A, A, std::move(imgs));
}

AutMatrix extend_level(const AutMatrix& M, const AlgebraPtr& A) {
    return matrix_of(morphism_from_matrix(M, A), M.level + 1);
}

bool is_unipotent(const AutMatrix& M) {
    for (std::size_t k = 1; k < M.blocks.size(); ++k) {
        const Matrix& B = M.blocks[k];
        Matrix N = B - Matrix::identity(B.rows());
        Matrix P = Matrix::identity(B.rows());
        for (std::size_t j = 0; j < B.rows(); ++j) P = P * N;
        if (!P.is_zero()) return false;
    }
    return true;
}

// ----------------------------------------------------------- derivations

Element Derivation::apply(const Element& x) const {
    return algebra->free().extend_as_derivation(images, degree, x);
}

Derivation boundary_derivation(const Derivation& eta) {
    const QuasiFreeAlgebra& A = *eta.algebra;
    if (eta.degree != -A.d_degree()) throw DegreeError("η must have degree opposite to d");
    Derivation theta{eta.algebra, 0, {}};
    for (std::size_t v = 0; v < A.size(); ++v)
        theta.images.push_back(A.d(eta.images[v]) + eta.apply(A.d_of(int(v))));
    return theta;
}

namespace {

// Σ_j c_j ψ^j(v) for j >= start, stopping once ψ^j(v) vanishes.
template <class Psi, class Coef>
Element nilpotent_series(const QuasiFreeAlgebra& A, int v, Psi psi, Coef coef, const char* what) {
    int k = A.generators()[std::size_t(v)].degree;
    std::size_t bound = A.free().dim(k) + 1;
    Element term = A.free().generator(v);
    Element sum;
    for (std::size_t j = 1;; ++j) {
        term = psi(term);
        if (term.is_zero()) return sum;
        if (j > bound)
            throw NilpotenceError(std::string(what) + " is not nilpotent on generator '" +
                                  A.generators()[std::size_t(v)].name + "'");
        sum += coef(j) * term;
    }
}

Rational factorial(std::size_t j) {
    Rational f = 1;
    for (std::size_t i = 2; i <= j; ++i) f *= Rational(long(i));
    return f;
}

} // namespace

Morphism exp_derivation(const Derivation& theta) {
    if (theta.degree != 0) throw DegreeError("exp needs a degree-0 derivation");
    const QuasiFreeAlgebra& A = *theta.algebra;
    std::vector<Element> imgs;
    for (std::size_t v = 0; v < A.size(); ++v)
        imgs.push_back(A.free().generator(int(v)) +
                       nilpotent_series(A, int(v), [&](const Element& x) { return theta.apply(x); },
                                        [](std::size_t j) -> Rational { return Rational(1) / factorial(j); }, "θ"));
    return Morphism(theta.algebra, theta.algebra, std::move(imgs));
}

Derivation log_automorphism(const Morphism& phi) {
    if (!same_algebra(*phi.source(), *phi.target())) throw PreconditionError("log needs an endomorphism");
    const QuasiFreeAlgebra& A = *phi.source();
    Derivation theta{phi.source(), 0, {}};
    for (std::size_t v = 0; v < A.size(); ++v)
        theta.images.push_back(nilpotent_series(
            A, int(v), [&](const Element& x) { return phi.apply(x) - x; },
            [](std::size_t j) -> Rational { return Rational(j % 2 == 1 ? 1 : -1, long(j)); }, "φ - id"));
    return theta;
}

std::optional<Derivation> realize_as_boundary(const Derivation& theta) {
    const QuasiFreeAlgebra& A = *theta.algebra;
    if (A.flavor().direction == Direction::Cochain && !check_minimal(A))
        throw PreconditionError("realize_as_boundary needs a minimal cochain algebra");
    int s = -A.d_degree();
    Derivation eta{theta.algebra, s, std::vector<Element>(A.size())};
    // generators are sorted by degree, and d of a generator only involves lower ones
    for (std::size_t v = 0; v < A.size(); ++v) {
        int k = A.generators()[v].degree;
        Element rhs = theta.images[v] - eta.apply(A.d_of(int(v)));
        if (rhs.is_zero()) continue;
        auto z = solve(A.differential_matrix(k + s), A.free().coordinates(rhs, k));
        if (!z) return std::nullopt;
        eta.images[v] = A.free().from_coordinates(*z, k + s);
    }
    return eta;
}

KGroupElement k_group_element(const Derivation& eta, int n) {
    Derivation theta = boundary_derivation(eta);
    Morphism map = exp_derivation(theta);
    const QuasiFreeAlgebra& A = *eta.algebra;
    // β_i(v) = -η(θ^i v) / i!
    std::vector<std::vector<Element>> betas;
    std::vector<Element> powers;
    for (std::size_t v = 0; v < A.size(); ++v) powers.push_back(A.free().generator(int(v)));
    for (std::size_t i = 0;; ++i) {
        bool any = false;
        std::vector<Element> level(A.size());
        for (std::size_t v = 0; v < A.size(); ++v) {
            if (powers[v].is_zero()) continue;
            any = true;
            level[v] = Rational(Rational(-1) / factorial(i)) * eta.apply(powers[v]);
            powers[v] = theta.apply(powers[v]);
        }
        if (!any) break;
        betas.push_back(std::move(level));
    }
    Homotopy h(Morphism::identity(eta.algebra), std::move(betas));
    Verification ver = verify_homotopy(h, &map.images());
    if (!ver.ok) throw MalformedHomotopyError("exp homotopy fails at '" + ver.generator + "': " + ver.detail);
    return {eta, theta, map, matrix_of(map, n), std::move(h)};
}

HomotopicResult homotopic_to_identity(const Morphism& phi) {
    Morphism id = Morphism::identity(phi.source());
    if (phi == id) return homotopic(phi, id);
    try {
        Derivation theta = log_automorphism(phi);
        if (auto eta = realize_as_boundary(theta)) {
            KGroupElement k = k_group_element(*eta, phi.source()->cutoff());
            if (k.map == phi) {
                HomotopicResult r;
                r.decision = Decision::Yes;
                r.certificate = k.certificate;
                r.reason = "φ = exp(dη + ηd)";
                return r;
            }
        }
    } catch (const NilpotenceError&) {
    } catch (const PreconditionError&) {
    }
    return homotopic(id, phi);
}

// ------------------------------------------------------ main theorem

namespace {

Element rename(const Element& x, const QuasiFreeAlgebra& from, const QuasiFreeAlgebra& to) {
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto j = to.generators().index(from.generators()[i].name);
        imgs.push_back(j ? to.free().generator(*j) : Element{});
    }
    Element out = from.free().extend_as_morphism(imgs, to.free(), x);
    for (const auto& [w, c] : x.terms())
        for (int i : w)
            if (!to.generators().index(from.generators()[std::size_t(i)].name))
                throw NotClosedError("generator '" + from.generators()[std::size_t(i)].name + "' is missing");
    return out;
}

std::size_t lowest_homology(const QuasiFreeAlgebra& A) {
    for (int k = 1; k <= A.certified_homology(); ++k)
        if (A.homology_in_range(k, k)[0] != 0) return std::size_t(k);
    return 0;
}

} // namespace

Morphism transplant(const Morphism& f, const AlgebraPtr& source, const AlgebraPtr& target) {
    std::vector<Element> imgs(source->size());
    for (std::size_t v = 0; v < source->size(); ++v) {
        auto i = f.source()->generators().index(source->generators()[v].name);
        if (!i) throw NotClosedError("generator '" + source->generators()[v].name + "' is missing");
        imgs[v] = rename(f.image(*i), *f.target(), *target);
    }
    return Morphism(source, target, std::move(imgs));
}

TheoremSetup theorem_setup(const AlgebraPtr& lie, int n) {
    if (lie->flavor().operad != Operad::Lie || lie->flavor().direction != Direction::Chain)
        throw FlavorError("theorem_setup expects a chain Lie algebra");
    KoszulDual ce = ce_cochains(lie);
    Minimalization model = minimalize(ce.algebra);
    const QuasiFreeAlgebra& A = *model.minimal;
    int top = A.certified_homology();
    if (n + 1 <= top) {
        auto h = A.homology_in_range(n + 1, top);
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i] != 0)
                throw HypothesisError("cohomology of the minimal model is nonzero in degree " +
                                      std::to_string(n + 1 + int(i)) + " > n = " + std::to_string(n));
    }
    AlgebraPtr A_n = truncate(model.minimal, n);
    KoszulDual quillen = quillen_L(ce.algebra);
    Morphism tau = counit(ce, quillen);
    Morphism kappa = lift_along(Morphism::identity(tau.target()), tau);
    return {lie, n, std::move(ce), std::move(model), A_n, std::move(quillen), std::move(tau), std::move(kappa)};
}

Morphism rho(const TheoremSetup& S, const Morphism& phi) {
    Morphism C = functor_on_morphism(phi, S.ce, S.ce);
    Morphism full = compose(S.model.projection, compose(C, S.model.section));
    return transplant(full.restrict_to(S.A_n), S.A_n, S.A_n);
}

AutMatrix rho_pipeline(const TheoremSetup& S, const Morphism& phi) {
    return matrix_of(rho(S, phi), S.n + level_epsilon(S.A_n->flavor()));
}

Morphism rho_preimage(const TheoremSetup& S, const Morphism& Phi) {
    Morphism ext = extend_iso(Phi, S.model.minimal).map;
    Morphism psi = compose(S.model.section, compose(ext, S.model.projection));
    Morphism L = functor_on_morphism(psi, S.quillen, S.quillen);
    return compose(S.tau, compose(L, S.kappa));
}

std::string MainTheoremReport::text() const {
    std::ostringstream o;
    o << "sample  lie-invariant  com-invariant  lie-round-trip  com-round-trip\n";
    for (const auto& s : samples) {
        auto inv = [](const Matrix& m) {
            if (m.rows() == 1 && m.cols() == 1) return m(0, 0).get_str();
            std::string r = "[";
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) r += (i || j ? " " : "") + m(i, j).get_str();
            return r + "]";
        };
        o << s.name << "  " << inv(s.invariant_lie) << "  " << inv(s.invariant_com) << "  "
          << to_string(s.lie_round_trip) << "  " << to_string(s.com_round_trip) << "\n";
    }
    o << "pair  lie-homotopic  com-homotopic  product\n";
    for (const auto& p : pairs)
    {
        bool classes = p.i < p.j;
        o << samples[p.i].name << "," << samples[p.j].name << "  " << (classes ? to_string(p.lie) : "-") << "  "
          << (classes ? to_string(p.com) : "-") << "  " << to_string(p.product) << "\n";
    }
    o << (ok ? "result: consistent\n" : "result: FAILED\n");
    for (const auto& f : failures) o << "  " << f << "\n";
    return o.str();
}

MainTheoremReport check_main_theorem(const TheoremSetup& S,
                                     const std::vector<std::pair<std::string, Morphism>>& samples) {
    MainTheoremReport R;
    auto decide = [&](const Morphism& f, const Morphism& g, const std::string& what) {
        try {
            return homotopic(f, g).decision;
        } catch (const Error& e) {
            R.failures.push_back(what + ": " + e.what());
            return Decision::Unknown;
        }
    };
    AlgebraPtr lie_down = recut(S.lie, S.lie->cutoff() - 1);
    TheoremSetup down = theorem_setup(lie_down, S.n);
    std::size_t k_lie = lowest_homology(*S.lie);
    std::size_t k_com = lowest_homology(*S.A_n);
    std::vector<Morphism> images;
    for (const auto& [name, phi] : samples) {
        SampleReport s;
        s.name = name;
        Morphism r = rho(S, phi);
        images.push_back(r);
        if (k_lie) s.invariant_lie = phi.induced_on_homology(int(k_lie));
        if (k_com) s.invariant_com = r.induced_on_homology(int(k_com));
        s.rho_matrix = matrix_of(r, S.n + level_epsilon(S.A_n->flavor()));
        try {
            Morphism back = rho_preimage(S, r);
            s.lie_round_trip = decide(back, transplant(recut(phi, lie_down->cutoff()), lie_down, lie_down),
                                      name + " lie round trip");
            Morphism again = rho(down, transplant(back, down.lie, down.lie));
            Morphism target = transplant(r, down.A_n, down.A_n);
            s.com_round_trip = decide(again, target, name + " com round trip");
        } catch (const Error& e) {
            R.failures.push_back(name + " round trip: " + e.what());
        }
        if (s.lie_round_trip != Decision::Yes || s.com_round_trip != Decision::Yes) R.ok = false;
        R.samples.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j) {
            PairReport p{i, j};
            const std::string tag = samples[i].first + "," + samples[j].first;
            if (i < j) {
                p.lie = decide(samples[i].second, samples[j].second, tag + " lie classes");
                p.com = decide(images[i], images[j], tag + " com classes");
                if (p.lie == Decision::Unknown || p.lie != p.com) {
                    R.ok = false;
                    R.failures.push_back(tag + ": classes are not matched");
                }
            }
            Morphism prod = rho(S, compose(samples[i].second, samples[j].second));
            p.product = decide(prod, compose(images[j], images[i]), tag + " product");
            if (p.product != Decision::Yes) {
                R.ok = false;
                R.failures.push_back(tag + ": rho(φψ) is not homotopic to rho(ψ) rho(φ)");
            }
            R.pairs.push_back(p);
        }
    if (!R.failures.empty()) R.ok = false;
    return R;
}

} // namespace rht
