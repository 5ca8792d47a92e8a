#include "rht/textio.hpp"

#include "rht/errors.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace rht {

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> meaningful_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string s;
    int n = 0;
    while (std::getline(in, s)) {
        ++n;
        auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back({n, s});
    }
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> w;
    std::string t;
    while (in >> t) w.push_back(t);
    return w;
}

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Recursive-descent parser for rational combinations of monomials.
class ExprParser {
public:
    using Resolve = std::function<Element(const std::string&)>;
    using Binary = std::function<Element(const Element&, const Element&)>;

    ExprParser(const std::string& s, int line, int col0, Resolve name, Binary product, Binary bracket)
        : s_(s), line_(line), col0_(col0), name_(std::move(name)), product_(std::move(product)),
          bracket_(std::move(bracket)) {}

    Element parse() {
        Element e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col0_ + int(pos_) + 1, what); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Element expr() {
        Element acc;
        bool first = true;
        while (true) {
            skip();
            Rational sign = 1;
            if (peek('+') || peek('-')) {
                if (s_[pos_] == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                break;
            }
            acc += sign * term();
            first = false;
            skip();
            if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
        }
        return acc;
    }

    bool at_number() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    Rational number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string num = s_.substr(start, pos_ - start);
        std::string den = "1";
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            den = s_.substr(ds, pos_ - ds);
            if (den.empty()) fail("expected denominator");
        }
        Rational q(num + "/" + den);
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        q.canonicalize();
        return q;
    }

    bool at_factor() {
        skip();
        return pos_ < s_.size() && (s_[pos_] == '[' || s_[pos_] == '(' || is_name_char(s_[pos_]));
    }

    Element term() {
        Rational coef = 1;
        std::optional<Element> value;
        while (true) {
            if (at_number()) {
                std::size_t save = pos_;
                Rational q = number();
                // a number glued to letters is a name such as 2x? not allowed
                if (pos_ < s_.size() && is_name_char(s_[pos_]) && !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    pos_ = save;
                    fail("malformed number");
                }
                coef *= q;
            } else if (at_factor()) {
                Element f = power();
                value = value ? product_(*value, f) : f;
            } else {
                fail("expected a term");
            }
            skip();
            if (peek('*')) {
                ++pos_;
                continue;
            }
            if (at_factor() && !at_number()) continue;
            break;
        }
        if (!value) fail("constant terms are not allowed in a reduced algebra");
        return coef * *value;
    }

    Element power() {
        Element base = factor();
        if (peek('^')) {
            ++pos_;
            skip();
            if (!at_number()) fail("expected exponent");
            Rational e = number();
            if (e.get_den() != 1 || e < 1) fail("exponent must be a positive integer");
            Element r = base;
            for (long k = 1; k < e.get_num().get_si(); ++k) r = product_(r, base);
            return r;
        }
        return base;
    }

    Element factor() {
        skip();
        if (s_[pos_] == '(') {
            ++pos_;
            Element e = expr();
            expect(')');
            return e;
        }
        if (s_[pos_] == '[') {
            ++pos_;
            Element a = expr();
            expect(',');
            Element b = expr();
            expect(']');
            return bracket_(a, b);
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        try {
            return name_(name);
        } catch (const Error& e) {
            pos_ = start;
            fail(e.what());
        }
    }

    const std::string& s_;
    int line_, col0_;
    Resolve name_;
    Binary product_, bracket_;
    std::size_t pos_ = 0;
};

Element parse_in(const FreeAlgebra& F, const std::string& s, int line, int col0) {
    auto resolve = [&](const std::string& name) {
        auto i = F.generators().index(name);
        if (!i) throw DimensionError("unknown generator '" + name + "'");
        return F.generator(*i);
    };
    auto product = [&](const Element& a, const Element& b) {
        if (F.flavor().operad == Operad::Lie) throw ParseError(line, col0, "use brackets in a Lie algebra");
        return F.ambient_product(a, b);
    };
    auto bracket = [&](const Element& a, const Element& b) {
        try {
            return F.bracket(a, b);
        } catch (const FlavorError&) {
            throw ParseError(line, col0, "brackets are not available in a commutative algebra");
        }
    };
    Element e = ExprParser(s, line, col0, resolve, product, bracket).parse();
    try {
        F.degree(e);
    } catch (const DegreeError&) {
        throw ParseError(line, col0 + 1, "inhomogeneous expression");
    }
    return e;
}

struct Header {
    Flavor flavor;
    int cutoff = 0;
};

Header parse_header(const Line& l, const std::string& keyword) {
    auto w = words(l.text);
    if (w.empty() || w[0] != keyword) throw ParseError(l.number, 1, "expected '" + keyword + "' header");
    Header h;
    std::size_t k = 1;
    if (k >= w.size()) throw ParseError(l.number, 1, "missing operad");
    if (w[k] == "com") h.flavor.operad = Operad::Com;
    else if (w[k] == "lie") h.flavor.operad = Operad::Lie;
    else if (w[k] == "assoc") h.flavor.operad = Operad::Assoc;
    else throw ParseError(l.number, 1, "unknown operad '" + w[k] + "'");
    ++k;
    if (k >= w.size()) throw ParseError(l.number, 1, "missing direction");
    if (w[k] == "chain") h.flavor.direction = Direction::Chain;
    else if (w[k] == "cochain") h.flavor.direction = Direction::Cochain;
    else throw ParseError(l.number, 1, "unknown direction '" + w[k] + "'");
    ++k;
    h.flavor.unitary = false;
    if (k < w.size() && (w[k] == "unitary" || w[k] == "reduced")) {
        h.flavor.unitary = w[k] == "unitary";
        if (h.flavor.unitary && h.flavor.operad == Operad::Lie)
            throw ParseError(l.number, 1, "Lie algebras are always reduced");
        ++k;
    }
    if (k + 1 >= w.size() || w[k] != "cutoff") throw ParseError(l.number, 1, "expected 'cutoff <D>'");
    try {
        std::size_t used = 0;
        h.cutoff = std::stoi(w[k + 1], &used);
        if (used != w[k + 1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError(l.number, 1, "bad cutoff '" + w[k + 1] + "'");
    }
    if (k + 2 != w.size()) throw ParseError(l.number, 1, "trailing tokens in header");
    return h;
}

int parse_int(const std::string& s, const Line& l) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(l.number, int(l.text.find(s)) + 1, "expected an integer, got '" + s + "'");
}

// Splits "d name = expr" style lines; returns name and expression column.
std::pair<std::string, std::size_t> split_assignment(const Line& l, const std::string& keyword) {
    std::size_t eq = l.text.find('=');
    if (eq == std::string::npos) throw ParseError(l.number, 1, "expected '='");
    auto lhs = words(l.text.substr(0, eq));
    if (lhs.size() != 2 || lhs[0] != keyword) throw ParseError(l.number, 1, "expected '" + keyword + " <name> ='");
    return {lhs[1], eq + 1};
}

std::string format_terms(const std::vector<std::pair<std::string, Rational>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [label, c] = terms[i];
        Rational a = abs(c);
        if (i == 0) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        if (a != 1) out += a.get_str() + " ";
        out += label;
    }
    return out;
}

std::string flavor_header(const Flavor& f, int cutoff) {
    std::string s = to_string(f.operad) + " " + to_string(f.direction);
    if (f.operad != Operad::Lie) s += f.unitary ? " unitary" : " reduced";
    return s + " cutoff " + std::to_string(cutoff);
}

} // namespace

Element parse_element(const FreeAlgebra& F, const std::string& text) { return parse_in(F, text, 1, 0); }

std::string print_element(const FreeAlgebra& F, const Element& x) {
    auto deg = F.degree(x);
    if (!deg) return "0";
    std::vector<std::pair<std::string, Rational>> terms;
    if (F.flavor().operad == Operad::Lie) {
        Vector c = F.coordinates(x, *deg);
        const auto& B = F.basis(*deg);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (sgn(c[j]) != 0) terms.push_back({B.labels[j], c[j]});
    } else {
        for (const auto& [w, c] : x.terms()) terms.push_back({F.monomial_label(w), c});
    }
    return format_terms(terms);
}

AlgebraPtr parse_algebra(const std::string& text) {
    auto lines = meaningful_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "empty algebra file");
    Header h = parse_header(lines[0], "algebra");
    std::vector<Generator> gens;
    std::vector<const Line*> dlines;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto w = words(lines[i].text);
        if (w[0] == "gen") {
            if (w.size() != 3) throw ParseError(lines[i].number, 1, "expected 'gen <name> <degree>'");
            for (char c : w[1])
                if (!is_name_char(c)) throw ParseError(lines[i].number, 5, "bad generator name '" + w[1] + "'");
            gens.push_back({w[1], parse_int(w[2], lines[i])});
        } else if (w[0] == "d") {
            dlines.push_back(&lines[i]);
        } else {
            throw ParseError(lines[i].number, 1, "unknown directive '" + w[0] + "'");
        }
    }
    Generators G(gens);
    FreeAlgebra F(h.flavor, G);
    std::vector<Element> d(G.size());
    std::vector<bool> seen(G.size(), false);
    for (const Line* l : dlines) {
        auto [name, col] = split_assignment(*l, "d");
        auto i = G.index(name);
        if (!i) throw ParseError(l->number, 3, "unknown generator '" + name + "'");
        if (seen[*i]) throw ParseError(l->number, 3, "differential of '" + name + "' given twice");
        seen[*i] = true;
        d[*i] = parse_in(F, l->text.substr(col), l->number, int(col));
        auto deg = F.degree(d[*i]);
        if (deg && *deg != G[*i].degree + h.flavor.differential_degree())
            throw DegreeError("line " + std::to_string(l->number) + ": d(" + name + ") has degree " +
                              std::to_string(*deg) + ", expected " +
                              std::to_string(G[*i].degree + h.flavor.differential_degree()));
    }
    return std::make_shared<QuasiFreeAlgebra>(h.flavor, G, std::move(d), h.cutoff);
}

std::string print_algebra(const QuasiFreeAlgebra& A) {
    std::string out = "algebra " + flavor_header(A.flavor(), A.cutoff()) + "\n";
    for (const auto& g : A.generators().all()) out += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
    for (std::size_t i = 0; i < A.size(); ++i)
        if (!A.d_of(int(i)).is_zero())
            out += "d " + A.generators()[i].name + " = " + print_element(A.free(), A.d_of(int(i))) + "\n";
    return out;
}

Morphism parse_morphism(const std::string& text, const AlgebraPtr& source, const AlgebraPtr& target) {
    std::vector<Element> imgs(source->size());
    std::vector<bool> seen(source->size(), false);
    for (const auto& l : meaningful_lines(text)) {
        auto w = words(l.text);
        if (w[0] == "morphism") continue;
        auto [name, col] = split_assignment(l, "map");
        auto i = source->generators().index(name);
        if (!i) throw ParseError(l.number, 5, "unknown source generator '" + name + "'");
        if (seen[*i]) throw ParseError(l.number, 5, "image of '" + name + "' given twice");
        seen[*i] = true;
        imgs[*i] = parse_in(target->free(), l.text.substr(col), l.number, int(col));
    }
    return Morphism(source, target, std::move(imgs));
}

std::string print_morphism(const Morphism& f) {
    std::string out;
    for (std::size_t i = 0; i < f.source()->size(); ++i)
        out += "map " + f.source()->generators()[i].name + " = " +
               print_element(f.target()->free(), f.image(int(i))) + "\n";
    return out;
}

bool is_finite_type_text(const std::string& text) {
    auto lines = meaningful_lines(text);
    return !lines.empty() && words(lines[0].text)[0] == "finite";
}

FiniteTypeAlgebra parse_finite_type(const std::string& text) {
    auto lines = meaningful_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "empty file");
    Header h = parse_header(lines[0], "finite");
    FiniteTypeAlgebra F;
    F.flavor = h.flavor;
    F.cutoff = h.cutoff;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto w = words(lines[i].text);
        if (w[0] != "basis") continue;
        if (w.size() != 3) throw ParseError(lines[i].number, 1, "expected 'basis <name> <degree>'");
        for (const auto& b : F.basis)
            if (b.name == w[1]) throw ParseError(lines[i].number, 7, "duplicate basis name '" + w[1] + "'");
        F.basis.push_back({w[1], parse_int(w[2], lines[i])});
    }
    F.d.resize(F.basis.size());
    auto lincomb = [&](const Line& l, std::size_t col) {
        auto resolve = [&](const std::string& name) { return Element::monomial({F.index(name)}); };
        auto nope = [&](const Element&, const Element&) -> Element {
            throw ParseError(l.number, int(col) + 1, "expected a linear combination of basis names");
        };
        Element e = ExprParser(l.text.substr(col), l.number, int(col), resolve, nope, nope).parse();
        std::vector<std::pair<int, Rational>> v;
        for (const auto& [word, c] : e.terms()) v.push_back({word[0], c});
        return v;
    };
    std::map<std::pair<int, int>, bool> explicit_prod;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        auto w = words(l.text);
        if (w[0] == "basis") continue;
        if (w[0] == "d") {
            auto [name, col] = split_assignment(l, "d");
            int a;
            try {
                a = F.index(name);
            } catch (const Error& e) {
                throw ParseError(l.number, 3, e.what());
            }
            F.d[a] = lincomb(l, col);
        } else if (w[0] == "prod") {
            std::size_t eq = l.text.find('=');
            auto lhs = words(l.text.substr(0, eq == std::string::npos ? 0 : eq));
            if (eq == std::string::npos || lhs.size() != 3) throw ParseError(l.number, 1, "expected 'prod <a> <b> = ...'");
            int a, b;
            try {
                a = F.index(lhs[1]);
                b = F.index(lhs[2]);
            } catch (const Error& e) {
                throw ParseError(l.number, 6, e.what());
            }
            F.product[{a, b}] = lincomb(l, eq + 1);
            explicit_prod[{a, b}] = true;
        } else {
            throw ParseError(l.number, 1, "unknown directive '" + w[0] + "'");
        }
    }
    if (F.flavor.operad != Operad::Assoc) {
        auto copy = F.product;
        for (const auto& [ab, v] : copy) {
            auto [a, b] = ab;
            if (explicit_prod.count({b, a})) continue;
            Rational s = parity_sign(long(F.basis[a].degree) * F.basis[b].degree);
            if (F.flavor.operad == Operad::Lie) s = -s;
            std::vector<std::pair<int, Rational>> r;
            for (const auto& [j, q] : v) r.push_back({j, s * q});
            F.product[{b, a}] = std::move(r);
        }
    }
    F.validate();
    return F;
}

std::string print_finite_type(const FiniteTypeAlgebra& F) {
    std::string out = "finite " + flavor_header(F.flavor, F.cutoff) + "\n";
    for (const auto& b : F.basis) out += "basis " + b.name + " " + std::to_string(b.degree) + "\n";
    auto comb = [&](const std::vector<std::pair<int, Rational>>& v) {
        std::vector<std::pair<std::string, Rational>> t;
        for (const auto& [j, q] : v) t.push_back({F.basis[j].name, q});
        return format_terms(t);
    };
    for (const auto& [ab, v] : F.product)
        if (!v.empty()) out += "prod " + F.basis[ab.first].name + " " + F.basis[ab.second].name + " = " + comb(v) + "\n";
    for (std::size_t i = 0; i < F.basis.size(); ++i)
        if (!F.d[i].empty()) out += "d " + F.basis[i].name + " = " + comb(F.d[i]) + "\n";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace rht
