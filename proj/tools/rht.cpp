// Command-line front end. Exit codes: 0 success, 1 negative result,
// 2 undecided, 3 error.

#include "rht/autalg.hpp"
#include "rht/errors.hpp"
#include "rht/koszul.hpp"
#include "rht/textio.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace rht;

namespace {

enum Exit { Ok = 0, Negative = 1, Undecided = 2, Failure = 3 };

int exit_for(Decision d) {
    switch (d) {
    case Decision::Yes: return Ok;
    case Decision::No: return Negative;
    case Decision::Unknown: return Undecided;
    }
    return Failure;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

AlgebraPtr load(const std::string& path) { return parse_algebra(read_file(path)); }

std::string print_matrix(const Matrix& m) {
    std::ostringstream o;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        o << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) o << (j ? " " : "") << m(i, j).get_str();
        o << "]\n";
    }
    return o.str();
}

// `sample <name>` lines open a block of `map` lines
std::vector<std::pair<std::string, Morphism>> load_samples(const std::string& path, const AlgebraPtr& A) {
    std::istringstream in(read_file(path));
    std::vector<std::pair<std::string, std::string>> blocks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream w(line);
        std::string head;
        w >> head;
        if (head == "sample") {
            std::string name;
            w >> name;
            blocks.push_back({name, ""});
        } else if (head.empty() || head[0] == '#') {
            continue;
        } else if (blocks.empty()) {
            throw PreconditionError(path + ":" + std::to_string(lineno) + ": expected 'sample <name>'");
        } else {
            blocks.back().second += line + "\n";
        }
    }
    std::vector<std::pair<std::string, Morphism>> out;
    for (auto& [name, text] : blocks) out.emplace_back(name, parse_morphism(text, A, A));
    return out;
}

KoszulDual dual_of(const std::string& path, bool ce) {
    std::string text = read_file(path);
    if (is_finite_type_text(text)) {
        FiniteTypeAlgebra F = parse_finite_type(text);
        return ce ? ce_cochains(F) : quillen_L(F);
    }
    AlgebraPtr A = parse_algebra(text);
    return ce ? ce_cochains(A) : quillen_L(A);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with quasi-free dg algebras"};
    app.require_subcommand(1);
    int code = Ok;

    std::string file, file2, source, target, next, f_path, g_path, samples_path, lie_path, com_path;
    int degree = 0, from = 0, to = 0, level = 0;

    auto* check = app.add_subcommand("check", "d² = 0, minimality and sparseness");
    check->add_option("algebra", file)->required();
    check->callback([&] {
        AlgebraPtr A = load(file);  // the parser rejects d² != 0
        std::cout << "minimal: " << yes_no(check_minimal(*A)) << ", sparse: " << yes_no(check_sparsely_generated(*A))
                  << ", d²=0: yes\n";
    });

    auto* trunc = app.add_subcommand("truncate", "subalgebra on generators of degree <= n");
    trunc->add_option("algebra", file)->required();
    trunc->add_option("--degree", degree)->required();
    trunc->callback([&] { std::cout << print_algebra(*truncate(load(file), degree)); });

    auto* hom = app.add_subcommand("homology", "Betti numbers in a degree range");
    hom->add_option("algebra", file)->required();
    hom->add_option("--from", from)->required();
    hom->add_option("--to", to)->required();
    hom->callback([&] {
        auto b = load(file)->homology_in_range(from, to);
        for (int k = from; k <= to; ++k) std::cout << "H" << k << " " << b[std::size_t(k - from)] << "\n";
    });

    auto* emap = app.add_subcommand("extend-map", "extend a map on a truncation over a larger source");
    emap->add_option("map", file)->required();
    emap->add_option("--source", source, "source of the given map")->required();
    emap->add_option("--target", target)->required();
    emap->add_option("--next", next, "larger source")->required();
    emap->callback([&] {
        AlgebraPtr S = load(source), T = load(target), N = load(next);
        try {
            MapExtension e = extend_map(parse_morphism(read_file(file), S, T), N);
            std::cout << print_morphism(e.map);
            for (const auto& [name, dim] : e.freedom) std::cout << "# freedom " << name << " " << dim << "\n";
        } catch (const ObstructionError& e) {
            std::cout << "obstruction: " << e.what() << "\n";
            code = Negative;
        }
    });

    auto* ehom = app.add_subcommand("extend-homotopy", "extend a homotopy on a truncation between two maps");
    ehom->add_option("homotopy", file)->required();
    ehom->add_option("--source", source, "source of the given homotopy")->required();
    ehom->add_option("--target", target)->required();
    ehom->add_option("--next", next, "larger source")->required();
    ehom->add_option("--f", f_path, "map on the larger source")->required();
    ehom->add_option("--g", g_path, "map on the larger source")->required();
    ehom->callback([&] {
        AlgebraPtr S = load(source), T = load(target), N = load(next);
        HomotopyCertificate c = parse_homotopy(read_file(file), S, T);
        Morphism f = parse_morphism(read_file(f_path), N, T), g = parse_morphism(read_file(g_path), N, T);
        try {
            std::cout << print_homotopy(extend_homotopy(c.homotopy, f, g));
        } catch (const ObstructionError& e) {
            std::cout << "obstruction: " << e.what() << "\n";
            code = Negative;
        }
    });

    auto* htp = app.add_subcommand("homotopic", "decide whether two maps are homotopic");
    htp->add_option("f", f_path)->required();
    htp->add_option("g", g_path)->required();
    htp->add_option("--source", source)->required();
    htp->add_option("--target", target)->required();
    htp->callback([&] {
        AlgebraPtr S = load(source), T = load(target);
        HomotopicResult r = homotopic(parse_morphism(read_file(f_path), S, T), parse_morphism(read_file(g_path), S, T));
        std::cout << "homotopic: " << to_string(r.decision) << "\n";
        if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
        if (r.certificate) std::cout << print_homotopy(*r.certificate);
        code = exit_for(r.decision);
    });

    auto* ce = app.add_subcommand("ce", "Chevalley-Eilenberg cochains of a chain algebra");
    ce->add_option("algebra", file)->required();
    ce->callback([&] { std::cout << print_algebra(*dual_of(file, true).algebra); });

    auto* ql = app.add_subcommand("quillen", "Quillen chain algebra of a cochain algebra");
    ql->add_option("algebra", file)->required();
    ql->callback([&] { std::cout << print_algebra(*dual_of(file, false).algebra); });

    auto* mini = app.add_subcommand("minimalize", "minimal model of a cochain algebra");
    mini->add_option("algebra", file)->required();
    mini->callback([&] { std::cout << print_algebra(*minimalize(load(file)).minimal); });

    auto* fg = app.add_subcommand("finite-gen", "is the minimal Quillen model finitely generated");
    fg->add_option("algebra", file)->required();
    fg->callback([&] {
        std::string text = read_file(file);
        FiniteGeneration r = is_finite_type_text(text) ? check_finite_generation(parse_finite_type(text))
                                                       : check_finite_generation(parse_algebra(text));
        std::cout << "finitely generated: " << to_string(r.decision) << "\n";
        if (r.decision == Decision::Yes) std::cout << "generators: " << r.generators << "\n";
        std::cout << "reduced betti sum: " << r.reduced_betti_sum << "\n";
        if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
        code = exit_for(r.decision);
    });

    auto* aut = app.add_subcommand("aut-check", "matrices of sample self-maps at a level");
    aut->add_option("algebra", file)->required();
    aut->add_option("--level", level)->required();
    aut->add_option("--samples", samples_path)->required();
    aut->callback([&] {
        AlgebraPtr A = load(file);
        RestrictedStructure S = restricted_structure(A, level);
        for (const auto& [name, f] : load_samples(samples_path, A)) {
            AutMatrix M = matrix_of(f, level);
            bool iso = is_automorphism(M, S);
            std::cout << "sample " << name << "\n";
            for (int k = 1; k <= level; ++k)
                if (M.blocks[std::size_t(k)].rows() > 0)
                    std::cout << " degree " << k << "\n" << print_matrix(M.blocks[std::size_t(k)]);
            std::cout << " automorphism: " << yes_no(iso) << "\n unipotent: " << yes_no(is_unipotent(M)) << "\n";
            if (iso) {
                HomotopicResult h = homotopic_to_identity(f);
                std::cout << " homotopic to identity: " << to_string(h.decision) << "\n";
            } else {
                code = Negative;
            }
        }
    });

    auto* mt = app.add_subcommand("main-theorem", "compare self-maps of a Lie model with its cochain side");
    mt->add_option("--lie", lie_path)->required();
    mt->add_option("--com", com_path, "cochain model used as a cohomology cross-check")->required();
    mt->add_option("--level", level)->required();
    mt->add_option("--samples", samples_path);
    mt->callback([&] {
        AlgebraPtr L = load(lie_path), C = load(com_path);
        TheoremSetup S = theorem_setup(L, level);
        int top = std::min(S.model.minimal->certified_homology(), C->certified_homology());
        if (S.model.minimal->homology_in_range(0, top) != C->homology_in_range(0, top))
            throw HypothesisError("the given cochain algebra does not have the cohomology of C*(" + lie_path + ")");
        std::vector<std::pair<std::string, Morphism>> samples;
        if (!samples_path.empty()) samples = load_samples(samples_path, L);
        else samples.emplace_back("id", Morphism::identity(L));
        MainTheoremReport R = check_main_theorem(S, samples);
        std::cout << "A_n:\n" << print_algebra(*S.A_n) << R.text();
        if (!R.ok) code = Negative;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? Ok : Failure;
    } catch (const Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return Failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return code;
}
