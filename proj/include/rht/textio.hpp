#pragma once
// Line-oriented text formats.
//
//   algebra <com|lie|assoc> <chain|cochain> [unitary|reduced] cutoff <D>
//   gen <name> <degree>
//   d <name> = <expr>
//
// Expressions are rational combinations of products `a*b`, brackets `[a,b]`,
// parenthesized sub-expressions and powers `a^3`; coefficients are written
// `p/q` and may be juxtaposed (`1/2 [x1,x1]`) or multiplied (`2*u`). Lines
// starting with `#` are comments. Morphism files hold `map <name> = <expr>`
// lines. Finite-type presentations use
//
//   finite <com|lie|assoc> <chain|cochain> [unitary|reduced] cutoff <D>
//   basis <name> <degree>
//   prod <a> <b> = <linear combination of basis names>
//   d <name> = <linear combination of basis names>
//
// where the product of b and a is filled in by graded (anti)symmetry for Com
// and Lie unless given explicitly.

#include "rht/dga.hpp"

#include <string>

namespace rht {

AlgebraPtr parse_algebra(const std::string& text);
std::string print_algebra(const QuasiFreeAlgebra& A);

Element parse_element(const FreeAlgebra& F, const std::string& text);
/// Canonical form: Lie elements in the right-normed bracket basis, other
/// flavors as sorted monomials.
std::string print_element(const FreeAlgebra& F, const Element& x);

Morphism parse_morphism(const std::string& text, const AlgebraPtr& source, const AlgebraPtr& target);
std::string print_morphism(const Morphism& f);

FiniteTypeAlgebra parse_finite_type(const std::string& text);
std::string print_finite_type(const FiniteTypeAlgebra& F);

/// True if the text starts with a `finite` header (after comments).
bool is_finite_type_text(const std::string& text);

std::string read_file(const std::string& path);

} // namespace rht
