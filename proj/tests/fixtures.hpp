#pragma once

#include "rht/textio.hpp"

#include <string>

inline std::string fixture_path(const std::string& name) { return std::string(RHT_FIXTURE_DIR) + "/" + name; }

inline rht::AlgebraPtr load_algebra(const std::string& name) {
    return rht::parse_algebra(rht::read_file(fixture_path(name)));
}

inline rht::FiniteTypeAlgebra load_finite(const std::string& name) {
    return rht::parse_finite_type(rht::read_file(fixture_path(name)));
}

inline rht::Element el(const rht::AlgebraPtr& A, const std::string& s) { return rht::parse_element(A->free(), s); }

inline rht::Morphism morphism(const rht::AlgebraPtr& s, const rht::AlgebraPtr& t, const std::string& text) {
    return rht::parse_morphism(text, s, t);
}
