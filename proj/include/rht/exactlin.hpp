#pragma once
// Exact rational linear algebra over degree-indexed bases.
//
// Every degree of a graded space is handled as an independent dense block of
// GMP rationals. Elimination always pivots on the leftmost nonzero column and
// the first row carrying it, so results are reproducible bit for bit.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

std::string to_string(const Rational& q);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const;
    void set_column(std::size_t c, const Vector& v);
    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(const Rational& s) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Vector operator*(const Matrix& m, const Vector& v);
bool is_zero(const Vector& v);

/// Reduced row echelon form plus pivot columns.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of the null space, one vector per free column (free variable set to 1).
std::vector<Vector> kernel(const Matrix& m);

/// A solution of `m x = b` with every free variable set to zero, or nothing
/// when the system is inconsistent. Throws DimensionError if `b` has the wrong
/// length.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Inverse of a square matrix; nothing when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// dim ker(d_out) - rank(d_in) for the complex  X --d_in--> Y --d_out--> Z.
/// Either map may have zero rows/columns. Throws NotAComplexError if the
/// composite is nonzero and DimensionError if the middle dimensions disagree.
std::size_t homology_dims(const Matrix& d_in, const Matrix& d_out);

/// Finite named basis per integer degree.
class GradedVectorSpace {
public:
    void add(int degree, std::string name);
    const std::vector<std::string>& basis(int degree) const;
    std::size_t dim(int degree) const { return basis(degree).size(); }
    std::vector<int> degrees() const;

private:
    std::map<int, std::vector<std::string>> basis_;
};

/// A degree-shifting linear map between graded spaces, stored block by block.
struct LinearMap {
    int shift = 0;
    std::map<int, Matrix> blocks;  // source degree -> matrix into degree + shift

    LinearMap compose_after(const LinearMap& inner) const;  // this ∘ inner
};

} // namespace rht
