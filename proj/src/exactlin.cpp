#include "rht/exactlin.hpp"

#include "rht/errors.hpp"

#include <algorithm>
#include <set>

namespace rht {

std::string to_string(const Rational& q) { return q.get_str(); }

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw DimensionError("column length " + std::to_string(v.size()) +
                                                " does not match " + std::to_string(rows_) + " rows");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
        throw DimensionError("cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                             " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(-1); }

Matrix Matrix::scaled(const Rational& s) const {
    Matrix m = *this;
    for (auto& x : m.data_) x *= s;
    return m;
}

Vector operator*(const Matrix& m, const Vector& v) {
    if (v.size() != m.cols()) throw DimensionError("vector length does not match matrix columns");
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (sgn(v[c]) != 0 && sgn(m(r, c)) != 0) out[r] += m(r, c) * v[c];
    return out;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Echelon rref(Matrix m) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (sgn(m(row, c)) != 0) m(r, c) -= f * m(row, c);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return rref(m).pivots.size();
}

std::vector<Vector> kernel(const Matrix& m) {
    Echelon e = rref(m);
    std::set<std::size_t> pivot_set(e.pivots.begin(), e.pivots.end());
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (pivot_set.count(free)) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows())
        throw DimensionError("right-hand side has length " + std::to_string(b.size()) + ", expected " +
                             std::to_string(m.rows()));
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    Echelon e = rref(std::move(aug));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

std::size_t homology_dims(const Matrix& d_in, const Matrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw DimensionError("middle dimensions disagree: " + std::to_string(d_in.rows()) + " vs " +
                             std::to_string(d_out.cols()));
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw NotAComplexError("composite of consecutive differentials is nonzero");
    std::size_t middle = d_out.cols();
    std::size_t cycles = middle - rank(d_out);
    return cycles - rank(d_in);
}

void GradedVectorSpace::add(int degree, std::string name) {
    auto& b = basis_[degree];
    if (std::find(b.begin(), b.end(), name) != b.end())
        throw DimensionError("duplicate basis name '" + name + "' in degree " + std::to_string(degree));
    b.push_back(std::move(name));
}

const std::vector<std::string>& GradedVectorSpace::basis(int degree) const {
    static const std::vector<std::string> empty;
    auto it = basis_.find(degree);
    return it == basis_.end() ? empty : it->second;
}

std::vector<int> GradedVectorSpace::degrees() const {
    std::vector<int> out;
    for (const auto& [d, b] : basis_)
        if (!b.empty()) out.push_back(d);
    return out;
}

LinearMap LinearMap::compose_after(const LinearMap& inner) const {
    LinearMap out;
    out.shift = shift + inner.shift;
    for (const auto& [deg, m] : inner.blocks) {
        auto it = blocks.find(deg + inner.shift);
        if (it == blocks.end()) continue;
        out.blocks[deg] = it->second * m;
    }
    return out;
}

} // namespace rht
