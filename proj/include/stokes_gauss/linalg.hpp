#pragma once

#include "stokes_gauss/exact.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace sg {

using Scalar = GaussRational;
using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static Matrix identity(int n);
    static Matrix from_rows(const std::vector<Vec>& rows, int cols);
    static Matrix from_columns(const std::vector<Vec>& cols, int rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec row(int i) const;
    Vec col(int j) const;
    Matrix transpose() const;
    Matrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const Matrix& m);
    Matrix select(const std::vector<int>& rows, const std::vector<int>& cols) const;
    bool is_zero() const;
    bool is_real() const;

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& a);
Vec operator*(const Matrix& a, const Vec& v);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

struct Echelon {
    Matrix m;                 // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
};

Echelon rref(Matrix m);
int rank(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws on singular
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

// subspace of k^n stored as a reduced row echelon basis
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : n_(ambient) {}
    static Subspace span(const std::vector<Vec>& vecs, int ambient);
    static Subspace column_span(const Matrix& m);
    static Subspace full(int ambient);
    static Subspace coordinates(int ambient, const std::vector<int>& coords);

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }
    Matrix basis_columns() const;  // ambient x dim
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& s) const;
    Vec reduce(const Vec& v) const;  // canonical residual modulo the subspace
    Subspace annihilator() const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

private:
    int n_ = 0;
    std::vector<Vec> basis_;
    std::vector<int> pivots_;
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m, const Subspace& s);
Subspace preimage(const Matrix& m, const Subspace& s);
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);
// coordinates of each basis vector of `sub` with respect to the basis columns of `basis`
Matrix coordinates_in(const Matrix& basis, const Matrix& vectors);

// sparse incremental row echelon over the exact field
using SparseRow = std::vector<std::pair<int, Scalar>>;

class SparseEchelon {
public:
    explicit SparseEchelon(int cols) : cols_(cols) {}
    bool add(const SparseRow& row);  // true iff independent of earlier rows
    SparseRow reduce(const SparseRow& row) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

private:
    int cols_;
    std::vector<SparseRow> rows_;  // leading coefficient 1
    std::map<int, int> pivot_;     // column -> row
};

}  // namespace sg
