#include "stokes_gauss/linalg.hpp"

#include "stokes_gauss/errors.hpp"

namespace sg {

static void check(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
    Matrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i) {
        check(static_cast<int>(rows[i].size()) == cols, "from_rows: ragged rows");
        for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, int rows) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        check(static_cast<int>(cols[j].size()) == rows, "from_columns: ragged columns");
        for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::row(int i) const { return Vec(a_.begin() + static_cast<size_t>(i) * c_, a_.begin() + static_cast<size_t>(i + 1) * c_); }

Vec Matrix::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    check(r0 >= 0 && c0 >= 0 && r0 + nr <= r_ && c0 + nc <= c_, "block out of range");
    Matrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& m) {
    check(r0 + m.rows() <= r_ && c0 + m.cols() <= c_, "set_block out of range");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::select(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
}

bool Matrix::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_real() const {
    for (auto& x : a_)
        if (!x.is_real()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    check(a.cols() == b.rows(), "matrix product shape");
    Matrix m(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    check(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum shape");
    Matrix m = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) += b(i, j);
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    check(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference shape");
    Matrix m = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) -= b(i, j);
    return m;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix m = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
    return m;
}

Vec operator*(const Matrix& a, const Vec& v) {
    check(a.cols() == static_cast<int>(v.size()), "matrix-vector shape");
    Vec out(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
    return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    int r = 0, c = 0;
    for (auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix m(r, c);
    r = c = 0;
    for (auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

Echelon rref(Matrix m) {
    Echelon e;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Scalar inv = m(row, col).inverse();
        for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix inverse(const Matrix& m) {
    check(m.rows() == m.cols(), "inverse of non-square matrix");
    int n = m.rows();
    Matrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(n));
    Echelon e = rref(aug);
    if (static_cast<int>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] >= n))
        throw Error(ErrorCode::InvalidData, "matrix is singular");
    return e.m.block(0, n, n, n);
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    check(m.rows() == b.rows(), "solve shape");
    Matrix aug(m.rows(), m.cols() + b.cols());
    aug.set_block(0, 0, m);
    aug.set_block(0, m.cols(), b);
    Echelon e = rref(aug);
    Matrix x(m.cols(), b.cols());
    for (size_t k = 0; k < e.pivots.size(); ++k) {
        int p = e.pivots[k];
        if (p >= m.cols()) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j) x(p, j) = e.m(static_cast<int>(k), m.cols() + j);
    }
    return x;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    auto x = solve(m, Matrix::from_columns({b}, static_cast<int>(b.size())));
    if (!x) return std::nullopt;
    return x->col(0);
}

// ---- Subspace

Subspace Subspace::span(const std::vector<Vec>& vecs, int ambient) {
    Subspace s(ambient);
    if (vecs.empty()) return s;
    Echelon e = rref(Matrix::from_rows(vecs, ambient));
    for (size_t k = 0; k < e.pivots.size(); ++k) s.basis_.push_back(e.m.row(static_cast<int>(k)));
    s.pivots_ = e.pivots;
    return s;
}

Subspace Subspace::column_span(const Matrix& m) {
    std::vector<Vec> cols;
    for (int j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    return span(cols, m.rows());
}

Subspace Subspace::full(int ambient) {
    std::vector<int> all(ambient);
    for (int i = 0; i < ambient; ++i) all[i] = i;
    return coordinates(ambient, all);
}

Subspace Subspace::coordinates(int ambient, const std::vector<int>& coords) {
    std::vector<Vec> vecs;
    for (int c : coords) {
        Vec v(ambient);
        v[c] = Scalar(1);
        vecs.push_back(std::move(v));
    }
    return span(vecs, ambient);
}

Matrix Subspace::basis_columns() const { return Matrix::from_columns(basis_, n_); }

Vec Subspace::reduce(const Vec& v0) const {
    check(static_cast<int>(v0.size()) == n_, "reduce: ambient mismatch");
    Vec v = v0;
    for (size_t k = 0; k < basis_.size(); ++k) {
        int p = pivots_[k];
        if (v[p].is_zero()) continue;
        Scalar f = v[p];
        for (int j = p; j < n_; ++j)
            if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
    }
    return v;
}

bool Subspace::contains(const Vec& v) const {
    for (auto& x : reduce(v))
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& s) const {
    for (auto& b : s.basis_)
        if (!contains(b)) return false;
    return true;
}

Subspace Subspace::annihilator() const {
    if (basis_.empty()) return full(n_);
    return kernel(Matrix::from_rows(basis_, n_));
}

Subspace kernel(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> vecs;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.m(static_cast<int>(k), f);
        vecs.push_back(std::move(v));
    }
    return Subspace::span(vecs, m.cols());
}

Subspace image(const Matrix& m, const Subspace& s) {
    check(m.cols() == s.ambient(), "image: ambient mismatch");
    std::vector<Vec> vecs;
    for (auto& b : s.basis()) vecs.push_back(m * b);
    return Subspace::span(vecs, m.rows());
}

Subspace preimage(const Matrix& m, const Subspace& s) {
    check(m.rows() == s.ambient(), "preimage: ambient mismatch");
    Subspace ann = s.annihilator();
    if (ann.dim() == 0) return Subspace::full(m.cols());
    return kernel(Matrix::from_rows(ann.basis(), m.rows()) * m);
}

Subspace sum(const Subspace& u, const Subspace& v) {
    check(u.ambient() == v.ambient(), "sum: ambient mismatch");
    std::vector<Vec> vecs = u.basis();
    vecs.insert(vecs.end(), v.basis().begin(), v.basis().end());
    return Subspace::span(vecs, u.ambient());
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    check(u.ambient() == v.ambient(), "intersect: ambient mismatch");
    return sum(u.annihilator(), v.annihilator()).annihilator();
}

Matrix coordinates_in(const Matrix& basis, const Matrix& vectors) {
    auto x = solve(basis, vectors);
    if (!x) throw Error(ErrorCode::NoSolution, "vectors are not in the span of the basis");
    return *x;
}

// ---- SparseEchelon

SparseRow SparseEchelon::reduce(const SparseRow& row) const {
    std::map<int, Scalar> acc;
    for (auto& [c, x] : row)
        if (!x.is_zero()) acc[c] += x;
    auto it = acc.begin();
    while (it != acc.end()) {
        if (it->second.is_zero()) {
            it = acc.erase(it);
            continue;
        }
        auto pv = pivot_.find(it->first);
        if (pv == pivot_.end()) {
            ++it;
            continue;
        }
        Scalar f = it->second;
        const SparseRow& pr = rows_[pv->second];
        for (size_t k = 1; k < pr.size(); ++k) {
            auto [c, x] = pr[k];
            auto jt = acc.find(c);
            if (jt == acc.end()) acc.emplace(c, -(f * x));
            else {
                jt->second -= f * x;
                if (jt->second.is_zero()) acc.erase(jt);
            }
        }
        it = acc.erase(it);
    }
    return SparseRow(acc.begin(), acc.end());
}

bool SparseEchelon::add(const SparseRow& row) {
    SparseRow r = reduce(row);
    if (r.empty()) return false;
    Scalar inv = r.front().second.inverse();
    for (auto& e : r) e.second = e.second * inv;
    pivot_[r.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

}  // namespace sg
