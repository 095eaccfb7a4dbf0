#include "dgw/matrix.hpp"

#include <algorithm>
#include <ostream>

#include "dgw/errors.hpp"

namespace dgw {

void Field::set_characteristic(std::uint32_t p)
{
    if (p < 2 || p >= (1u << 31)) throw InputError("characteristic out of range: " + std::to_string(p));
    for (std::uint32_t q = 2; std::uint64_t{q} * q <= p; ++q)
        if (p % q == 0) throw InputError("characteristic is not prime: " + std::to_string(p));
    p_ = p;
}

Fp Fp::inverse() const noexcept
{
    Fp result(1);
    Fp base = *this;
    std::uint32_t e = Field::characteristic() - 2;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::int64_t Fp::balanced() const noexcept
{
    const std::int64_t p = Field::characteristic();
    return v_ > p / 2 ? std::int64_t{v_} - p : std::int64_t{v_};
}

std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.balanced(); }

bool is_zero(std::span<const Fp> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](Fp x) { return x.is_zero(); });
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Fp(1);
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& cols)
{
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw InputError("from_columns: column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vector>& rows)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("from_rows: row length mismatch");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vector Matrix::apply(std::span<const Fp> v) const
{
    if (v.size() != cols_) throw InputError("apply: vector length mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Fp acc;
        auto rr = row(r);
        for (std::size_t c = 0; c < cols_; ++c)
            if (!v[c].is_zero()) acc += rr[c] * v[c];
        out[r] = acc;
    }
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) throw InputError("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            Fp x = a(i, k);
            if (x.is_zero()) continue;
            auto brow = b.row(k);
            auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!brow[j].is_zero()) orow[j] += x * brow[j];
        }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(Fp(-1)); }

Matrix Matrix::scaled(Fp s) const
{
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

Echelon rref(Matrix m)
{
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        Fp inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            Fp f = m(i, c);
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

RankKernel rank_and_kernel(const Matrix& m)
{
    Echelon e = rref(m);
    RankKernel out;
    out.rank = e.rank();
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols());
        v[f] = Fp(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

std::optional<Vector> solve(const Matrix& m, std::span<const Fp> target)
{
    if (target.size() != m.rows()) throw InputError("solve: target length does not match row count");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = target[r];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector v(m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = e.reduced(i, m.cols());
    return v;
}

bool Subspace::reduce(Vector& v) const
{
    if (v.size() != n_) throw InputError("Subspace: vector length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Fp f = v[pivots_[i]];
        if (f.is_zero()) continue;
        const Vector& row = rows_[i];
        for (std::size_t j = 0; j < n_; ++j)
            if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return is_zero(v);
}

bool Subspace::add(Vector v)
{
    if (reduce(v)) return false;
    std::size_t p = 0;
    while (v[p].is_zero()) ++p;
    Fp inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
        Fp f = row[p];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j)
            if (!v[j].is_zero()) row[j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

std::vector<std::size_t> Subspace::free_coordinates() const
{
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        if (k < pivots_.size() && pivots_[k] == j) {
            ++k;
            continue;
        }
        out.push_back(j);
    }
    return out;
}

std::vector<Vector> cohomology_representatives(const Matrix& incoming, const Matrix& outgoing, std::size_t dim)
{
    Subspace image(dim);
    for (std::size_t c = 0; c < incoming.cols(); ++c) image.add(incoming.column(c));
    std::vector<Vector> kernel;
    if (outgoing.rows() == 0) {
        for (std::size_t i = 0; i < dim; ++i) {
            Vector v(dim);
            v[i] = Fp(1);
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = rank_and_kernel(outgoing).kernel;
    }
    std::vector<Vector> reps;
    for (auto& v : kernel)
        if (image.add(v)) reps.push_back(std::move(v));
    return reps;
}

std::size_t cohomology_dimension(const Matrix& incoming, const Matrix& outgoing, std::size_t dim)
{
    const std::size_t ker = outgoing.rows() == 0 ? dim : dim - rank(outgoing);
    const std::size_t im = incoming.cols() == 0 ? 0 : rank(incoming);
    return ker - im;
}

}  // namespace dgw
