#ifndef DGW_MATRIX_HPP
#define DGW_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dgw/field.hpp"

namespace dgw {

using Vector = std::vector<Fp>;

bool is_zero(std::span<const Fp> v) noexcept;

/// Dense matrix over GF(p). Shape is fixed at construction.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    /// Matrix whose columns are the given vectors, each of length `rows`.
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);
    static Matrix from_rows(std::size_t cols, const std::vector<Vector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Fp& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Fp operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Fp> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Fp> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;

    bool is_zero() const noexcept { return dgw::is_zero(data_); }

    Vector apply(std::span<const Fp> v) const;
    Matrix transpose() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(Fp s) const;
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fp> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivots[i] is the pivot column of row i
    std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon rref(Matrix m);

struct RankKernel {
    std::size_t rank = 0;
    std::vector<Vector> kernel;  // one vector per free column, unit entry there
};

/// Row rank plus a basis of {v : m v = 0}. The basis is the canonical one read
/// off the reduced echelon form, so equal inputs give identical outputs.
RankKernel rank_and_kernel(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Canonical solution of m v = target with free variables set to zero, or
/// nullopt when target is outside the column span.
std::optional<Vector> solve(const Matrix& m, std::span<const Fp> target);

/// Representatives of a basis of ker(outgoing) / im(incoming), where
/// incoming maps into the space and outgoing maps out of it. Zero-sized
/// matrices stand for zero maps; `dim` is the dimension of the middle space.
std::vector<Vector> cohomology_representatives(const Matrix& incoming, const Matrix& outgoing, std::size_t dim);
std::size_t cohomology_dimension(const Matrix& incoming, const Matrix& outgoing, std::size_t dim);

/// Incrementally built subspace of GF(p)^n kept in reduced echelon form.
class Subspace {
public:
    explicit Subspace(std::size_t ambient) : n_(ambient) {}

    std::size_t ambient() const noexcept { return n_; }
    std::size_t dim() const noexcept { return rows_.size(); }

    /// Reduces v against the basis in place; returns true when v became zero.
    bool reduce(Vector& v) const;
    /// Adds v; returns false (and leaves the space unchanged) if v is dependent.
    bool add(Vector v);
    bool contains(Vector v) const { return reduce(v); }

    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    /// Coordinates not used as pivots; their unit vectors span a complement.
    std::vector<std::size_t> free_coordinates() const;

private:
    std::size_t n_;
    std::vector<Vector> rows_;  // each normalised to 1 at its pivot, fully reduced
    std::vector<std::size_t> pivots_;
};

}  // namespace dgw

#endif
