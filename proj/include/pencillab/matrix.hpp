#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "pencillab/types.hpp"

namespace pencillab {

using CVector = std::vector<Cx>;

/// Dense row-major complex matrix.
///
/// Most of the library works with square matrices; rectangular shapes are
/// supported because subspace bases and stacked systems need them. Entry
/// finiteness is checked at the I/O boundary (see all_finite()), not on every
/// arithmetic operation.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    explicit CMatrix(std::size_t n) : CMatrix(n, n) {}
    CMatrix(std::initializer_list<std::initializer_list<Cx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t n) { return CMatrix(n, n); }
    static CMatrix diagonal(std::span<const Cx> values);
    /// Matrix whose columns are the given vectors (all of equal length).
    static CMatrix from_columns(const std::vector<CVector>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    /// Dimension of a square matrix.
    std::size_t n() const noexcept { return rows_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Cx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Cx> data() const noexcept { return data_; }
    std::span<Cx> data() noexcept { return data_; }

    CVector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const Cx> v);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    Cx trace() const;
    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Cx s);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Cx s, CMatrix a);
CMatrix operator*(CMatrix a, Cx s);
CVector operator*(const CMatrix& a, std::span<const Cx> v);

std::ostream& operator<<(std::ostream& os, const CMatrix& m);

/// a + s*I for square a.
CMatrix shifted(const CMatrix& a, Cx s);
/// Integer power by repeated squaring; power(M, 0) = I.
CMatrix power(const CMatrix& m, unsigned k);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

double norm_fro(const CMatrix& m);
/// Maximum absolute column sum.
double norm_1(const CMatrix& m);
/// Spectral norm estimate by power iteration on M^H M.
double norm_2_estimate(const CMatrix& m, int iterations = 60);

double norm(std::span<const Cx> v);
Cx dot(std::span<const Cx> a, std::span<const Cx> b);  // conj(a) . b

/// Solves a X = b by LU with partial pivoting. Throws IllConditioned when a
/// pivot vanishes relative to the matrix scale.
CMatrix solve(const CMatrix& a, const CMatrix& b);
CMatrix inverse(const CMatrix& a);
/// Determinant through the same LU factorization.
Cx determinant(const CMatrix& a);

/// Throws std::invalid_argument unless m is square with n >= 1.
void require_square(const CMatrix& m, const char* what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

}  // namespace pencillab
