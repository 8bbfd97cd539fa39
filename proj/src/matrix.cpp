#include "pencillab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pencillab/errors.hpp"

namespace pencillab {

void Tolerances::validate() const {
    if (!(eps_root > 0) || !(eps_rank > 0) || !(eps_cluster > 0) || !(eps_verify > 0) || max_iter <= 0) {
        throw std::invalid_argument("tolerances must all be positive");
    }
    if (eps_cluster < eps_root) {
        throw std::invalid_argument("eps_cluster must be >= eps_root");
    }
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Cx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Cx> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

CMatrix CMatrix::from_columns(const std::vector<CVector>& columns, std::size_t rows) {
    CMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    return m;
}

CVector CMatrix::column(std::size_t j) const {
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void CMatrix::set_column(std::size_t j, std::span<const Cx> v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Cx CMatrix::trace() const {
    Cx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Cx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Cx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= Cx(-1.0); }
CMatrix operator*(Cx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Cx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Cx aik = a(i, k);
            if (aik == Cx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CVector operator*(const CMatrix& a, std::span<const Cx> v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Cx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const CMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m(i, j).real() << (m(i, j).imag() < 0 ? "-" : "+") << std::abs(m(i, j).imag()) << "i";
        }
        os << "]\n";
    }
    return os;
}

CMatrix shifted(const CMatrix& a, Cx s) {
    CMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) += s;
    return r;
}

CMatrix power(const CMatrix& m, unsigned k) {
    require_square(m, "power");
    CMatrix result = CMatrix::identity(m.n());
    CMatrix base = m;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double norm_fro(const CMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

double norm_1(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double norm_2_estimate(const CMatrix& m, int iterations) {
    if (m.empty()) return 0.0;
    // Deterministic non-symmetric start vector so no eigenvector is missed by accident.
    CVector v(m.cols());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = Cx(1.0 + 0.37 * double(j), 0.11 * double(j % 3));
    const CMatrix mh = m.adjoint();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const double nv = norm(v);
        if (nv == 0.0) return 0.0;
        for (auto& z : v) z /= nv;
        CVector w = m * std::span<const Cx>(v);
        sigma = norm(w);
        v = mh * std::span<const Cx>(w);
    }
    return std::max(sigma, norm_fro(m) / std::sqrt(double(std::min(m.rows(), m.cols()))));
}

double norm(std::span<const Cx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

Cx dot(std::span<const Cx> a, std::span<const Cx> b) {
    Cx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

namespace {

struct LU {
    CMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

LU factor(const CMatrix& a) {
    require_square(a, "LU factorization");
    const std::size_t n = a.n();
    LU f{a, std::vector<std::size_t>(n), 1, false};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    double scale = 0.0;
    for (const auto& z : a.data()) scale = std::max(scale, std::abs(z));
    const double tiny = scale * 1e-15 * double(n);
    auto& m = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
        if (std::abs(m(p, k)) <= tiny) {
            f.singular = true;
            continue;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Cx l = m(i, k) / m(k, k);
            m(i, k) = l;
            if (l == Cx(0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return f;
}

}  // namespace

CMatrix solve(const CMatrix& a, const CMatrix& b) {
    const LU f = factor(a);
    if (f.singular) throw IllConditioned("linear solve: matrix is numerically singular");
    if (b.rows() != a.n()) throw std::invalid_argument("solve: right-hand side shape mismatch");
    const std::size_t n = a.n();
    CMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        CVector y(n);
        for (std::size_t i = 0; i < n; ++i) {
            Cx s = b(f.perm[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Cx s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x(j, c);
            x(ii, c) = s / f.lu(ii, ii);
        }
    }
    return x;
}

CMatrix inverse(const CMatrix& a) { return solve(a, CMatrix::identity(a.n())); }

Cx determinant(const CMatrix& a) {
    const LU f = factor(a);
    if (f.singular) return 0.0;
    Cx d = double(f.sign);
    for (std::size_t i = 0; i < a.n(); ++i) d *= f.lu(i, i);
    return d;
}

void require_square(const CMatrix& m, const char* what) {
    if (!m.is_square() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + ": expected a non-empty square matrix");
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
    }
}

}  // namespace pencillab
