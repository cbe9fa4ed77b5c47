#ifndef STABLEHOM_EXACTLA_HPP
#define STABLEHOM_EXACTLA_HPP

// Exact dense linear algebra over a prime field F_p.
//
// Matrices are row-major with entries reduced mod p. Vectors are columns
// unless stated otherwise. Over F_2 the row reduction runs on bit-packed rows.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablehom/error.hpp"

namespace stablehom {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in F_p, p < 2^31.
class Field {
 public:
  explicit Field(Scalar p = 2) : p_(p) {
    require(p < (1u << 31) && is_prime(p), ErrorKind::InvalidArgument,
            "characteristic " + std::to_string(p) + " is not a supported prime");
  }

  Scalar p() const { return p_; }
  Scalar reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const { Scalar s = a + b; return s >= p_ ? s - p_ : s; }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Scalar inv(Scalar a) const {
    require(a % p_ != 0, ErrorKind::InvalidArgument, "inverse of zero");
    return pow(a, p_ - 2);
  }
  /// (-1)^k as a field element.
  Scalar sign(long long k) const { return (k % 2 == 0) ? 1 % p_ : neg(1 % p_); }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  Scalar p_;
};

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), field_(2) {}
  Matrix(std::size_t rows, std::size_t cols, Field f)
      : rows_(rows), cols_(cols), field_(f), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, Field f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Field f) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == c, ErrorKind::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.reduce(rows[i][j]);
    }
    return m;
  }
  static Matrix column(const Vector& v, Field f) {
    Matrix m(v.size(), 1, f);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows, Field f) {
    Matrix m(rows, cols.size(), f);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      require(cols[j].size() == rows, ErrorKind::DimensionMismatch, "column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  Scalar p() const { return field_.p(); }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const Scalar* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
  Scalar* row_ptr(std::size_t r) { return data_.data() + r * cols_; }

  Vector row(std::size_t r) const { return Vector(row_ptr(r), row_ptr(r) + cols_); }
  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix scaled(Scalar s) const {
    Matrix m(*this);
    for (auto& x : m.data_) x = field_.mul(x, s);
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::DimensionMismatch, "block out of range");
    Matrix b(nr, nc, field_);
    for (std::size_t i = 0; i < nr; ++i)
      std::copy(row_ptr(r0 + i) + c0, row_ptr(r0 + i) + c0 + nc, b.row_ptr(i));
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, ErrorKind::DimensionMismatch,
            "set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      std::copy(b.row_ptr(i), b.row_ptr(i) + b.cols(), row_ptr(r0 + i) + c0);
  }
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, ErrorKind::DimensionMismatch,
            "add_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        (*this)(r0 + i, c0 + j) = field_.add((*this)(r0 + i, c0 + j), b(i, j));
  }

  Vector apply(const Vector& v) const {
    require(v.size() == cols_, ErrorKind::DimensionMismatch, "apply: vector length");
    Vector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      const Scalar* r = row_ptr(i);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (r[j] && v[j]) acc = (acc + static_cast<std::uint64_t>(r[j]) * v[j]) % p();
      }
      out[i] = static_cast<Scalar>(acc);
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch,
            "matrix product " + a.shape() + " * " + b.shape());
    Matrix c(a.rows_, b.cols_, a.field_);
    const Scalar p = a.p();
    if (p == 2) {
      for (std::size_t i = 0; i < a.rows_; ++i) {
        Scalar* ci = c.row_ptr(i);
        const Scalar* ai = a.row_ptr(i);
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (!ai[k]) continue;
          const Scalar* bk = b.row_ptr(k);
          for (std::size_t j = 0; j < b.cols_; ++j) ci[j] ^= bk[j];
        }
      }
      return c;
    }
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Scalar* ci = c.row_ptr(i);
      const Scalar* ai = a.row_ptr(i);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Scalar s = ai[k];
        if (!s) continue;
        const Scalar* bk = b.row_ptr(k);
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (bk[j]) ci[j] = static_cast<Scalar>((ci[j] + static_cast<std::uint64_t>(s) * bk[j]) % p);
      }
    }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "matrix sum");
    Matrix c(a);
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "matrix difference");
    Matrix c(a);
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::vector<Scalar> data_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "hstack rows");
  Matrix m(a.rows(), a.cols() + b.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorKind::DimensionMismatch, "vstack cols");
  Matrix m(a.rows() + b.rows(), a.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

/// Kronecker product; index (i, j) of the result is i_a * rows(b) + i_b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols(), f);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Scalar s = a(i, j);
      if (!s) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = f.mul(s, b(k, l));
    }
  return m;
}

struct Echelon {
  Matrix reduced;                   // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

namespace detail {

inline Echelon rref_gf2(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const Scalar* r = m.row_ptr(i);
    for (std::size_t j = 0; j < cols; ++j)
      if (r[j]) bits[i * words + j / 64] |= (std::uint64_t{1} << (j % 64));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows && !(bits[piv * words + w] & mask)) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(bits.begin() + piv * words, bits.begin() + (piv + 1) * words,
                       bits.begin() + rank * words);
    const std::uint64_t* prow = bits.data() + rank * words;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      std::uint64_t* r = bits.data() + i * words;
      if (r[w] & mask)
        for (std::size_t k = w; k < words; ++k) r[k] ^= prow[k];
    }
    pivots.push_back(c);
    ++rank;
  }
  Matrix red(rank, cols, m.field());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      red(i, j) = (bits[i * words + j / 64] >> (j % 64)) & 1u;
  return {std::move(red), std::move(pivots)};
}

inline Echelon rref_generic(Matrix a) {
  const Field f = a.field();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a.row_ptr(piv), a.row_ptr(piv) + cols, a.row_ptr(rank));
    Scalar inv = f.inv(a(rank, c));
    Scalar* prow = a.row_ptr(rank);
    for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      Scalar s = a(i, c);
      if (!s) continue;
      Scalar* r = a.row_ptr(i);
      for (std::size_t j = c; j < cols; ++j)
        if (prow[j]) r[j] = f.sub(r[j], f.mul(s, prow[j]));
    }
    pivots.push_back(c);
    ++rank;
  }
  return {a.block(0, 0, rank, cols), std::move(pivots)};
}

}  // namespace detail

inline Echelon echelon(const Matrix& m) {
  return m.p() == 2 ? detail::rref_gf2(m) : detail::rref_generic(m);
}

/// Reduced row-echelon form with the same shape as the input (zero rows kept at the bottom).
inline Matrix rref(const Matrix& m) {
  Echelon e = echelon(m);
  Matrix out(m.rows(), m.cols(), m.field());
  out.set_block(0, 0, e.reduced);
  return out;
}

inline std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

/// A subspace of F_p^n stored by its canonical reduced echelon basis (one row per basis vector).
class Subspace {
 public:
  Subspace() : ambient_(0), basis_(0, 0, Field(2)) {}
  Subspace(std::size_t ambient, Field f) : ambient_(ambient), basis_(0, ambient, f) {}

  /// Span of the rows of `rows`.
  static Subspace span_rows(const Matrix& rows) {
    Echelon e = echelon(rows);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = std::move(e.reduced);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span_columns(const Matrix& cols) { return span_rows(cols.transposed()); }
  static Subspace span(const std::vector<Vector>& vecs, std::size_t ambient, Field f) {
    Matrix m(vecs.size(), ambient, f);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      require(vecs[i].size() == ambient, ErrorKind::DimensionMismatch, "span: vector length");
      std::copy(vecs[i].begin(), vecs[i].end(), m.row_ptr(i));
    }
    return span_rows(m);
  }
  static Subspace full(std::size_t n, Field f) { return span_rows(Matrix::identity(n, f)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Field& field() const { return basis_.field(); }
  Vector vec(std::size_t i) const { return basis_.row(i); }
  /// Basis vectors as the columns of an ambient x dim matrix.
  Matrix basis_columns() const { return basis_.transposed(); }

  /// Reduce v modulo the subspace (zero at every pivot column).
  Vector reduce(Vector v) const {
    require(v.size() == ambient_, ErrorKind::DimensionMismatch, "subspace reduce");
    const Field& f = field();
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      Scalar s = v[pivots_[r]];
      if (!s) continue;
      const Scalar* b = basis_.row_ptr(r);
      for (std::size_t j = 0; j < ambient_; ++j)
        if (b[j]) v[j] = f.sub(v[j], f.mul(s, b[j]));
    }
    return v;
  }
  bool contains(const Vector& v) const {
    Vector r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Scalar s) { return s == 0; });
  }
  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.vec(i))) return false;
    return true;
  }
  /// Coordinates of v (assumed inside) with respect to the echelon basis.
  Vector coords(const Vector& v) const {
    Vector c(pivots_.size());
    for (std::size_t r = 0; r < pivots_.size(); ++r) c[r] = v[pivots_[r]];
    return c;
  }
  /// Coordinates of each column of m (columns assumed inside), as a dim x cols matrix.
  Matrix coords_of_columns(const Matrix& m) const {
    Matrix c(pivots_.size(), m.cols(), field());
    for (std::size_t r = 0; r < pivots_.size(); ++r)
      for (std::size_t j = 0; j < m.cols(); ++j) c(r, j) = m(pivots_[r], j);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorKind::DimensionMismatch, "subspace sum");
  return Subspace::span_rows(vstack(a.basis(), b.basis()));
}

/// Null space of m as a subspace of F_p^{cols(m)}.
inline Subspace kernel(const Matrix& m) {
  const Field& f = m.field();
  Echelon e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(free_cols.size(), m.cols(), f);
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    std::size_t fc = free_cols[i];
    k(i, fc) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(i, e.pivots[r]) = f.neg(e.reduced(r, fc));
  }
  return Subspace::span_rows(k);
}

/// Column space of m as a subspace of F_p^{rows(m)}.
inline Subspace image(const Matrix& m) { return Subspace::span_columns(m); }

/// Some x with m x = b, or nullopt when b is not in the image.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  require(b.size() == m.rows(), ErrorKind::DimensionMismatch, "solve: rhs length");
  Matrix aug = hstack(m, Matrix::column(b, m.field()));
  Echelon e = echelon(aug);
  Vector x(m.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

/// Surjection F_p^n -> F_p^n / sub together with a section.
struct Quotient {
  Matrix proj;  // q x n, kernel exactly `sub`
  Matrix lift;  // n x q, proj * lift = identity
};

inline Quotient quotient_basis(const Subspace& sub) {
  const Field& f = sub.field();
  const std::size_t n = sub.ambient_dim();
  std::vector<long> slot(n, -1);
  std::vector<bool> is_pivot(n, false);
  for (auto c : sub.pivots()) is_pivot[c] = true;
  std::size_t q = 0;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) slot[c] = static_cast<long>(q++);
  Matrix proj(q, n, f), lift(n, q, f);
  for (std::size_t c = 0; c < n; ++c)
    if (slot[c] >= 0) {
      proj(slot[c], c) = 1;
      lift(c, slot[c]) = 1;
    }
  for (std::size_t r = 0; r < sub.pivots().size(); ++r) {
    std::size_t pc = sub.pivots()[r];
    for (std::size_t c = 0; c < n; ++c)
      if (slot[c] >= 0 && sub.basis()(r, c)) proj(slot[c], pc) = f.neg(sub.basis()(r, c));
  }
  return {std::move(proj), std::move(lift)};
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorKind::DimensionMismatch, "intersect");
  const Field& f = a.field();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim(), f);
  // x = A^T alpha = B^T beta  <=>  [A^T | -B^T] (alpha, beta) = 0
  Matrix sys = hstack(a.basis().transposed(), b.basis().transposed().scaled(f.neg(1)));
  Subspace k = kernel(sys);
  Matrix alphas = k.basis().block(0, 0, k.dim(), a.dim());
  return Subspace::span_rows(alphas * a.basis());
}

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

inline Matrix inverse(const Matrix& m) {
  require(m.is_square(), ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  Echelon e = echelon(hstack(m, Matrix::identity(m.rows(), m.field())));
  require(e.pivots.size() == m.rows() && (m.rows() == 0 || e.pivots.back() < m.cols()),
          ErrorKind::InvalidArgument, "matrix is singular");
  return e.reduced.block(0, m.cols(), m.rows(), m.rows());
}

}  // namespace stablehom

#endif  // STABLEHOM_EXACTLA_HPP
