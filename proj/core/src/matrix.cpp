#include "preproj/matrix.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "preproj/error.hpp"

namespace preproj {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == nc, ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_ints(const Field& field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == nc, ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = field.from_int(rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require(columns[c].size() == rows, ErrorCode::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::random(const Field& field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(field, rows, cols);
  for (auto& x : m.data_) x = field.random(rng);
  return m;
}

Matrix Matrix::random_invertible(const Field& field, std::size_t n, Rng& rng) {
  // P * L * D * U with unit-triangular L, U and nonzero diagonal D.
  Matrix l = identity(field, n), u = identity(field, n), d(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = field.is_finite() ? field.random_nonzero(rng) : (rng.coin() ? field.one() : field.from_int(-1));
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = field.random(rng);
      u(j, i) = field.random(rng);
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Matrix p(field, n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = field.one();
  return p * l * d * u;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = field_.mul(x, s);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::DimensionMismatch, "block out of range");
  Matrix m(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  require(r0 + m.rows_ <= rows_ && c0 + m.cols_ <= cols_, ErrorCode::DimensionMismatch, "block out of range");
  for (std::size_t r = 0; r < m.rows_; ++r)
    for (std::size_t c = 0; c < m.cols_; ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix m(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) m(r, j) = (*this)(r, cols[j]);
  return m;
}

Matrix Matrix::hstack(const Matrix& right) const {
  require(rows_ == right.rows_, ErrorCode::DimensionMismatch, "hstack row mismatch");
  Matrix m(field_, rows_, cols_ + right.cols_);
  m.set_block(0, 0, *this);
  m.set_block(0, cols_, right);
  return m;
}

Matrix Matrix::vstack(const Matrix& below) const {
  require(cols_ == below.cols_, ErrorCode::DimensionMismatch, "vstack column mismatch");
  Matrix m(field_, rows_ + below.rows_, cols_);
  m.set_block(0, 0, *this);
  m.set_block(rows_, 0, below);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [&](const Scalar& x) { return field_.is_zero(x); });
}

Scalar Matrix::trace() const {
  require(is_square(), ErrorCode::DimensionMismatch, "trace of a non-square matrix");
  Scalar t = field_.zero();
  for (std::size_t i = 0; i < rows_; ++i) t = field_.add(t, (*this)(i, i));
  return t;
}

Matrix Matrix::power(std::uint64_t e) const {
  require(is_square(), ErrorCode::DimensionMismatch, "power of a non-square matrix");
  Matrix result = identity(field_, rows_), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.field_ == b.field_, ErrorCode::FieldMismatch, "matrix sum over different fields");
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.field_ == b.field_, ErrorCode::FieldMismatch, "matrix difference over different fields");
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.field_ == b.field_, ErrorCode::FieldMismatch, "matrix product over different fields");
  require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  const Field& f = a.field_;
  Matrix m(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (f.is_zero(y)) continue;
        m(i, j) = f.add(m(i, j), f.mul(x, y));
      }
    }
  }
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

Vector mul_vector(const Matrix& m, const Vector& v) {
  require(m.cols() == v.size(), ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  const Field& f = m.field();
  Vector out(m.rows(), f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Scalar acc = f.zero();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (f.is_zero(v[c]) || f.is_zero(m(r, c))) continue;
      acc = f.add(acc, f.mul(m(r, c), v[c]));
    }
    out[r] = acc;
  }
  return out;
}

Matrix block_diagonal(const Field& field, const std::vector<Matrix>& blocks) {
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    nr += b.rows();
    nc += b.cols();
  }
  Matrix m(field, nr, nc);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix extend_scalars(const Matrix& m, const Embedding& embed) {
  require(m.field() == embed.source(), ErrorCode::IncompatibleFields, "matrix is not over the embedding source");
  if (embed.is_identity()) return m;
  Matrix out(embed.target(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = embed(m(r, c));
  return out;
}

Vector extend_scalars(const Vector& v, const Embedding& embed) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(embed(x));
  return out;
}

bool is_zero_vector(const Field& field, const Vector& v) {
  return std::all_of(v.begin(), v.end(), [&](const Scalar& x) { return field.is_zero(x); });
}

Echelon row_reduce(const Matrix& input) {
  Matrix m = input;
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && f.is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    }
    const Scalar inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (f.is_zero(m(row, c))) continue;
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::optional<Matrix> inverse(const Matrix& m) {
  require(m.is_square(), ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto e = row_reduce(m.hstack(Matrix::identity(m.field(), n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
  return e.rref.block(0, n, n, n);
}

Scalar determinant(const Matrix& input) {
  require(input.is_square(), ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  Matrix m = input;
  const Field& f = m.field();
  Scalar det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && f.is_zero(m(piv, col))) ++piv;
    if (piv == n) return f.zero();
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = f.neg(det);
    }
    det = f.mul(det, m(col, col));
    const Scalar inv = f.inv(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (f.is_zero(m(r, col))) continue;
      const Scalar factor = f.mul(m(r, col), inv);
      for (std::size_t c = col; c < n; ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(col, c)));
    }
  }
  return det;
}

// --- Subspace -------------------------------------------------------------

Subspace::Subspace(Field field, std::size_t ambient) : basis_(std::move(field), ambient, 0) {}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {}

Subspace Subspace::span(const Matrix& generators) {
  auto e = row_reduce(generators);
  return Subspace(generators.select_columns(e.pivots));
}

Subspace Subspace::span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors) {
  return span(Matrix::from_columns(field, ambient, vectors));
}

Subspace Subspace::full(const Field& field, std::size_t ambient) {
  return Subspace(Matrix::identity(field, ambient));
}

bool Subspace::contains(const Vector& v) const {
  if (dim() == 0) return is_zero_vector(field(), v);
  return rank(basis_.hstack(Matrix::from_columns(field(), ambient(), {v}))) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.dim() == 0) return true;
  return rank(basis_.hstack(other.basis_)) == dim();
}

Vector Subspace::coordinates(const Vector& v) const {
  auto sol = solve_affine(basis_, v);
  require(sol.has_value(), ErrorCode::DimensionMismatch, "vector not in subspace");
  return sol->particular;
}

Matrix Subspace::completion() const { return basis_.hstack(complement()); }

Matrix Subspace::complement() const {
  EchelonBasis eb(field(), ambient());
  for (const auto& c : basis_.columns()) eb.insert(c);
  std::vector<Vector> extra;
  for (std::size_t i = 0; i < ambient() && eb.dim() < ambient(); ++i) {
    Vector e(ambient(), field().zero());
    e[i] = field().one();
    if (eb.insert(e)) extra.push_back(std::move(e));
  }
  return Matrix::from_columns(field(), ambient(), extra);
}

Subspace Subspace::sum(const Subspace& other) const { return span(basis_.hstack(other.basis_)); }

Subspace Subspace::intersection(const Subspace& other) const {
  // Solve B a = C b, i.e. kernel of [B | -C].
  if (dim() == 0 || other.dim() == 0) return Subspace(field(), ambient());
  auto k = rank_ker_im(basis_.hstack(other.basis_.scaled(field().neg(field().one())))).kernel;
  Matrix coeffs = k.basis().block(0, 0, dim(), k.dim());
  return span(basis_ * coeffs);
}

bool Subspace::is_invariant(const Matrix& op) const {
  if (dim() == 0) return true;
  return contains(Subspace::span(op * basis_));
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient() == b.ambient() && a.dim() == b.dim() && a.contains(b);
}

RankKerIm rank_ker_im(const Matrix& m) {
  const Field& f = m.field();
  auto e = row_reduce(m);
  const std::size_t r = e.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> kernel;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < r; ++i) v[e.pivots[i]] = f.neg(e.rref(i, free));
    kernel.push_back(std::move(v));
  }
  return {r, Subspace(Matrix::from_columns(f, m.cols(), kernel)), Subspace(m.select_columns(e.pivots))};
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
  require(a.rows() == b.size(), ErrorCode::DimensionMismatch, "right-hand side length mismatch");
  for (const auto& x : b) require(a.field().contains(x), ErrorCode::FieldMismatch, "right-hand side over another field");
  const Field& f = a.field();
  auto e = row_reduce(a.hstack(Matrix::from_columns(f, a.rows(), {b})));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols(), f.zero());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rref(i, a.cols());
  return AffineSolution{std::move(x), rank_ker_im(a).kernel};
}

// --- EchelonBasis -----------------------------------------------------------

EchelonBasis::EchelonBasis(Field field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

Vector EchelonBasis::reduce(Vector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (field_.is_zero(c)) continue;
    const Vector& w = rows_[i];
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (field_.is_zero(w[j])) continue;
      v[j] = field_.sub(v[j], field_.mul(c, w[j]));
    }
  }
  return v;
}

bool EchelonBasis::insert(const Vector& v) {
  Vector r = reduce(v);
  std::size_t piv = 0;
  while (piv < ambient_ && field_.is_zero(r[piv])) ++piv;
  if (piv == ambient_) return false;
  const Scalar inv = field_.inv(r[piv]);
  for (auto& x : r) x = field_.mul(x, inv);
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

Matrix EchelonBasis::basis() const { return Matrix::from_columns(field_, ambient_, rows_); }

Subspace spin(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors,
              const std::vector<Matrix>& operators) {
  for (const auto& op : operators) {
    require(op.rows() == ambient && op.cols() == ambient, ErrorCode::DimensionMismatch, "spin operator shape");
  }
  EchelonBasis eb(field, ambient);
  std::vector<Vector> kept;
  std::deque<Vector> queue;
  for (const auto& v : vectors) {
    require(v.size() == ambient, ErrorCode::DimensionMismatch, "spin vector length");
    if (eb.insert(v)) {
      kept.push_back(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty() && eb.dim() < ambient) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& op : operators) {
      Vector w = mul_vector(op, v);
      if (eb.insert(w)) {
        kept.push_back(w);
        queue.push_back(std::move(w));
      }
    }
  }
  return Subspace(Matrix::from_columns(field, ambient, kept));
}

FittingParts fitting(const Matrix& phi) {
  require(phi.is_square(), ErrorCode::DimensionMismatch, "fitting needs a square matrix");
  auto k = rank_ker_im(phi.power(phi.rows()));
  return {std::move(k.kernel), std::move(k.image)};
}

// --- characteristic polynomial ------------------------------------------------

Poly char_poly(const Matrix& m) {
  require(m.is_square(), ErrorCode::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Matrix h = m;
  // Reduce to upper Hessenberg form by similarity transformations.
  for (std::size_t col = 0; col + 2 < n; ++col) {
    std::size_t piv = col + 1;
    while (piv < n && f.is_zero(h(piv, col))) ++piv;
    if (piv == n) continue;
    if (piv != col + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(col + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, col + 1));
    }
    const Scalar inv = f.inv(h(col + 1, col));
    for (std::size_t r = col + 2; r < n; ++r) {
      if (f.is_zero(h(r, col))) continue;
      const Scalar u = f.mul(h(r, col), inv);
      for (std::size_t c = 0; c < n; ++c) h(r, c) = f.sub(h(r, c), f.mul(u, h(col + 1, c)));
      for (std::size_t rr = 0; rr < n; ++rr) h(rr, col + 1) = f.add(h(rr, col + 1), f.mul(u, h(rr, r)));
    }
  }
  // Recurrence on leading principal blocks of the Hessenberg matrix.
  std::vector<Poly> p{Poly::constant(f, f.one())};
  const Poly x = Poly::x(f);
  for (std::size_t k = 1; k <= n; ++k) {
    Poly pk = (x - Poly::constant(f, h(k - 1, k - 1))) * p[k - 1];
    Scalar t = f.one();
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, h(k - i, k - i - 1));
      const Scalar coef = f.mul(t, h(k - i - 1, k - 1));
      if (!f.is_zero(coef)) pk = pk - Poly::constant(f, coef) * p[k - i - 1];
    }
    p.push_back(std::move(pk));
  }
  return p[n];
}

Matrix eval_poly(const Poly& poly, const Matrix& m) {
  const Field& f = m.field();
  Matrix acc(f, m.rows(), m.cols());
  for (std::size_t i = poly.coeffs().size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) = f.add(acc(d, d), poly.coeffs()[i]);
  }
  return acc;
}

CharRoots char_roots(const Matrix& m) {
  require(m.is_square(), ErrorCode::DimensionMismatch, "eigenvalues of a non-square matrix");
  const Field& f = m.field();
  Poly cp = char_poly(m);
  if (!f.is_finite()) {
    auto rs = roots(cp);
    int total = 0;
    for (auto& r : rs) total += r.second;
    return {f, std::move(rs), total == static_cast<int>(m.rows())};
  }
  if (m.rows() == 0) return CharRoots{f, std::vector<std::pair<Scalar, int>>{}, true};
  const unsigned d = splitting_degree(cp);
  if (d == 1) return {f, roots(cp), true};
  Field big = f.extend(d);
  return {big, roots(map_coefficients(cp, Embedding(f, big))), true};
}

}  // namespace preproj
