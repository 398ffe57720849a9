#include "preproj/homological.hpp"

#include "preproj/error.hpp"

namespace preproj {

void vec_into(const Matrix& m, Vector& out, std::size_t offset) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out[offset + c * m.rows() + r] = m(r, c);
}

Matrix unvec(const Field& field, const Vector& v, std::size_t offset, std::size_t rows, std::size_t cols) {
  Matrix m(field, rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = v[offset + c * rows + r];
  return m;
}

namespace {

void check_pair(const Representation& m, const Representation& n) {
  require(m.quiver() == n.quiver(), ErrorCode::DimensionMismatch, "representations of different quivers");
  require(m.field() == n.field(), ErrorCode::FieldMismatch, "representations over different fields");
}

// Linear system whose kernel is Hom(M, N); unknown f_i is N_i x M_i.
Matrix hom_system(const Representation& m, const Representation& n, std::vector<std::size_t>& offsets) {
  const Quiver& q = m.quiver();
  const Field& f = m.field();
  std::size_t unknowns = 0;
  offsets.clear();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    offsets.push_back(unknowns);
    unknowns += n.dim(i) * m.dim(i);
  }
  std::size_t eqs = 0;
  for (const auto& a : q.arrows()) eqs += n.dim(a.head) * m.dim(a.tail);
  Matrix sys(f, eqs, unknowns);
  std::size_t row0 = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    const Matrix& ma = m.matrix(a);
    const Matrix& na = n.matrix(a);
    const std::size_t nh = n.dim(arr.head), mh = m.dim(arr.head), nt = n.dim(arr.tail), mt = m.dim(arr.tail);
    // Equation (r, c) of f_h M_a − N_a f_t, r < nh, c < mt.
    for (std::size_t c = 0; c < mt; ++c) {
      for (std::size_t r = 0; r < nh; ++r) {
        const std::size_t row = row0 + c * nh + r;
        // (f_h M_a)(r,c) = Σ_k f_h(r,k) M_a(k,c)
        for (std::size_t k = 0; k < mh; ++k) {
          if (f.is_zero(ma(k, c))) continue;
          auto& e = sys(row, offsets[arr.head] + k * nh + r);
          e = f.add(e, ma(k, c));
        }
        // (N_a f_t)(r,c) = Σ_k N_a(r,k) f_t(k,c)
        for (std::size_t k = 0; k < nt; ++k) {
          if (f.is_zero(na(r, k))) continue;
          auto& e = sys(row, offsets[arr.tail] + c * nt + k);
          e = f.sub(e, na(r, k));
        }
      }
    }
    row0 += nh * mt;
  }
  return sys;
}

}  // namespace

std::vector<GradedMap> hom_space(const Representation& m, const Representation& n) {
  check_pair(m, n);
  std::vector<std::size_t> offsets;
  Matrix sys = hom_system(m, n, offsets);
  auto k = rank_ker_im(sys).kernel;
  std::vector<GradedMap> out;
  for (std::size_t j = 0; j < k.dim(); ++j) {
    Vector v = k.basis().column(j);
    GradedMap g;
    for (std::size_t i = 0; i < m.quiver().vertex_count(); ++i) g.push_back(unvec(m.field(), v, offsets[i], n.dim(i), m.dim(i)));
    out.push_back(std::move(g));
  }
  return out;
}

std::size_t hom_dim(const Representation& m, const Representation& n) {
  check_pair(m, n);
  std::vector<std::size_t> offsets;
  Matrix sys = hom_system(m, n, offsets);
  return sys.cols() - rank(sys);
}

bool is_homomorphism(const Representation& m, const Representation& n, const GradedMap& f) {
  const Quiver& q = m.quiver();
  if (f.size() != q.vertex_count()) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].rows() != n.dim(i) || f[i].cols() != m.dim(i)) return false;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    if (!(f[arr.head] * m.matrix(a) == n.matrix(a) * f[arr.tail])) return false;
  }
  return true;
}

std::int64_t ext1_dim(const Quiver& q, const Representation& m, const Representation& n) {
  return static_cast<std::int64_t>(hom_dim(m, n)) - euler_form(q, m.dims(), n.dims());
}

Vector PhiMap::pack_domain(const std::vector<Matrix>& theta) const {
  Vector v(matrix.cols(), matrix.field().zero());
  for (std::size_t a = 0; a < theta.size(); ++a) vec_into(theta[a], v, domain_offsets[a]);
  return v;
}

std::vector<Matrix> PhiMap::unpack_domain(const Vector& x) const {
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < quiver.arrow_count(); ++a) {
    const auto& arr = quiver.arrow(a);
    out.push_back(unvec(matrix.field(), x, domain_offsets[a], static_cast<std::size_t>(m_dims[arr.tail]),
                        static_cast<std::size_t>(n_dims[arr.head])));
  }
  return out;
}

Vector PhiMap::pack_codomain(const std::vector<Matrix>& h) const {
  Vector v(matrix.rows(), matrix.field().zero());
  for (std::size_t i = 0; i < h.size(); ++i) vec_into(h[i], v, codomain_offsets[i]);
  return v;
}

std::vector<Matrix> PhiMap::unpack_codomain(const Vector& y) const {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < quiver.vertex_count(); ++i)
    out.push_back(unvec(matrix.field(), y, codomain_offsets[i], static_cast<std::size_t>(m_dims[i]),
                        static_cast<std::size_t>(n_dims[i])));
  return out;
}

std::vector<Matrix> PhiMap::apply(const std::vector<Matrix>& theta) const {
  return unpack_codomain(mul_vector(matrix, pack_domain(theta)));
}

PhiMap phi_map(const Representation& m, const Representation& n) {
  check_pair(m, n);
  const Quiver& q = m.quiver();
  const Field& f = m.field();
  PhiMap out;
  out.quiver = m.quiver();
  out.m_dims = m.dims();
  out.n_dims = n.dims();
  std::size_t dom = 0, cod = 0;
  for (const auto& a : q.arrows()) {
    out.domain_offsets.push_back(dom);
    dom += m.dim(a.tail) * n.dim(a.head);
  }
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    out.codomain_offsets.push_back(cod);
    cod += m.dim(i) * n.dim(i);
  }
  out.matrix = Matrix(f, cod, dom);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    const Matrix& ma = m.matrix(a);
    const Matrix& na = n.matrix(a);
    const std::size_t mt = m.dim(arr.tail), mh = m.dim(arr.head), nh = n.dim(arr.head), nt = n.dim(arr.tail);
    // θ_a is mt x nh; entry (k, c) at domain_offsets[a] + c*mt + k.
    for (std::size_t c = 0; c < nh; ++c) {
      for (std::size_t k = 0; k < mt; ++k) {
        const std::size_t col = out.domain_offsets[a] + c * mt + k;
        // M_a θ_a contributes M_a(r,k) at (r,c) of the head block (mh x nh).
        for (std::size_t r = 0; r < mh; ++r) {
          if (f.is_zero(ma(r, k))) continue;
          auto& e = out.matrix(out.codomain_offsets[arr.head] + c * mh + r, col);
          e = f.add(e, ma(r, k));
        }
        // θ_a N_a contributes N_a(c,j) at (k,j) of the tail block (mt x nt).
        for (std::size_t j = 0; j < nt; ++j) {
          if (f.is_zero(na(c, j))) continue;
          auto& e = out.matrix(out.codomain_offsets[arr.tail] + j * mt + k, col);
          e = f.sub(e, na(c, j));
        }
      }
    }
  }
  return out;
}

Scalar trace_pairing(const Field& field, const std::vector<Matrix>& h, const GradedMap& f) {
  Scalar s = field.zero();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!h[i].empty() && !f[i].empty()) s = field.add(s, (h[i] * f[i]).trace());
  return s;
}

}  // namespace preproj
