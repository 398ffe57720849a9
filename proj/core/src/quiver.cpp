#include "preproj/quiver.hpp"

#include <algorithm>
#include <numeric>

#include "preproj/error.hpp"

namespace preproj {

std::size_t Quiver::add_vertex(const std::string& name) {
  require(!find_vertex(name), ErrorCode::NameCollision, "duplicate vertex " + name);
  vertices_.push_back(name);
  return vertices_.size() - 1;
}

std::size_t Quiver::add_arrow(const std::string& name, std::size_t tail, std::size_t head) {
  require(!find_arrow(name), ErrorCode::NameCollision, "duplicate arrow " + name);
  require(tail < vertices_.size() && head < vertices_.size(), ErrorCode::UnknownName,
          "arrow " + name + " references a missing vertex");
  arrows_.push_back({name, tail, head});
  return arrows_.size() - 1;
}

std::size_t Quiver::add_arrow(const std::string& name, const std::string& tail, const std::string& head) {
  return add_arrow(name, vertex_index(tail), vertex_index(head));
}

std::optional<std::size_t> Quiver::find_vertex(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].name == name) return a;
  return std::nullopt;
}

std::size_t Quiver::vertex_index(const std::string& name) const {
  auto i = find_vertex(name);
  require(i.has_value(), ErrorCode::UnknownName, "unknown vertex " + name);
  return *i;
}

std::size_t Quiver::arrow_index(const std::string& name) const {
  auto a = find_arrow(name);
  require(a.has_value(), ErrorCode::UnknownName, "unknown arrow " + name);
  return *a;
}

bool Quiver::is_connected() const {
  const std::size_t n = vertices_.size();
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& a : arrows_) {
    auto x = find(a.tail), y = find(a.head);
    if (x != y) {
      parent[x] = y;
      --components;
    }
  }
  return components == 1;
}

bool Quiver::has_oriented_cycle() const {
  // Kahn's algorithm; loops count as cycles.
  const std::size_t n = vertices_.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& a : arrows_) ++indeg[a.head];
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  std::size_t seen = 0;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    ++seen;
    for (const auto& a : arrows_)
      if (a.tail == i && --indeg[a.head] == 0) stack.push_back(a.head);
  }
  return seen < n;
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const auto &x = a.arrows_[i], &y = b.arrows_[i];
    if (x.name != y.name || x.tail != y.tail || x.head != y.head) return false;
  }
  return true;
}

Weights Weights::zero(const Field& field, std::size_t n) { return {field, std::vector<Scalar>(n, field.zero())}; }

Scalar Weights::dot(const DimVector& alpha) const {
  require(alpha.size() == values.size(), ErrorCode::DimensionMismatch, "weight/dimension length mismatch");
  Scalar s = field.zero();
  for (std::size_t i = 0; i < values.size(); ++i) s = field.add(s, field.mul(values[i], field.from_int(alpha[i])));
  return s;
}

std::string star_name(const std::string& arrow) { return arrow + "*"; }

Quiver double_quiver(const Quiver& q) {
  Quiver d;
  for (const auto& v : q.vertices()) d.add_vertex(v);
  for (const auto& a : q.arrows()) d.add_arrow(a.name, a.tail, a.head);
  for (const auto& a : q.arrows()) d.add_arrow(star_name(a.name), a.head, a.tail);
  return d;
}

std::int64_t euler_form(const Quiver& q, const DimVector& alpha, const DimVector& beta) {
  require(alpha.size() == q.vertex_count() && beta.size() == q.vertex_count(), ErrorCode::DimensionMismatch,
          "Euler form arguments must be indexed by vertices");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * beta[i];
  for (const auto& a : q.arrows()) s -= alpha[a.tail] * beta[a.head];
  return s;
}

namespace {

using QMatrix = std::vector<std::vector<mpq_class>>;

QMatrix symmetrized_form(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  QMatrix c(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) c[i][i] = 2;
  for (const auto& a : q.arrows()) {
    c[a.tail][a.head] -= 1;
    c[a.head][a.tail] -= 1;
  }
  return c;
}

// Rank of a symmetric matrix if positive semidefinite, nullopt otherwise.
std::optional<std::size_t> psd_rank(QMatrix m) {
  const std::size_t n = m.size();
  std::vector<bool> done(n, false);
  std::size_t rank = 0;
  while (true) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (m[i][i] < 0) return std::nullopt;
      if (m[i][i] > 0 && !piv) piv = i;
    }
    if (!piv) break;
    const std::size_t p = *piv;
    done[p] = true;
    ++rank;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m[i][p] == 0) continue;
      mpq_class f = m[i][p] / m[p][p];
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) m[i][j] -= f * m[p][j];
    }
  }
  // Remaining block has zero diagonal; it must vanish entirely.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!done[i] && !done[j] && m[i][j] != 0) return std::nullopt;
  return rank;
}

QMatrix delete_vertex(const QMatrix& m, std::size_t v) {
  QMatrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == v) continue;
    std::vector<mpq_class> row;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != v) row.push_back(m[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

AffineData affine_classify(const Quiver& q) {
  require(q.is_connected(), ErrorCode::DisconnectedQuiver, "quiver must be connected and nonempty");
  AffineData out;
  out.has_oriented_cycle = q.has_oriented_cycle();
  const std::size_t n = q.vertex_count();
  const QMatrix c = symmetrized_form(q);
  auto r = psd_rank(c);
  if (!r || *r + 1 != n) return out;

  // The radical is one-dimensional: read δ off the reduced echelon form.
  QMatrix m = c;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[row]);
    mpq_class inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      mpq_class f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::size_t free = 0;
  while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
  std::vector<mpq_class> k(n, 0);
  k[free] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) k[pivots[i]] = -m[i][free];
  mpz_class den = 1, num = 0;
  for (const auto& x : k) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = k[i].get_num() * (den / k[i].get_den());
    num = gcd(num, z[i]);
  }
  if (z[free] < 0) num = -num;
  out.delta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] /= num;
    if (z[i] <= 0) return AffineData{false, {}, {}, out.has_oriented_cycle};
    out.delta[i] = z[i].get_si();
  }
  out.is_affine = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (out.delta[v] != 1) continue;
    auto rv = psd_rank(delete_vertex(c, v));
    if (rv && *rv + 1 == n) out.extending_vertices.push_back(v);
  }
  return out;
}

std::int64_t defect(const Quiver& q, const AffineData& aff, const DimVector& alpha) {
  require(aff.is_affine, ErrorCode::NotAffine, "defect needs an affine quiver");
  return euler_form(q, aff.delta, alpha);
}

InfinityQuiver infinity_quiver(const Quiver& q, std::size_t v, const Weights& lambda) {
  require(v < q.vertex_count(), ErrorCode::UnknownName, "vertex out of range");
  require(lambda.values.size() == q.vertex_count(), ErrorCode::DimensionMismatch, "weights length");
  require(!q.find_vertex(infinity_vertex), ErrorCode::NameCollision, "vertex ∞ already present");
  require(!q.find_arrow(infinity_arrow) && !q.find_arrow(star_name(infinity_arrow)), ErrorCode::NameCollision,
          "connecting arrow name already present");
  InfinityQuiver out{q, lambda, 0, 0};
  out.infinity = out.quiver.add_vertex(infinity_vertex);
  out.arrow = out.quiver.add_arrow(infinity_arrow, out.infinity, v);
  out.weights.values.push_back(lambda.field.zero());
  return out;
}

namespace {

std::vector<std::size_t> topological_order(const Quiver& q) {
  require(!q.has_oriented_cycle(), ErrorCode::CyclicQuiver, "path counting needs an acyclic quiver");
  const std::size_t n = q.vertex_count();
  std::vector<std::size_t> indeg(n, 0), order;
  for (const auto& a : q.arrows()) ++indeg[a.head];
  std::vector<std::size_t> ready;
  for (std::size_t i = n; i-- > 0;)
    if (indeg[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    auto i = ready.back();
    ready.pop_back();
    order.push_back(i);
    for (const auto& a : q.arrows())
      if (a.tail == i && --indeg[a.head] == 0) ready.push_back(a.head);
  }
  return order;
}

}  // namespace

DimVector proj_dim_vector(const Quiver& q, std::size_t i) {
  auto order = topological_order(q);
  DimVector d(q.vertex_count(), 0);
  d[i] = 1;
  for (auto t : order)
    for (const auto& a : q.arrows())
      if (a.tail == t) d[a.head] += d[t];
  return d;
}

DimVector inj_dim_vector(const Quiver& q, std::size_t i) {
  auto order = topological_order(q);
  DimVector d(q.vertex_count(), 0);
  d[i] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (const auto& a : q.arrows())
      if (a.head == *it) d[a.tail] += d[*it];
  return d;
}

Quiver named_quiver(const std::string& name) {
  Quiver q;
  if (name == "jordan") {
    q.add_vertex("0");
    q.add_arrow("a", 0, 0);
  } else if (name.rfind("cycle:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(6));
    } catch (const std::exception&) {
      throw Error(ErrorCode::UnknownName, "bad cycle length in " + name);
    }
    require(n >= 1, ErrorCode::UnknownName, "cycle length must be positive");
    for (int i = 0; i < n; ++i) q.add_vertex(std::to_string(i));
    for (int i = 0; i < n; ++i) q.add_arrow("a" + std::to_string(i), i, (i + 1) % n);
  } else if (name == "kronecker") {
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("a", 0, 1);
    q.add_arrow("b", 0, 1);
  } else if (name == "Dtilde4") {
    q.add_vertex("0");
    for (int i = 1; i <= 4; ++i) q.add_vertex(std::to_string(i));
    for (int i = 1; i <= 4; ++i) q.add_arrow("a" + std::to_string(i), i, 0);
  } else {
    throw Error(ErrorCode::UnknownName, "unknown quiver family " + name);
  }
  return q;
}

Quiver reorient_quiver(const Quiver& q, const std::vector<std::size_t>& flips) {
  Quiver out;
  for (const auto& v : q.vertices()) out.add_vertex(v);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    const bool flip = std::find(flips.begin(), flips.end(), a) != flips.end();
    out.add_arrow(arr.name, flip ? arr.head : arr.tail, flip ? arr.tail : arr.head);
  }
  return out;
}

DimVector scale(const DimVector& a, std::int64_t k) {
  DimVector out = a;
  for (auto& x : out) x *= k;
  return out;
}

DimVector add(const DimVector& a, const DimVector& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "dimension vector length");
  DimVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

DimVector sub(const DimVector& a, const DimVector& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "dimension vector length");
  DimVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

std::int64_t total(const DimVector& a) { return std::accumulate(a.begin(), a.end(), std::int64_t{0}); }

}  // namespace preproj
