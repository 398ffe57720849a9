#include "preproj/representation.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "preproj/error.hpp"

namespace preproj {

namespace {

void check_shapes(const Quiver& q, const Field& f, const DimVector& dims, const std::vector<Matrix>& ms) {
  require(dims.size() == q.vertex_count(), ErrorCode::DimensionMismatch, "dimension vector length");
  for (auto d : dims) require(d >= 0, ErrorCode::DimensionMismatch, "negative dimension");
  require(ms.size() == q.arrow_count(), ErrorCode::DimensionMismatch, "one matrix per arrow required");
  for (std::size_t a = 0; a < ms.size(); ++a) {
    const auto& arr = q.arrow(a);
    require(ms[a].field() == f, ErrorCode::FieldMismatch, "matrix for " + arr.name + " over another field");
    require(ms[a].rows() == static_cast<std::size_t>(dims[arr.head]) &&
                ms[a].cols() == static_cast<std::size_t>(dims[arr.tail]),
            ErrorCode::DimensionMismatch, "matrix for " + arr.name + " has the wrong shape");
  }
}

}  // namespace

Representation::Representation(Quiver quiver, Field field, DimVector dims)
    : quiver_(std::move(quiver)), field_(std::move(field)), dims_(std::move(dims)) {
  require(dims_.size() == quiver_.vertex_count(), ErrorCode::DimensionMismatch, "dimension vector length");
  for (const auto& a : quiver_.arrows()) matrices_.emplace_back(field_, dim(a.head), dim(a.tail));
}

Representation::Representation(Quiver quiver, Field field, DimVector dims, std::vector<Matrix> matrices)
    : quiver_(std::move(quiver)), field_(std::move(field)), dims_(std::move(dims)), matrices_(std::move(matrices)) {
  check_shapes(quiver_, field_, dims_, matrices_);
}

std::size_t Representation::total_dim() const { return static_cast<std::size_t>(total(dims_)); }

void Representation::set_matrix(std::size_t a, Matrix m) {
  const auto& arr = quiver_.arrow(a);
  require(m.field() == field_, ErrorCode::FieldMismatch, "matrix over another field");
  require(m.rows() == dim(arr.head) && m.cols() == dim(arr.tail), ErrorCode::DimensionMismatch,
          "matrix for " + arr.name + " has the wrong shape");
  matrices_[a] = std::move(m);
}

bool operator==(const Representation& a, const Representation& b) {
  return a.quiver_ == b.quiver_ && a.field_ == b.field_ && a.dims_ == b.dims_ && a.matrices_ == b.matrices_;
}

PairRep::PairRep(Quiver base, Representation rep) : base_(std::move(base)), rep_(std::move(rep)) {
  require(rep_.quiver() == double_quiver(base_), ErrorCode::DimensionMismatch,
          "pair representation must live on the double quiver");
}

PairRep PairRep::from_pair(const Quiver& base, const Field& field, const DimVector& dims, std::vector<Matrix> x,
                           std::vector<Matrix> xi) {
  require(x.size() == base.arrow_count() && xi.size() == base.arrow_count(), ErrorCode::DimensionMismatch,
          "pair needs one X and one ξ matrix per arrow");
  std::vector<Matrix> all = std::move(x);
  for (auto& m : xi) all.push_back(std::move(m));
  return PairRep(base, Representation(double_quiver(base), field, dims, std::move(all)));
}

std::vector<Matrix> PairRep::xi_all() const {
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < base_.arrow_count(); ++a) out.push_back(xi(a));
  return out;
}

Representation PairRep::underlying() const {
  std::vector<Matrix> ms(rep_.matrices().begin(),
                         rep_.matrices().begin() + static_cast<std::ptrdiff_t>(base_.arrow_count()));
  return Representation(base_, rep_.field(), rep_.dims(), std::move(ms));
}

MomentDefect moment_defect(const PairRep& r, const Weights& lambda) {
  const Quiver& q = r.base();
  const Field& f = r.field();
  require(lambda.field == f, ErrorCode::FieldMismatch, "weights over another field");
  require(lambda.values.size() == q.vertex_count(), ErrorCode::DimensionMismatch, "weights length");
  MomentDefect out;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    out.per_vertex.push_back(Matrix::identity(f, r.rep().dim(i)).scaled(f.neg(lambda.values[i])));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    out.per_vertex[arr.head] = out.per_vertex[arr.head] + r.x(a) * r.xi(a);
    out.per_vertex[arr.tail] = out.per_vertex[arr.tail] - r.xi(a) * r.x(a);
  }
  for (const auto& m : out.per_vertex) out.ranks.push_back(rank(m));
  return out;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Module: return "module";
    case Relation::Nearly: return "nearly";
    case Relation::Neither: return "neither";
  }
  return "neither";
}

Classification classify_relation(const PairRep& r, const Weights& lambda, std::size_t v) {
  require(v < r.base().vertex_count(), ErrorCode::UnknownName, "vertex out of range");
  auto d = moment_defect(r, lambda);
  bool module = true, others_zero = true;
  for (std::size_t i = 0; i < d.ranks.size(); ++i) {
    if (d.ranks[i] != 0) {
      module = false;
      if (i != v) others_zero = false;
    }
  }
  const bool trace_ok = r.field().is_zero(lambda.dot(r.dims()));
  const bool nearly = module || (trace_ok && others_zero && d.ranks[v] <= 1);
  Relation rel = module ? Relation::Module : (nearly ? Relation::Nearly : Relation::Neither);
  return {rel, nearly, std::move(d)};
}

DimVector SubRep::dims() const {
  DimVector d;
  for (const auto& s : spaces) d.push_back(static_cast<std::int64_t>(s.dim()));
  return d;
}

std::size_t SubRep::total_dim() const {
  std::size_t t = 0;
  for (const auto& s : spaces) t += s.dim();
  return t;
}

bool is_subrep(const Representation& r, const SubRep& s) {
  if (s.spaces.size() != r.quiver().vertex_count()) return false;
  for (std::size_t i = 0; i < s.spaces.size(); ++i)
    if (s.spaces[i].ambient() != r.dim(i) || !(s.spaces[i].field() == r.field())) return false;
  for (std::size_t a = 0; a < r.quiver().arrow_count(); ++a) {
    const auto& arr = r.quiver().arrow(a);
    const auto& src = s.spaces[arr.tail];
    if (src.dim() == 0) continue;
    if (!s.spaces[arr.head].contains(Subspace::span(r.matrix(a) * src.basis()))) return false;
  }
  return true;
}

SubRep zero_subrep(const Representation& r) {
  SubRep s;
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) s.spaces.emplace_back(r.field(), r.dim(i));
  return s;
}

SubRep full_subrep(const Representation& r) {
  SubRep s;
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) s.spaces.push_back(Subspace::full(r.field(), r.dim(i)));
  return s;
}

SubRep subrep_sum(const SubRep& a, const SubRep& b) {
  SubRep s;
  for (std::size_t i = 0; i < a.spaces.size(); ++i) s.spaces.push_back(a.spaces[i].sum(b.spaces[i]));
  return s;
}

bool subrep_contains(const SubRep& a, const SubRep& b) {
  for (std::size_t i = 0; i < a.spaces.size(); ++i)
    if (!a.spaces[i].contains(b.spaces[i])) return false;
  return true;
}

bool operator==(const SubRep& a, const SubRep& b) {
  if (a.spaces.size() != b.spaces.size()) return false;
  for (std::size_t i = 0; i < a.spaces.size(); ++i)
    if (!(a.spaces[i] == b.spaces[i])) return false;
  return true;
}

DirectSum direct_sum(const std::vector<Representation>& parts) {
  require(!parts.empty(), ErrorCode::DimensionMismatch, "direct sum of no parts");
  const Quiver& q = parts.front().quiver();
  const Field& f = parts.front().field();
  DimVector dims(q.vertex_count(), 0);
  DirectSum out;
  for (const auto& p : parts) {
    require(p.quiver() == q, ErrorCode::DimensionMismatch, "direct sum over different quivers");
    require(p.field() == f, ErrorCode::FieldMismatch, "direct sum over different fields");
    out.offsets.push_back(dims);
    dims = add(dims, p.dims());
  }
  std::vector<Matrix> ms;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.matrix(a));
    ms.push_back(block_diagonal(f, blocks));
  }
  out.rep = Representation(q, f, dims, std::move(ms));
  return out;
}

PairRep direct_sum(const std::vector<PairRep>& parts) {
  require(!parts.empty(), ErrorCode::DimensionMismatch, "direct sum of no parts");
  std::vector<Representation> reps;
  for (const auto& p : parts) reps.push_back(p.rep());
  return PairRep(parts.front().base(), direct_sum(reps).rep);
}

Matrix extract_block(const DirectSum& s, std::size_t arrow, std::size_t row_part, std::size_t col_part) {
  const auto& arr = s.rep.quiver().arrow(arrow);
  const auto& ro = s.offsets.at(row_part);
  const auto& co = s.offsets.at(col_part);
  auto part_dim = [&](std::size_t part, std::size_t vertex) {
    const auto next = part + 1 < s.offsets.size() ? s.offsets[part + 1][vertex] : s.rep.dims()[vertex];
    return static_cast<std::size_t>(next - s.offsets[part][vertex]);
  };
  return s.rep.matrix(arrow).block(static_cast<std::size_t>(ro[arr.head]), static_cast<std::size_t>(co[arr.tail]),
                                   part_dim(row_part, arr.head), part_dim(col_part, arr.tail));
}

SubRep spin_submodule(const Representation& r, const std::vector<GradedVector>& vectors) {
  const Quiver& q = r.quiver();
  std::vector<EchelonBasis> eb;
  std::vector<std::vector<Vector>> kept(q.vertex_count());
  for (std::size_t i = 0; i < q.vertex_count(); ++i) eb.emplace_back(r.field(), r.dim(i));
  std::deque<GradedVector> queue;
  for (const auto& [i, v] : vectors) {
    require(i < q.vertex_count() && v.size() == r.dim(i), ErrorCode::DimensionMismatch, "spin vector shape");
    if (eb[i].insert(v)) {
      kept[i].push_back(v);
      queue.emplace_back(i, v);
    }
  }
  while (!queue.empty()) {
    auto [i, v] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& arr = q.arrow(a);
      if (arr.tail != i) continue;
      Vector w = mul_vector(r.matrix(a), v);
      if (eb[arr.head].insert(w)) {
        kept[arr.head].push_back(w);
        queue.emplace_back(arr.head, std::move(w));
      }
    }
  }
  SubRep s;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    s.spaces.emplace_back(Matrix::from_columns(r.field(), r.dim(i), kept[i]));
  return s;
}

namespace {

// Rows of the inverse of the completion [S | T]: first dim S rows give
// S-coordinates, the rest give T-coordinates.
Matrix completion_inverse(const Subspace& s) {
  auto inv = inverse(s.completion());
  require(inv.has_value(), ErrorCode::InvalidSubrep, "completion is singular");
  return *inv;
}

}  // namespace

Representation restrict_to(const Representation& r, const SubRep& s) {
  require(is_subrep(r, s), ErrorCode::InvalidSubrep, "not closed under the arrows");
  const Quiver& q = r.quiver();
  std::vector<Matrix> left;
  for (const auto& sp : s.spaces) left.push_back(completion_inverse(sp).block(0, 0, sp.dim(), sp.ambient()));
  std::vector<Matrix> ms;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    ms.push_back(left[arr.head] * r.matrix(a) * s.spaces[arr.tail].basis());
  }
  return Representation(q, r.field(), s.dims(), std::move(ms));
}

PairRep restrict_to(const PairRep& r, const SubRep& s) { return PairRep(r.base(), restrict_to(r.rep(), s)); }

Quotient quotient(const Representation& r, const SubRep& s) {
  require(is_subrep(r, s), ErrorCode::InvalidSubrep, "not closed under the arrows");
  const Quiver& q = r.quiver();
  Quotient out;
  std::vector<Matrix> proj;
  DimVector dims;
  for (const auto& sp : s.spaces) {
    const std::size_t k = sp.dim(), n = sp.ambient();
    proj.push_back(completion_inverse(sp).block(k, 0, n - k, n));
    out.complement.push_back(sp.complement());
    dims.push_back(static_cast<std::int64_t>(n - k));
  }
  std::vector<Matrix> ms;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    ms.push_back(proj[arr.head] * r.matrix(a) * out.complement[arr.tail]);
  }
  out.rep = Representation(q, r.field(), dims, std::move(ms));
  return out;
}

SubRep preimage(const Representation& r, const SubRep& s, const Quotient& q, const SubRep& t) {
  SubRep out;
  for (std::size_t i = 0; i < s.spaces.size(); ++i) {
    Matrix lifted = q.complement[i] * t.spaces[i].basis();
    out.spaces.push_back(Subspace(s.spaces[i].basis().hstack(lifted)));
  }
  require(is_subrep(r, out), ErrorCode::InvalidSubrep, "preimage is not a subrepresentation");
  return out;
}

Representation change_basis(const Representation& r, const std::vector<Matrix>& basis) {
  const Quiver& q = r.quiver();
  require(basis.size() == q.vertex_count(), ErrorCode::DimensionMismatch, "one base change per vertex");
  std::vector<Matrix> inv;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require(basis[i].rows() == r.dim(i) && basis[i].cols() == r.dim(i), ErrorCode::DimensionMismatch,
            "base change shape");
    auto m = inverse(basis[i]);
    require(m.has_value(), ErrorCode::DimensionMismatch, "base change is singular");
    inv.push_back(std::move(*m));
  }
  std::vector<Matrix> ms;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    ms.push_back(inv[arr.head] * r.matrix(a) * basis[arr.tail]);
  }
  return Representation(q, r.field(), r.dims(), std::move(ms));
}

PairRep change_basis(const PairRep& r, const std::vector<Matrix>& basis) {
  return PairRep(r.base(), change_basis(r.rep(), basis));
}

PairRep reorient(const PairRep& r, const std::vector<std::size_t>& flips) {
  const Quiver& q = r.base();
  for (auto a : flips) require(a < q.arrow_count(), ErrorCode::UnknownName, "flip index out of range");
  Quiver nq = reorient_quiver(q, flips);
  const Field& f = r.field();
  std::vector<Matrix> x, xi;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const bool flip = std::find(flips.begin(), flips.end(), a) != flips.end();
    if (flip) {
      x.push_back(r.xi(a));
      xi.push_back(r.x(a).scaled(f.neg(f.one())));
    } else {
      x.push_back(r.x(a));
      xi.push_back(r.xi(a));
    }
  }
  return PairRep::from_pair(nq, f, r.dims(), std::move(x), std::move(xi));
}

Representation extend_scalars(const Representation& r, const Field& field) {
  if (r.field() == field) return r;
  Embedding e(r.field(), field);
  std::vector<Matrix> ms;
  for (const auto& m : r.matrices()) ms.push_back(extend_scalars(m, e));
  return Representation(r.quiver(), field, r.dims(), std::move(ms));
}

PairRep extend_scalars(const PairRep& r, const Field& field) {
  return PairRep(r.base(), extend_scalars(r.rep(), field));
}

Weights extend_scalars(const Weights& w, const Field& field) {
  if (w.field == field) return w;
  Embedding e(w.field, field);
  Weights out{field, {}};
  for (const auto& x : w.values) out.values.push_back(e(x));
  return out;
}

SubRep extend_scalars(const SubRep& s, const Field& field) {
  SubRep out;
  for (const auto& sp : s.spaces) {
    if (sp.field() == field) {
      out.spaces.push_back(sp);
    } else {
      out.spaces.push_back(Subspace(extend_scalars(sp.basis(), Embedding(sp.field(), field))));
    }
  }
  return out;
}

Representation dual(const Representation& r) {
  const Quiver& q = r.quiver();
  Quiver d;
  for (const auto& v : q.vertices()) d.add_vertex(v);
  std::vector<Matrix> ms;
  for (const auto& a : q.arrows()) d.add_arrow(a.name, a.head, a.tail);
  for (const auto& m : r.matrices()) ms.push_back(m.transpose());
  return Representation(d, r.field(), r.dims(), std::move(ms));
}

Representation simple_rep(const Quiver& q, const Field& field, std::size_t i) {
  DimVector d(q.vertex_count(), 0);
  d.at(i) = 1;
  return Representation(q, field, d);
}

Representation projective_rep(const Quiver& q, const Field& field, std::size_t i) {
  require(!q.has_oriented_cycle(), ErrorCode::CyclicQuiver, "projectives need an acyclic quiver");
  // Paths from i, grouped by end vertex; a path is its arrow sequence.
  std::vector<std::vector<std::vector<std::size_t>>> paths(q.vertex_count());
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::deque<std::pair<std::size_t, std::vector<std::size_t>>> queue{{i, {}}};
  while (!queue.empty()) {
    auto [end, p] = std::move(queue.front());
    queue.pop_front();
    index[p] = paths[end].size();
    paths[end].push_back(p);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (q.arrow(a).tail != end) continue;
      auto next = p;
      next.push_back(a);
      queue.emplace_back(q.arrow(a).head, std::move(next));
    }
  }
  DimVector dims;
  for (const auto& ps : paths) dims.push_back(static_cast<std::int64_t>(ps.size()));
  Representation r(q, field, dims);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    Matrix m(field, paths[arr.head].size(), paths[arr.tail].size());
    for (std::size_t c = 0; c < paths[arr.tail].size(); ++c) {
      auto p = paths[arr.tail][c];
      p.push_back(a);
      m(index.at(p), c) = field.one();
    }
    r.set_matrix(a, std::move(m));
  }
  return r;
}

Representation injective_rep(const Quiver& q, const Field& field, std::size_t i) {
  Quiver op;
  for (const auto& v : q.vertices()) op.add_vertex(v);
  for (const auto& a : q.arrows()) op.add_arrow(a.name, a.head, a.tail);
  Representation d = dual(projective_rep(op, field, i));
  return Representation(q, field, d.dims(), d.matrices());
}

Representation random_rep(const Quiver& q, const Field& field, const DimVector& dims, Rng& rng) {
  Representation r(q, field, dims);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    r.set_matrix(a, Matrix::random(field, r.dim(arr.head), r.dim(arr.tail), rng));
  }
  return r;
}

}  // namespace preproj
