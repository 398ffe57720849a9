#include "preproj/decompose.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>

#include "preproj/error.hpp"

namespace preproj {

std::string to_string(RegClass c) {
  switch (c) {
    case RegClass::Unclassified: return "unclassified";
    case RegClass::Preprojective: return "preprojective";
    case RegClass::Regular: return "regular";
    case RegClass::Preinjective: return "preinjective";
  }
  return "unclassified";
}

std::vector<Matrix> Decomposition::columns_of(const std::vector<std::size_t>& parts) const {
  std::vector<Matrix> out;
  const std::size_t nv = source.quiver().vertex_count();
  for (std::size_t i = 0; i < nv; ++i) {
    std::vector<std::size_t> cols;
    for (auto p : parts) {
      const auto start = static_cast<std::size_t>(offsets.at(p)[i]);
      for (std::size_t k = 0; k < summands[p].rep.dim(i); ++k) cols.push_back(start + k);
    }
    out.push_back(basis[i].select_columns(cols));
  }
  return out;
}

namespace {

struct Piece {
  Representation rep;
  std::vector<Matrix> basis;
};

struct State {
  Representation source;
  std::deque<Piece> pending;
  std::vector<Piece> done;

  void extend_to(const Field& f) {
    Embedding e(source.field(), f);
    auto lift = [&](Piece& p) {
      p.rep = extend_scalars(p.rep, f);
      for (auto& b : p.basis) b = extend_scalars(b, e);
    };
    source = extend_scalars(source, f);
    for (auto& p : pending) lift(p);
    for (auto& p : done) lift(p);
  }
};

Matrix total_matrix(const Field& f, const GradedMap& phi) { return block_diagonal(f, phi); }

// Split a piece along a vertexwise subspace decomposition.
Piece sub_piece(const Piece& p, const SubRep& s) {
  Piece out{restrict_to(p.rep, s), {}};
  for (std::size_t i = 0; i < s.spaces.size(); ++i) out.basis.push_back(p.basis[i] * s.spaces[i].basis());
  return out;
}

}  // namespace

Decomposition decompose(const Representation& x, std::uint64_t seed, const DecomposeOptions& opts) {
  State st{x, {}, {}};
  {
    Piece whole{x, {}};
    for (std::size_t i = 0; i < x.quiver().vertex_count(); ++i)
      whole.basis.push_back(Matrix::identity(x.field(), x.dim(i)));
    if (x.total_dim() > 0) st.pending.push_back(std::move(whole));
  }
  Rng rng(seed);
  while (!st.pending.empty()) {
    Piece piece = std::move(st.pending.front());
    st.pending.pop_front();
    const Field f = piece.rep.field();
    auto end = hom_space(piece.rep, piece.rep);
    if (end.size() <= 1) {
      st.done.push_back(std::move(piece));
      continue;
    }
    bool split = false, extended = false;
    unsigned widest = 1;  // largest irreducible degree seen among non-splitting draws
    for (std::size_t failures = 0; failures < opts.failures_to_stop && !split && !extended;) {
      GradedMap phi(end.front().size());
      for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = Matrix(f, piece.rep.dim(i), piece.rep.dim(i));
      for (const auto& b : end) {
        const Scalar c = f.random(rng);
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = phi[i] + b[i].scaled(c);
      }
      // Split along an irreducible factor of the characteristic polynomial.
      // When draws keep giving a power of one irreducible of degree > 1, the
      // residue field of End is larger than F and the field is extended.
      const Poly cp = char_poly(total_matrix(f, phi));
      std::optional<Poly> g;
      if (f.is_finite()) {
        auto fs = factor(cp);
        if (fs.size() >= 2) {
          g = fs.front().poly;
        } else if (fs.size() == 1 && fs.front().poly.degree() > 1) {
          widest = std::max(widest, static_cast<unsigned>(fs.front().poly.degree()));
          if (failures + 1 >= opts.extend_after) {
            st.pending.push_front(std::move(piece));
            st.extend_to(f.extend(widest));
            extended = true;
            break;
          }
        }
      } else {
        auto rs = roots(cp);
        if (!rs.empty() && rs.front().second < cp.degree()) g = Poly(f, {f.neg(rs.front().first), f.one()});
      }
      if (!g) {
        ++failures;
        continue;
      }
      SubRep ker, im;
      for (std::size_t i = 0; i < phi.size(); ++i) {
        auto fp = fitting(eval_poly(*g, phi[i]));
        ker.spaces.push_back(std::move(fp.ker_part));
        im.spaces.push_back(std::move(fp.im_part));
      }
      if (ker.total_dim() == 0 || im.total_dim() == 0) {
        ++failures;
        continue;
      }
      Piece a = sub_piece(piece, ker), b = sub_piece(piece, im);
      st.pending.push_front(std::move(b));
      st.pending.push_front(std::move(a));
      split = true;
    }
    if (!split && !extended) st.done.push_back(std::move(piece));
  }

  Decomposition out;
  out.source = st.source;
  const std::size_t nv = x.quiver().vertex_count();
  DimVector off(nv, 0);
  for (std::size_t i = 0; i < nv; ++i) out.basis.emplace_back(st.source.field(), x.dim(i), 0);
  for (auto& p : st.done) {
    out.offsets.push_back(off);
    off = add(off, p.rep.dims());
    for (std::size_t i = 0; i < nv; ++i) out.basis[i] = out.basis[i].hstack(p.basis[i]);
    out.summands.push_back({std::move(p.rep), RegClass::Unclassified});
  }
  return out;
}

Decomposition pri_split(const Quiver& q, const AffineData& aff, Decomposition d) {
  require(aff.is_affine, ErrorCode::NotAffine, "classification needs an affine quiver");
  for (auto& s : d.summands) {
    if (aff.has_oriented_cycle) {
      s.cls = RegClass::Regular;
      continue;
    }
    const auto def = defect(q, aff, s.rep.dims());
    s.cls = def < 0 ? RegClass::Preprojective : (def == 0 ? RegClass::Regular : RegClass::Preinjective);
  }
  return d;
}

TubePartition tube_partition(const std::vector<Representation>& regulars) {
  const std::size_t n = regulars.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto linked = [&](const Representation& a, const Representation& b) {
    return hom_dim(a, b) != 0 || ext1_dim(a.quiver(), a, b) != 0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (find(i) == find(j)) continue;
      if (linked(regulars[i], regulars[j]) || linked(regulars[j], regulars[i])) parent[find(i)] = find(j);
    }
  }
  TubePartition out;
  std::vector<std::size_t> group_of(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (group_of[root] == SIZE_MAX) {
      group_of[root] = out.groups.size();
      out.groups.emplace_back();
      out.sums.emplace_back(regulars[i].dims().size(), 0);
    }
    out.groups[group_of[root]].push_back(i);
    out.sums[group_of[root]] = add(out.sums[group_of[root]], regulars[i].dims());
  }
  return out;
}

GradedMap hom_lift(const Representation& p, const Representation& i, std::size_t v, const Vector& x,
                   const Vector& y) {
  const Field& f = p.field();
  require(x.size() == p.dim(v) && y.size() == i.dim(v), ErrorCode::DimensionMismatch, "lift vector shapes");
  auto basis = hom_space(p, i);
  Matrix sys(f, i.dim(v), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Vector img = mul_vector(basis[k][v], x);
    for (std::size_t r = 0; r < img.size(); ++r) sys(r, k) = img[r];
  }
  auto sol = solve_affine(sys, y);
  require(sol.has_value(), ErrorCode::NoLift, "no homomorphism sends x to y");
  GradedMap out;
  for (std::size_t j = 0; j < p.quiver().vertex_count(); ++j) out.emplace_back(f, i.dim(j), p.dim(j));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = out[j] + basis[k][j].scaled(sol->particular[k]);
  return out;
}

}  // namespace preproj
