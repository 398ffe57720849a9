#include "preproj/theorem.hpp"

#include <algorithm>
#include <optional>

#include "preproj/almost_commuting.hpp"
#include "preproj/error.hpp"

namespace preproj {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::NonRegular: return "NonRegular";
    case Provenance::MultiTube: return "MultiTube";
    case Provenance::SingleTubeSearch: return "SingleTubeSearch";
    case Provenance::CycleReorient: return "CycleReorient";
    case Provenance::LoopLemma: return "LoopLemma";
    case Provenance::GenericSearch: return "GenericSearch";
  }
  return "GenericSearch";
}

std::string SubmoduleWitness::provenance_string() const {
  std::string s;
  for (auto p : path) {
    if (!s.empty()) s += "/";
    s += to_string(p);
  }
  return s;
}

bool verify_witness(const PairRep& input, const SubmoduleWitness& w) {
  if (!(w.parent == extend_scalars(input, w.parent.field()))) return false;
  return is_proper_witness(w.parent.rep(), w.sub);
}

namespace {

// Per-vertex coordinate ranges of a block ordering [part 0 | part 1 | ...].
struct Layout {
  std::vector<DimVector> offset;  // per part
  std::vector<DimVector> size;    // per part
};

Layout layout_of(const std::vector<DimVector>& sizes) {
  Layout l;
  DimVector off(sizes.front().size(), 0);
  for (const auto& s : sizes) {
    l.offset.push_back(off);
    l.size.push_back(s);
    off = add(off, s);
  }
  return l;
}

bool block_zero(const std::vector<Matrix>& e, const Layout& l, std::size_t row_part, std::size_t col_part) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto r0 = static_cast<std::size_t>(l.offset[row_part][i]), nr = static_cast<std::size_t>(l.size[row_part][i]);
    const auto c0 = static_cast<std::size_t>(l.offset[col_part][i]), nc = static_cast<std::size_t>(l.size[col_part][i]);
    if (nr == 0 || nc == 0) continue;
    if (!e[i].block(r0, c0, nr, nc).is_zero()) return false;
  }
  return true;
}

// Span of the columns of `basis` belonging to the given parts.
SubRep span_parts(const std::vector<Matrix>& basis, const Layout& l, const std::vector<std::size_t>& parts) {
  SubRep s;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<std::size_t> cols;
    for (auto p : parts)
      for (std::int64_t k = 0; k < l.size[p][i]; ++k) cols.push_back(static_cast<std::size_t>(l.offset[p][i] + k));
    s.spaces.push_back(Subspace::span(basis[i].select_columns(cols)));
  }
  return s;
}

DimVector sum_dims(const Decomposition& d, const std::vector<std::size_t>& parts) {
  DimVector s(d.source.quiver().vertex_count(), 0);
  for (auto p : parts) s = add(s, d.summands[p].rep.dims());
  return s;
}

std::vector<Matrix> hstack_all(const std::vector<std::vector<Matrix>>& pieces) {
  std::vector<Matrix> out = pieces.front();
  for (std::size_t k = 1; k < pieces.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i].hstack(pieces[k][i]);
  return out;
}

SubmoduleWitness checked(const PairRep& input, SubmoduleWitness w) {
  require(verify_witness(input, w), ErrorCode::AssertionFailed,
          "witness from " + w.provenance_string() + " failed verification");
  return w;
}

Decomposition classified(const PairRep& r, const AffineData& aff, std::uint64_t seed) {
  return pri_split(r.base(), aff, decompose(r.underlying(), seed));
}

SubmoduleWitness nonregular_from(const PairRep& r, const Weights& lambda, const Decomposition& d) {
  std::vector<std::size_t> p, reg, inj;
  for (std::size_t k = 0; k < d.summands.size(); ++k) {
    switch (d.summands[k].cls) {
      case RegClass::Preprojective: p.push_back(k); break;
      case RegClass::Regular: reg.push_back(k); break;
      case RegClass::Preinjective: inj.push_back(k); break;
      case RegClass::Unclassified: throw Error(ErrorCode::AssertionFailed, "unclassified summand");
    }
  }
  require(!p.empty() || !inj.empty(), ErrorCode::HypothesisViolated, "representation is regular");
  require(!p.empty() && !inj.empty(), ErrorCode::AssertionFailed, "zero defect forces both P and I nonzero");
  const Field& f = d.field();
  const PairRep parent = extend_scalars(r, f);
  const Weights lam = extend_scalars(lambda, f);
  const std::vector<Matrix> basis = hstack_all({d.columns_of(p), d.columns_of(reg), d.columns_of(inj)});
  const Layout l = layout_of({sum_dims(d, p), sum_dims(d, reg), sum_dims(d, inj)});
  const auto e = moment_defect(change_basis(parent, basis), lam).per_vertex;
  constexpr std::size_t P = 0, R = 1, I = 2;
  require(block_zero(e, l, P, I), ErrorCode::AssertionFailed, "Φ_PI(ξ_PI) is nonzero");
  if (block_zero(e, l, P, R)) return {parent, span_parts(basis, l, {R, I}), {Provenance::NonRegular}};
  if (block_zero(e, l, R, I)) return {parent, span_parts(basis, l, {I}), {Provenance::NonRegular}};
  throw Error(ErrorCode::AssertionFailed, "neither the PR nor the RI block vanishes");
}

SubmoduleWitness multitube_from(const PairRep& r, const Weights& lambda, const AffineData& aff,
                                const Decomposition& d, const TubePartition& tp, const EngineOptions& opts) {
  require(tp.groups.size() >= 2, ErrorCode::SingleTube, "all summands lie in one tube");
  std::vector<std::size_t> u, v = tp.groups.back();
  for (std::size_t g = 0; g + 1 < tp.groups.size(); ++g) u.insert(u.end(), tp.groups[g].begin(), tp.groups[g].end());
  std::sort(u.begin(), u.end());

  const Field& f = d.field();
  const PairRep parent = extend_scalars(r, f);
  const Weights lam = extend_scalars(lambda, f);
  const std::vector<Matrix> basis = hstack_all({d.columns_of(u), d.columns_of(v)});
  const DimVector dim_u = sum_dims(d, u), dim_v = sum_dims(d, v);
  const Layout l = layout_of({dim_u, dim_v});
  const PairRep conj = change_basis(parent, basis);
  constexpr std::size_t U = 0, V = 1;

  std::int64_t m_prime = 0;
  for (std::size_t i = 0; i < aff.delta.size(); ++i)
    if (aff.delta[i] == 1) m_prime = dim_v[i];
  require(dim_v == scale(aff.delta, m_prime), ErrorCode::AssertionFailed, "tube group is not a multiple of δ");

  if (m_prime == 1) {
    const auto e = moment_defect(conj, lam).per_vertex;
    if (block_zero(e, l, U, V)) return {parent, span_parts(basis, l, {V}), {Provenance::MultiTube}};
    if (block_zero(e, l, V, U)) return {parent, span_parts(basis, l, {U}), {Provenance::MultiTube}};
    throw Error(ErrorCode::AssertionFailed, "neither the UV nor the VU block vanishes");
  }

  // (V, ξ_VV) is again nearly; find a regular submodule W of it.
  const Quiver dq = conj.rep().quiver();
  std::vector<Matrix> vv;
  for (std::size_t a = 0; a < dq.arrow_count(); ++a) {
    const auto& arr = dq.arrow(a);
    vv.push_back(conj.rep().matrix(a).block(static_cast<std::size_t>(dim_u[arr.head]),
                                            static_cast<std::size_t>(dim_u[arr.tail]),
                                            static_cast<std::size_t>(dim_v[arr.head]),
                                            static_cast<std::size_t>(dim_v[arr.tail])));
  }
  const PairRep inner_pair(conj.base(), Representation(dq, f, dim_v, std::move(vv)));
  const SubmoduleWitness inner = generic_submodule(inner_pair, opts, &aff);

  const Field& g = inner.parent.field();
  const PairRep parent2 = extend_scalars(r, g);
  const Embedding emb(f, g);
  std::vector<Matrix> basis2;
  for (const auto& b : basis) basis2.push_back(extend_scalars(b, emb));
  const PairRep conj2 = extend_scalars(conj, g);

  // Coordinates [U | W | Z] inside the conjugated frame.
  std::vector<Matrix> frame;
  DimVector dim_w = inner.sub.dims(), dim_z = sub(dim_v, dim_w);
  for (std::size_t i = 0; i < dim_u.size(); ++i) {
    const auto nu = static_cast<std::size_t>(dim_u[i]), nv = static_cast<std::size_t>(dim_v[i]);
    Matrix wz = inner.sub.spaces[i].completion();
    Matrix m(g, nu + nv, nu + nv);
    m.set_block(0, 0, Matrix::identity(g, nu));
    m.set_block(nu, nu, wz);
    frame.push_back(std::move(m));
  }
  const Layout l2 = layout_of({dim_u, dim_w, dim_z});
  const auto e = moment_defect(change_basis(conj2, frame), extend_scalars(lam, g)).per_vertex;
  std::vector<Matrix> full;
  for (std::size_t i = 0; i < frame.size(); ++i) full.push_back(basis2[i] * frame[i]);
  constexpr std::size_t U2 = 0, W2 = 1, Z2 = 2;
  std::vector<Provenance> path{Provenance::MultiTube};
  path.insert(path.end(), inner.path.begin(), inner.path.end());
  if (block_zero(e, l2, U2, W2)) return {parent2, span_parts(full, l2, {W2}), path};
  if (block_zero(e, l2, Z2, U2)) return {parent2, span_parts(full, l2, {U2, W2}), path};
  throw Error(ErrorCode::AssertionFailed, "neither the UW nor the ZU block vanishes");
}

SubmoduleWitness dispatch_acyclic(const PairRep& r, const Weights& lambda, const AffineData& aff,
                                  const EngineOptions& opts) {
  const Decomposition d = classified(r, aff, opts.seed);
  const bool regular = std::all_of(d.summands.begin(), d.summands.end(),
                                   [](const Summand& s) { return s.cls == RegClass::Regular; });
  if (!regular) return checked(r, nonregular_from(r, lambda, d));
  std::vector<Representation> regs;
  for (const auto& s : d.summands) regs.push_back(s.rep);
  const TubePartition tp = tube_partition(regs);
  if (tp.groups.size() >= 2) return checked(r, multitube_from(r, lambda, aff, d, tp, opts));
  SubmoduleWitness w = generic_submodule(r, opts);
  w.path.front() = Provenance::SingleTubeSearch;
  return checked(r, std::move(w));
}

bool is_oriented_cycle(const Quiver& q) {
  if (!q.is_connected() || q.arrow_count() != q.vertex_count()) return false;
  std::vector<int> in(q.vertex_count(), 0), out(q.vertex_count(), 0);
  for (const auto& a : q.arrows()) {
    ++in[a.head];
    ++out[a.tail];
  }
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    if (in[i] != 1 || out[i] != 1) return false;
  return true;
}

// Regular Π-submodules are closed under sums and intersections, so search
// the lattice generated by cyclic submodules.
std::optional<SubRep> regular_search(const PairRep& cur, const AffineData& aff, const EngineOptions& opts, Rng& rng) {
  const Quiver& q = cur.base();
  std::vector<SubRep> pool =
      cyclic_submodules(cur.rep(), opts.regular_candidates, opts.cyclic_exhaustive_limit, rng);
  auto regular = [&](const SubRep& s) { return defect(q, aff, s.dims()) == 0; };
  for (const auto& s : pool)
    if (regular(s)) return s;
  const std::size_t total = cur.total_dim();
  auto add = [&](SubRep s) -> bool {
    if (s.total_dim() == 0 || s.total_dim() >= total) return false;
    for (const auto& t : pool)
      if (t == s) return false;
    pool.push_back(std::move(s));
    return regular(pool.back());
  };
  for (std::size_t i = 1; i < pool.size() && pool.size() < opts.lattice_limit; ++i) {
    for (std::size_t j = 0; j < i && pool.size() < opts.lattice_limit; ++j) {
      if (add(subrep_sum(pool[i], pool[j]))) return pool.back();
      SubRep meet;
      for (std::size_t k = 0; k < q.vertex_count(); ++k)
        meet.spaces.push_back(pool[i].spaces[k].intersection(pool[j].spaces[k]));
      if (add(std::move(meet))) return pool.back();
    }
  }
  return std::nullopt;
}

}  // namespace

SubmoduleWitness generic_submodule(const PairRep& r, const EngineOptions& opts, const AffineData* regular_over) {
  PairRep cur = r;
  Rng rng(opts.seed ^ 0x5bd1e995u);
  for (std::size_t round = 0; round <= opts.extension_rounds; ++round) {
    if (regular_over) {
      if (auto w = regular_search(cur, *regular_over, opts, rng))
        return checked(r, {cur, *w, {Provenance::GenericSearch}});
      cur = extend_scalars(r, r.field().extend(static_cast<unsigned>(round + 2)));
      continue;
    }
    const SimplicityResult res = simplicity(cur.rep(), opts.budget, rng.next());
    if (!res.simple) return checked(r, {cur, res.witness, {Provenance::GenericSearch}});
    const std::size_t e = hom_dim(cur.rep(), cur.rep());
    require(e > 1, ErrorCode::HypothesisViolated, "representation is absolutely simple");
    cur = extend_scalars(cur, cur.field().extend(static_cast<unsigned>(e)));
  }
  throw Error(ErrorCode::BudgetExhausted,
              regular_over ? "no regular submodule found within the search budget" : "field extension rounds exhausted");
}

SubmoduleWitness find_submodule_nonregular(const PairRep& r, const Weights& lambda, const AffineData& aff,
                                           const EngineOptions& opts) {
  return checked(r, nonregular_from(r, lambda, classified(r, aff, opts.seed)));
}

SubmoduleWitness find_submodule_multitube(const PairRep& r, const Weights& lambda, const AffineData& aff,
                                          std::size_t /*v*/, const EngineOptions& opts) {
  const Decomposition d = classified(r, aff, opts.seed);
  for (const auto& s : d.summands)
    require(s.cls == RegClass::Regular, ErrorCode::HypothesisViolated, "representation is not regular");
  std::vector<Representation> regs;
  for (const auto& s : d.summands) regs.push_back(s.rep);
  return checked(r, multitube_from(r, lambda, aff, d, tube_partition(regs), opts));
}

SubmoduleWitness find_submodule_cycle(const PairRep& r, const Weights& lambda, std::size_t /*v*/,
                                      const EngineOptions& opts) {
  require(is_oriented_cycle(r.base()), ErrorCode::NotACycle, "base quiver is not an oriented cycle");
  if (r.base().vertex_count() == 1) {
    if (r.field().is_zero(lambda.values[0])) {
      const Subspace u = common_invariant(ACInstance(r.x(0), r.xi(0)));
      return checked(r, {extend_scalars(r, u.field()), SubRep{{u}}, {Provenance::LoopLemma}});
    }
    return generic_submodule(r, opts);
  }
  const PairRep flipped = reorient(r, {0});
  const AffineData aff = affine_classify(flipped.base());
  SubmoduleWitness inner = dispatch_acyclic(flipped, lambda, aff, opts);
  std::vector<Provenance> path{Provenance::CycleReorient};
  path.insert(path.end(), inner.path.begin(), inner.path.end());
  return checked(r, {extend_scalars(r, inner.parent.field()), inner.sub, path});
}

SubmoduleWitness nontrivial_submodule(const PairRep& r, const Weights& lambda, std::size_t v,
                                      const EngineOptions& opts) {
  const Quiver& q = r.base();
  auto fail = [](const std::string& why) { throw Error(ErrorCode::PreconditionFailed, why); };
  if (v >= q.vertex_count()) fail("vertex out of range");
  const AffineData aff = affine_classify(q);
  if (!aff.is_affine) fail("not affine");
  if (std::find(aff.extending_vertices.begin(), aff.extending_vertices.end(), v) == aff.extending_vertices.end())
    fail("vertex is not extending");
  if (!classify_relation(r, lambda, v).nearly) fail("not nearly");
  const std::int64_t m = r.dims()[v];
  if (r.dims() != scale(aff.delta, m)) fail("dimension vector is not a multiple of δ");
  if (m <= 1) fail("m ≤ 1");
  if (!lambda.field.is_zero(lambda.dot(aff.delta))) fail("λ·δ ≠ 0");
  if (aff.has_oriented_cycle) return find_submodule_cycle(r, lambda, v, opts);
  return dispatch_acyclic(r, lambda, aff, opts);
}

TubeReductionData reduced_weights(const Weights& lambda, const std::vector<DimVector>& p_dims,
                                  const std::vector<DimVector>& s_dims, const Quiver& q, std::size_t v) {
  const std::size_t n = q.vertex_count();
  require(!s_dims.empty(), ErrorCode::BadTubeData, "no regular simples given");
  require(p_dims.empty() || p_dims.size() == n, ErrorCode::BadTubeData, "one projective per vertex required");
  require(lambda.values.size() == n && v < n, ErrorCode::DimensionMismatch, "weights or vertex out of range");
  const AffineData aff = affine_classify(q);
  require(aff.is_affine, ErrorCode::NotAffine, "tube data needs an affine quiver");
  DimVector sum(n, 0);
  for (const auto& s : s_dims) sum = add(sum, s);
  require(sum == aff.delta, ErrorCode::BadTubeData, "regular simples do not sum to δ");

  auto pairing = [&](std::size_t i, const DimVector& beta) {
    return p_dims.empty() ? beta[i] : euler_form(q, p_dims[i], beta);
  };
  const Field& f = lambda.field;
  TubeReductionData out{Weights{f, {}}, DimVector(s_dims.size(), 1), 0, s_dims, p_dims};
  std::optional<std::size_t> vp;
  std::int64_t at_v = 0;
  for (std::size_t j = 0; j < s_dims.size(); ++j) {
    Scalar l = f.zero();
    for (std::size_t i = 0; i < n; ++i) l = f.add(l, f.mul(lambda.values[i], f.from_int(pairing(i, s_dims[j]))));
    out.lambda_prime.values.push_back(l);
    const auto pv = pairing(v, s_dims[j]);
    at_v += pv;
    if (pv == 1) {
      require(!vp, ErrorCode::BadTubeData, "v′ selector is not unique");
      vp = j;
    } else {
      require(pv == 0, ErrorCode::BadTubeData, "pairing with P(v) outside {0, 1}");
    }
  }
  require(vp.has_value() && at_v == 1, ErrorCode::BadTubeData, "no v′ with pairing one");
  out.v_prime = *vp;
  require(out.lambda_prime.dot(out.delta_prime) == lambda.dot(aff.delta), ErrorCode::AssertionFailed,
          "λ′·δ′ differs from λ·δ");
  return out;
}

}  // namespace preproj
