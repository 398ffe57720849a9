#include "preproj/infinity.hpp"

#include "preproj/error.hpp"
#include "preproj/homological.hpp"

namespace preproj {

namespace {

InfRep attach(const PairRep& r, const Weights& lambda, std::size_t v, std::size_t dim_inf, Matrix to_v,
              Matrix from_v) {
  auto iq = infinity_quiver(r.base(), v, lambda);
  DimVector dims = r.dims();
  dims.push_back(static_cast<std::int64_t>(dim_inf));
  std::vector<Matrix> x, xi;
  for (std::size_t a = 0; a < r.base().arrow_count(); ++a) {
    x.push_back(r.x(a));
    xi.push_back(r.xi(a));
  }
  x.push_back(std::move(to_v));
  xi.push_back(std::move(from_v));
  return {PairRep::from_pair(iq.quiver, r.field(), dims, std::move(x), std::move(xi)), iq.weights, iq.infinity,
          iq.arrow};
}

}  // namespace

InfRep ell(const PairRep& r, const Weights& lambda, std::size_t v) {
  const Field& f = r.field();
  const Matrix xc = moment_defect(r, lambda).per_vertex.at(v);
  const std::size_t d = r.rep().dim(v);
  return attach(r, lambda, v, d, xc.scaled(f.neg(f.one())), Matrix::identity(f, d));
}

InfRep rr(const PairRep& r, const Weights& lambda, std::size_t v) {
  const Field& f = r.field();
  const Matrix xc = moment_defect(r, lambda).per_vertex.at(v);
  const std::size_t d = r.rep().dim(v);
  return attach(r, lambda, v, d, Matrix::identity(f, d), xc.scaled(f.neg(f.one())));
}

std::vector<Matrix> natural_map(const PairRep& r, const Weights& lambda, std::size_t v) {
  const Field& f = r.field();
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < r.base().vertex_count(); ++i) out.push_back(Matrix::identity(f, r.rep().dim(i)));
  out.push_back(moment_defect(r, lambda).per_vertex.at(v).scaled(f.neg(f.one())));
  return out;
}

InfRep gamma(const PairRep& r, const Weights& lambda, std::size_t v) {
  auto cls = classify_relation(r, lambda, v);
  require(cls.nearly, ErrorCode::NotNearly, "gamma needs a nearly representation");
  const Field& f = r.field();
  const Matrix eta = cls.defect.per_vertex.at(v).scaled(f.neg(f.one()));
  // eta = C K with C the pivot columns of eta.
  auto e = row_reduce(eta);
  const Matrix c = eta.select_columns(e.pivots);
  const Matrix k = e.rref.block(0, 0, e.pivots.size(), eta.cols());
  return attach(r, lambda, v, e.pivots.size(), c, k);
}

PairRep restrict(const InfRep& y) {
  const Quiver& qi = y.pair.base();
  Quiver q;
  for (std::size_t i = 0; i < qi.vertex_count(); ++i)
    if (i != y.infinity) q.add_vertex(qi.vertex(i));
  auto index = [&](std::size_t i) { return i > y.infinity ? i - 1 : i; };
  std::vector<Matrix> x, xi;
  for (std::size_t a = 0; a < qi.arrow_count(); ++a) {
    if (a == y.arrow) continue;
    const auto& arr = qi.arrow(a);
    q.add_arrow(arr.name, index(arr.tail), index(arr.head));
    x.push_back(y.pair.x(a));
    xi.push_back(y.pair.xi(a));
  }
  DimVector dims;
  for (std::size_t i = 0; i < qi.vertex_count(); ++i)
    if (i != y.infinity) dims.push_back(y.pair.dims()[i]);
  return PairRep::from_pair(q, y.pair.field(), dims, std::move(x), std::move(xi));
}

bool is_bistable(const InfRep& y) {
  auto d = moment_defect(y.pair, y.lambda);
  for (auto rk : d.ranks) require(rk == 0, ErrorCode::NotAModule, "bistability needs an actual module");
  const Representation s = simple_rep(y.pair.rep().quiver(), y.pair.field(), y.infinity);
  return hom_dim(s, y.pair.rep()) == 0 && hom_dim(y.pair.rep(), s) == 0;
}

}  // namespace preproj
