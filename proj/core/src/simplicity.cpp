#include "preproj/simplicity.hpp"

#include "preproj/error.hpp"
#include "preproj/poly.hpp"

namespace preproj {

namespace {

struct TotalSpace {
  std::vector<std::size_t> offsets;
  std::size_t n = 0;
  std::vector<Matrix> idempotents;
  std::vector<Matrix> arrows;

  explicit TotalSpace(const Representation& r) {
    const Quiver& q = r.quiver();
    const Field& f = r.field();
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
      offsets.push_back(n);
      n += r.dim(i);
    }
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
      Matrix e(f, n, n);
      for (std::size_t k = 0; k < r.dim(i); ++k) e(offsets[i] + k, offsets[i] + k) = f.one();
      idempotents.push_back(std::move(e));
    }
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& arr = q.arrow(a);
      Matrix m(f, n, n);
      m.set_block(offsets[arr.head], offsets[arr.tail], r.matrix(a));
      arrows.push_back(std::move(m));
    }
  }

  std::vector<Matrix> operators() const {
    std::vector<Matrix> ops = idempotents;
    ops.insert(ops.end(), arrows.begin(), arrows.end());
    return ops;
  }
};

std::vector<Matrix> transposed(const std::vector<Matrix>& ops) {
  std::vector<Matrix> out;
  for (const auto& m : ops) out.push_back(m.transpose());
  return out;
}

Matrix random_element(const Field& f, const TotalSpace& ts, Rng& rng) {
  Matrix theta(f, ts.n, ts.n);
  for (const auto& e : ts.idempotents) theta = theta + e.scaled(f.random(rng));
  if (ts.arrows.empty()) return theta;
  const std::size_t words = 2 + rng.below(5);
  for (std::size_t w = 0; w < words; ++w) {
    const std::size_t len = 1 + rng.below(4);
    Matrix word = ts.arrows[rng.below(ts.arrows.size())];
    for (std::size_t k = 1; k < len; ++k) word = ts.arrows[rng.below(ts.arrows.size())] * word;
    theta = theta + word.scaled(f.random_nonzero(rng));
  }
  return theta;
}

Vector random_combination(const Field& f, const Subspace& s, Rng& rng) {
  Vector v(s.ambient(), f.zero());
  for (std::size_t j = 0; j < s.dim(); ++j) {
    const Scalar c = f.random(rng);
    if (f.is_zero(c)) continue;
    for (std::size_t r = 0; r < s.ambient(); ++r) v[r] = f.add(v[r], f.mul(c, s.basis()(r, j)));
  }
  if (is_zero_vector(f, v) && s.dim() > 0) v = s.basis().column(0);
  return v;
}

// Irreducible factors usable for kernels: all factors over GF, linear ones over Q.
std::vector<Poly> candidate_factors(const Poly& cp) {
  std::vector<Poly> out;
  if (cp.field().is_finite()) {
    for (auto& f : factor(cp)) out.push_back(f.poly);
  } else {
    const Field& f = cp.field();
    for (auto& [r, m] : roots(cp)) out.push_back(Poly(f, {f.neg(r), f.one()}));
  }
  return out;
}

Subspace annihilator(const Field& f, std::size_t n, const Subspace& dual) {
  if (dual.dim() == 0) return Subspace::full(f, n);
  return rank_ker_im(dual.basis().transpose()).kernel;
}

}  // namespace

SubRep split_total(const Representation& r, const Subspace& total) {
  TotalSpace ts(r);
  SubRep s;
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) {
    Matrix part = total.basis().block(ts.offsets[i], 0, r.dim(i), total.dim());
    s.spaces.push_back(Subspace::span(part));
  }
  return s;
}

bool is_proper_witness(const Representation& r, const SubRep& s) {
  return is_subrep(r, s) && s.total_dim() > 0 && s.total_dim() < r.total_dim();
}

std::optional<std::uint64_t> exhaustive_cost(const Representation& r) {
  if (!r.field().is_finite()) return std::nullopt;
  const std::uint64_t q = r.field().order();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) {
    std::uint64_t t = 1;
    for (std::size_t k = 0; k < r.dim(i); ++k) {
      if (t > (UINT64_MAX >> 1) / q) return std::nullopt;
      t *= q;
    }
    total += t;
  }
  return total;
}

std::optional<SubRep> exhaustive_submodule(const Representation& r) {
  const Field& f = r.field();
  require(f.is_finite(), ErrorCode::FieldMismatch, "exhaustive search needs a finite field");
  const std::uint64_t q = f.order();
  const std::size_t total = r.total_dim();
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) {
    const std::size_t d = r.dim(i);
    // Normalised vectors: leading coordinate `lead` is 1, earlier ones 0.
    for (std::size_t lead = 0; lead < d; ++lead) {
      std::vector<std::uint64_t> digits(d - lead - 1, 0);
      while (true) {
        Vector v(d, f.zero());
        v[lead] = f.one();
        for (std::size_t k = 0; k < digits.size(); ++k) v[lead + 1 + k] = f.element(digits[k]);
        SubRep s = spin_submodule(r, {{i, v}});
        if (s.total_dim() < total) return s;
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
        if (k == digits.size()) break;
      }
    }
  }
  return std::nullopt;
}

std::vector<SubRep> cyclic_submodules(const Representation& r, std::size_t samples, std::uint64_t exhaustive_limit,
                                      Rng& rng) {
  const Field& f = r.field();
  const std::size_t total = r.total_dim();
  std::vector<SubRep> out;
  auto keep = [&](SubRep s) {
    if (s.total_dim() == 0 || s.total_dim() >= total) return;
    for (const auto& t : out)
      if (t == s) return;
    out.push_back(std::move(s));
  };
  if (total == 0) return out;

  auto cost = exhaustive_cost(r);
  if (cost && *cost <= exhaustive_limit) {
    const std::uint64_t q = f.order();
    for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) {
      const std::size_t d = r.dim(i);
      for (std::size_t lead = 0; lead < d; ++lead) {
        std::vector<std::uint64_t> digits(d - lead - 1, 0);
        while (true) {
          Vector v(d, f.zero());
          v[lead] = f.one();
          for (std::size_t k = 0; k < digits.size(); ++k) v[lead + 1 + k] = f.element(digits[k]);
          keep(spin_submodule(r, {{i, v}}));
          std::size_t k = 0;
          while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
          if (k == digits.size()) break;
        }
      }
    }
    return out;
  }

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i)
    if (r.dim(i) > 0) live.push_back(i);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t i = live[rng.below(live.size())];
    Vector v(r.dim(i), f.zero());
    while (is_zero_vector(f, v))
      for (auto& e : v) e = f.random(rng);
    keep(spin_submodule(r, {{i, v}}));
  }
  TotalSpace ts(r);
  const auto ops = ts.operators();
  for (std::size_t k = 0; k < samples / 4 + 1; ++k) {
    Matrix theta = random_element(f, ts, rng);
    for (const Poly& g : candidate_factors(char_poly(theta))) {
      const Subspace kern = rank_ker_im(eval_poly(g, theta)).kernel;
      if (kern.dim() == 0) continue;
      keep(split_total(r, spin(f, ts.n, {random_combination(f, kern, rng)}, ops)));
    }
  }
  return out;
}

SimplicityResult simplicity(const Representation& r, const SearchBudget& budget, std::uint64_t seed) {
  require(r.total_dim() > 0, ErrorCode::DimensionMismatch, "simplicity of the zero representation");
  const Field& f = r.field();
  const std::size_t total = r.total_dim();
  SimplicityResult out;

  auto found = [&](SubRep s) {
    require(is_proper_witness(r, s), ErrorCode::AssertionFailed, "submodule witness failed re-verification");
    out.simple = false;
    out.witness = std::move(s);
    return out;
  };

  // Standard basis vectors in vertex order.
  for (std::size_t i = 0; i < r.quiver().vertex_count(); ++i) {
    for (std::size_t k = 0; k < r.dim(i); ++k) {
      Vector e(r.dim(i), f.zero());
      e[k] = f.one();
      SubRep s = spin_submodule(r, {{i, e}});
      if (s.total_dim() < total) return found(std::move(s));
    }
  }
  out.certificate.basis_spins = true;

  TotalSpace ts(r);
  const auto ops = ts.operators();
  const auto ops_t = transposed(ops);
  Rng rng(seed);
  for (std::size_t trial = 0; trial < budget.random_elements && !out.certificate.norton; ++trial) {
    Matrix theta = random_element(f, ts, rng);
    const Poly cp = char_poly(theta);
    for (const Poly& g : candidate_factors(cp)) {
      const Subspace kern = rank_ker_im(eval_poly(g, theta)).kernel;
      if (kern.dim() == 0) continue;
      Subspace s = spin(f, ts.n, {kern.basis().column(0)}, ops);
      if (s.dim() < ts.n) return found(split_total(r, s));
      if (kern.dim() == static_cast<std::size_t>(g.degree())) {
        const Subspace kern_t = rank_ker_im(eval_poly(g, theta.transpose())).kernel;
        Subspace sd = spin(f, ts.n, {kern_t.basis().column(0)}, ops_t);
        if (sd.dim() < ts.n) return found(split_total(r, annihilator(f, ts.n, sd)));
        out.certificate.norton = true;
        break;
      }
      for (std::size_t k = 0; k < budget.vectors_per_kernel; ++k) {
        Subspace sk = spin(f, ts.n, {random_combination(f, kern, rng)}, ops);
        if (sk.dim() < ts.n) return found(split_total(r, sk));
      }
    }
  }

  auto cost = exhaustive_cost(r);
  if (cost && *cost <= budget.exhaustive_limit) {
    if (auto s = exhaustive_submodule(r)) return found(std::move(*s));
    out.certificate.exhaustive = true;
  }
  if (!out.certificate.norton && !out.certificate.exhaustive)
    throw Error(ErrorCode::BudgetExhausted, "simplicity undecided within the search budget");
  out.simple = true;
  return out;
}

}  // namespace preproj
