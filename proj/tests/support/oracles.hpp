#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "preproj/representation.hpp"

/// Plain modular arithmetic over GF(p), written without the library's linear
/// algebra so that it can serve as an independent check.
namespace oracle {

using Row = std::vector<std::int64_t>;
using Mat = std::vector<Row>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod(Mat m, std::int64_t p) {
  std::size_t rk = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t piv = rk;
    while (piv < rows && mod(m[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rk]);
    const std::int64_t inv = inv_mod(m[rk][c], p);
    for (auto& x : m[rk]) x = mod(x * inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rk) continue;
      const std::int64_t f = mod(m[r][c], p);
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = mod(m[r][k] - f * m[rk][k], p);
    }
    ++rk;
  }
  return rk;
}

/// Prime-field matrix to integers.
inline Mat to_ints(const preproj::Matrix& m) {
  Mat out(m.rows(), Row(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = static_cast<std::int64_t>(m(r, c).code());
  return out;
}

inline Row mat_vec(const Mat& m, const Row& v, std::int64_t p) {
  Row out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] = mod(out[r] + m[r][c] * v[c], p);
  return out;
}

/// dim Hom(M, N) over a prime field from the defining linear system.
inline std::size_t hom_dim(const preproj::Representation& m, const preproj::Representation& n) {
  const auto& q = m.quiver();
  const std::int64_t p = static_cast<std::int64_t>(m.field().characteristic());
  std::vector<std::size_t> off(q.vertex_count() + 1, 0);
  for (std::size_t i = 0; i < q.vertex_count(); ++i) off[i + 1] = off[i] + n.dim(i) * m.dim(i);
  const std::size_t unknowns = off.back();
  Mat eqs;
  // f_i is dims_N(i) x dims_M(i), entry (r, c) at off[i] + r * dims_M(i) + c.
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t t = q.arrow(a).tail, h = q.arrow(a).head;
    const Mat ma = to_ints(m.matrix(a)), na = to_ints(n.matrix(a));
    for (std::size_t r = 0; r < n.dim(h); ++r) {
      for (std::size_t c = 0; c < m.dim(t); ++c) {
        Row eq(unknowns, 0);
        for (std::size_t k = 0; k < m.dim(h); ++k)
          eq[off[h] + r * m.dim(h) + k] = mod(eq[off[h] + r * m.dim(h) + k] + ma[k][c], p);
        for (std::size_t k = 0; k < n.dim(t); ++k)
          eq[off[t] + k * m.dim(t) + c] = mod(eq[off[t] + k * m.dim(t) + c] - na[r][k], p);
        eqs.push_back(std::move(eq));
      }
    }
  }
  return unknowns - (eqs.empty() ? 0 : rank_mod(eqs, p));
}

/// Simplicity over GF(p) by spinning every nonzero homogeneous vector.
inline bool is_simple_exhaustive(const preproj::Representation& r) {
  const auto& q = r.quiver();
  const std::int64_t p = static_cast<std::int64_t>(r.field().characteristic());
  const std::size_t total = r.total_dim();
  if (total == 0) return false;
  std::vector<std::size_t> off(q.vertex_count() + 1, 0);
  for (std::size_t i = 0; i < q.vertex_count(); ++i) off[i + 1] = off[i] + r.dim(i);
  std::vector<Mat> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) maps.push_back(to_ints(r.matrix(a)));
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    const std::size_t d = r.dim(i);
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < d; ++k) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 1; code < count; ++code) {
      Row local(d);
      std::uint64_t c = code;
      for (std::size_t k = 0; k < d; ++k) {
        local[k] = static_cast<std::int64_t>(c % p);
        c /= p;
      }
      // Breadth-first spin over homogeneous vectors; track the span by rank.
      std::vector<std::pair<std::size_t, Row>> frontier{{i, local}};
      Mat span;
      std::size_t rk = 0;
      while (!frontier.empty()) {
        auto [vx, vec] = frontier.back();
        frontier.pop_back();
        Row full(total, 0);
        for (std::size_t k = 0; k < vec.size(); ++k) full[off[vx] + k] = vec[k];
        span.push_back(full);
        const std::size_t nr = rank_mod(span, p);
        if (nr == rk) {
          span.pop_back();
          continue;
        }
        rk = nr;
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
          if (q.arrow(a).tail == vx) frontier.emplace_back(q.arrow(a).head, mat_vec(maps[a], vec, p));
      }
      if (rk < total) return false;
    }
  }
  return true;
}

}  // namespace oracle
