#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "preproj/representation.hpp"

namespace preproj {

/// A graded map f = (f_i : M_i -> N_i).
using GradedMap = std::vector<Matrix>;

/// Basis of {f : f_{h(a)} M_a = N_a f_{t(a)} for all a}.
std::vector<GradedMap> hom_space(const Representation& m, const Representation& n);
std::size_t hom_dim(const Representation& m, const Representation& n);
bool is_homomorphism(const Representation& m, const Representation& n, const GradedMap& f);

/// dim Hom(M, N) − ⟨dim M, dim N⟩.
std::int64_t ext1_dim(const Quiver& q, const Representation& m, const Representation& n);

/// Φ_{MN} : r(N,M) -> h(N,M), θ ↦ Σ_a (M_a θ_a − θ_a N_a).
/// Domain coordinates: arrows in order, θ_a : N_{h(a)} -> M_{t(a)} vectorised
/// column-major. Codomain: vertices in order, Hom(N_i, M_i) column-major.
struct PhiMap {
  Matrix matrix;
  std::vector<std::size_t> domain_offsets;    // per arrow
  std::vector<std::size_t> codomain_offsets;  // per vertex
  DimVector m_dims;
  DimVector n_dims;
  Quiver quiver;

  Vector pack_domain(const std::vector<Matrix>& theta) const;
  std::vector<Matrix> unpack_domain(const Vector& x) const;
  Vector pack_codomain(const std::vector<Matrix>& h) const;
  std::vector<Matrix> unpack_codomain(const Vector& y) const;
  std::vector<Matrix> apply(const std::vector<Matrix>& theta) const;
};
PhiMap phi_map(const Representation& m, const Representation& n);

/// Σ_i tr(h_i f_i) for h ∈ h(N,M) and f ∈ Hom(M,N).
Scalar trace_pairing(const Field& field, const std::vector<Matrix>& h, const GradedMap& f);

/// Column-major vectorisation helpers.
void vec_into(const Matrix& m, Vector& out, std::size_t offset);
Matrix unvec(const Field& field, const Vector& v, std::size_t offset, std::size_t rows, std::size_t cols);

}  // namespace preproj
