#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "preproj/field.hpp"

namespace preproj {

struct Arrow {
  std::string name;
  std::size_t tail;
  std::size_t head;
};

/// A finite quiver. Vertices and arrows keep their insertion order, which
/// drives every iteration and tie-break in the library.
class Quiver {
 public:
  Quiver() = default;

  std::size_t add_vertex(const std::string& name);
  std::size_t add_arrow(const std::string& name, std::size_t tail, std::size_t head);
  std::size_t add_arrow(const std::string& name, const std::string& tail, const std::string& head);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& vertex(std::size_t i) const { return vertices_.at(i); }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> find_arrow(const std::string& name) const;
  /// Throws UnknownName.
  std::size_t vertex_index(const std::string& name) const;
  std::size_t arrow_index(const std::string& name) const;

  bool is_connected() const;
  bool has_oriented_cycle() const;

  friend bool operator==(const Quiver& a, const Quiver& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// Indexed by vertex position.
using DimVector = std::vector<std::int64_t>;

/// λ ∈ K^I, indexed by vertex position.
struct Weights {
  Field field;
  std::vector<Scalar> values;

  static Weights zero(const Field& field, std::size_t n);
  /// λ·α as a field element.
  Scalar dot(const DimVector& alpha) const;
  friend bool operator==(const Weights& a, const Weights& b) = default;
};

struct AffineData {
  bool is_affine = false;
  DimVector delta;
  std::vector<std::size_t> extending_vertices;
  bool has_oriented_cycle = false;
};

/// Arrows a* appended after the original arrows, in the same order.
Quiver double_quiver(const Quiver& q);
std::string star_name(const std::string& arrow);

std::int64_t euler_form(const Quiver& q, const DimVector& alpha, const DimVector& beta);
AffineData affine_classify(const Quiver& q);
std::int64_t defect(const Quiver& q, const AffineData& aff, const DimVector& alpha);

inline const std::string infinity_vertex = "∞";
inline const std::string infinity_arrow = "a∞";

struct InfinityQuiver {
  Quiver quiver;
  Weights weights;
  std::size_t infinity;  // index of the new vertex (always last)
  std::size_t arrow;     // index of the connecting arrow (always last)
};
InfinityQuiver infinity_quiver(const Quiver& q, std::size_t v, const Weights& lambda);

/// Number of paths from i to each vertex. Throws CyclicQuiver.
DimVector proj_dim_vector(const Quiver& q, std::size_t i);
/// Number of paths from each vertex to i. Throws CyclicQuiver.
DimVector inj_dim_vector(const Quiver& q, std::size_t i);

/// Built-in families: "jordan", "cycle:n", "kronecker", "Dtilde4".
Quiver named_quiver(const std::string& name);

/// The same quiver with the given arrows reversed.
Quiver reorient_quiver(const Quiver& q, const std::vector<std::size_t>& flips);

DimVector scale(const DimVector& a, std::int64_t k);
DimVector add(const DimVector& a, const DimVector& b);
DimVector sub(const DimVector& a, const DimVector& b);
std::int64_t total(const DimVector& a);

}  // namespace preproj
