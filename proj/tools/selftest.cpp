#include "selftest.hpp"

#include <functional>
#include <string>
#include <vector>

#include "preproj/error.hpp"
#include "preproj/harness.hpp"

using namespace preproj;

namespace {

bool field_axioms() {
  const Field f = Field::galois(7, 2);
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
    if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
    if (!f.is_zero(a) && !f.is_one(f.mul(a, f.inv(a)))) return false;
  }
  return true;
}

bool weyl_commutator() {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    for (std::size_t m = 1; m <= 3; ++m) {
      const PairRep r = weyl_pair(p, m, p * 10 + m);
      const Matrix c = r.x(0) * r.xi(0) - r.xi(0) * r.x(0);
      if (!(c == Matrix::identity(r.field(), p * m))) return false;
    }
  return true;
}

bool trace_identity() {
  Rng rng(2);
  for (const char* name : {"jordan", "cycle:3", "kronecker", "Dtilde4"}) {
    const Quiver q = named_quiver(name);
    const Field f = Field::prime(5);
    DimVector d(q.vertex_count());
    for (auto& x : d) x = rng.between(0, 3);
    const Representation r = random_rep(double_quiver(q), f, d, rng);
    Weights w = Weights::zero(f, q.vertex_count());
    for (auto& x : w.values) x = f.random(rng);
    const auto def = moment_defect(PairRep(q, r), w);
    Scalar sum = f.zero();
    for (const auto& m : def.per_vertex) sum = f.add(sum, m.trace());
    if (sum != f.neg(w.dot(d))) return false;
  }
  return true;
}

bool round_trip_and_determinism() {
  const Quiver q = named_quiver("kronecker");
  for (const char* field : {"gf:5", "gf:7^2", "q"}) {
    for (auto mode : {GenMode::SolveNearly, GenMode::ConjugatedSum, GenMode::EllLift}) {
      GenSpec s;
      s.quiver = q;
      s.field = parse_field(field);
      s.lambda = Weights::zero(s.field, 2);
      s.dims = {2, 2};
      s.seed = 11;
      s.mode = mode;
      const PairRep a = gen_nearly(s), b = gen_nearly(s);
      if (to_json(a).dump() != to_json(b).dump()) return false;
      if (!(pair_from_json(Json::parse(to_json(a).dump())) == a)) return false;
    }
  }
  return true;
}

bool simplicity_oracle() {
  Rng rng(3);
  const Field f = Field::prime(2);
  for (int k = 0; k < 20; ++k) {
    const Quiver q = named_quiver(k % 2 ? "kronecker" : "cycle:3");
    DimVector d(q.vertex_count());
    for (auto& x : d) x = rng.between(0, 2);
    if (total(d) == 0) d[0] = 1;
    const Representation r = random_rep(q, f, d, rng);
    const bool oracle = !exhaustive_submodule(r).has_value();
    if (simplicity(r, {}, rng.next()).simple != oracle) return false;
  }
  return true;
}

bool theorem_trials() {
  for (const char* name : {"jordan", "cycle:2", "cycle:3", "kronecker", "Dtilde4"})
    for (std::uint64_t seed : {1, 2}) {
      TrialSpec s;
      s.quiver = named_quiver(name);
      s.field = Field::prime(5);
      s.seed = seed;
      if (!run_theorem_trial(s, 0).verified) return false;
    }
  return true;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"field_axioms_gf49", field_axioms},
      {"weyl_commutator", weyl_commutator},
      {"trace_identity", trace_identity},
      {"round_trip_and_determinism", round_trip_and_determinism},
      {"simplicity_oracle_gf2", simplicity_oracle},
      {"theorem_trials", theorem_trials},
  };
  Json report = Json::array();
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    std::string error;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    all = all && ok;
    Json j{{"name", name}, {"passed", ok}};
    if (!error.empty()) j["error"] = error;
    report.push_back(std::move(j));
  }
  out << Json{{"checks", report}, {"passed", all}}.dump(2) << "\n";
  return all;
}
