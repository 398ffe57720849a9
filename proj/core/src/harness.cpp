#include "preproj/harness.hpp"

#include <chrono>

#include "preproj/error.hpp"

namespace preproj {

TrialReport run_theorem_trial(const TrialSpec& spec, std::size_t index) {
  const auto start = std::chrono::steady_clock::now();
  TrialReport rep;
  rep.index = index;
  const AffineData aff = affine_classify(spec.quiver);
  require(aff.is_affine, ErrorCode::NotAffine, "theorem trials need an affine quiver");
  Rng rng(spec.seed);
  static constexpr GenMode mix[] = {GenMode::SolveNearly, GenMode::ConjugatedSum, GenMode::EllLift};
  rep.mode = spec.mode.value_or(mix[rng.below(3)]);

  GenSpec g;
  g.quiver = spec.quiver;
  g.v = spec.vertex.value_or(aff.extending_vertices.front());
  g.field = spec.field;
  g.lambda = spec.lambda ? *spec.lambda : random_balanced_weights(spec.quiver, spec.field, rng, 1.0 / 3);
  g.dims = scale(aff.delta, spec.m);
  g.seed = rng.next();
  g.mode = rep.mode;

  try {
    const PairRep r = gen_nearly(g);
    rep.instance_hash = instance_hash(r);
    rep.classification = classify_relation(r, g.lambda, g.v).relation;
    EngineOptions opts;
    opts.budget = spec.budget;
    opts.seed = rng.next();
    const SubmoduleWitness w = nontrivial_submodule(r, g.lambda, g.v, opts);
    rep.provenance = w.provenance_string();
    rep.witness_dims = w.sub.dims();
    rep.witness_field = w.parent.field().name();
    rep.verified = verify_witness(r, w);
  } catch (const Error& e) {
    rep.error = e.code();
    rep.message = e.what();
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json to_json(const TrialReport& r) {
  Json j{{"trial", r.index},
         {"instance-hash", r.instance_hash},
         {"mode", to_string(r.mode)},
         {"classification", to_string(r.classification)},
         {"provenance", r.provenance},
         {"witness-dims", r.witness_dims},
         {"witness-field", r.witness_field},
         {"verified", r.verified},
         {"elapsed-ms", r.elapsed_ms}};
  if (r.error) j["error"] = r.message;
  return j;
}

}  // namespace preproj
