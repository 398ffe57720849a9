#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#ifdef PREPROJ_CLI11_SPLIT_HEADER
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "preproj/error.hpp"
#include "preproj/harness.hpp"
#include "selftest.hpp"

using namespace preproj;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExhausted: return kBudget;
    case ErrorCode::PreconditionFailed:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::NotNearly:
    case ErrorCode::NotAModule:
    case ErrorCode::Infeasible:
    case ErrorCode::NotAffine:
    case ErrorCode::SingleTube:
    case ErrorCode::NotACycle: return kNegative;
    default: return kUsage;
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

// A bare PairRep, or the envelope written by `gen nearly`.
struct PairInput {
  PairRep pair;
  std::optional<Json> lambda;
  std::optional<std::string> vertex;
};

PairInput read_pair(const std::string& path) {
  Json doc = read_document(path);
  if (doc.contains("instance")) {
    PairInput in{pair_from_json(doc.at("instance")), std::nullopt, std::nullopt};
    if (doc.contains("lambda")) in.lambda = doc.at("lambda");
    if (doc.contains("vertex")) in.vertex = doc.at("vertex").get<std::string>();
    return in;
  }
  return {pair_from_json(doc), std::nullopt, std::nullopt};
}

// A Representation; a PairRep or envelope is accepted as its double-quiver representation.
Representation read_rep(const std::string& path, bool underlying) {
  Json doc = read_document(path);
  if (doc.contains("instance")) doc = doc.at("instance");
  if (doc.contains("base_quiver")) {
    PairRep p = pair_from_json(doc);
    return underlying ? p.underlying() : p.rep();
  }
  return representation_from_json(doc);
}

struct Common {
  std::string input = "-";
  std::string quiver = "kronecker";
  std::string vertex;
  std::string lambda;
  std::string dims;
  std::string field = "gf:5";
  std::string mode;
  std::int64_t m = 2;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  std::size_t budget = SearchBudget{}.random_elements;
};

std::size_t pick_vertex(const Quiver& q, const std::string& flag, const std::optional<std::string>& fallback) {
  if (!flag.empty()) return q.vertex_index(flag);
  if (fallback) return q.vertex_index(*fallback);
  const AffineData aff = affine_classify(q);
  return aff.is_affine ? aff.extending_vertices.front() : 0;
}

Weights pick_weights(const Quiver& q, const Field& f, const std::string& flag, const std::optional<Json>& fallback) {
  if (!flag.empty()) return parse_weights(q, f, flag);
  if (fallback) return weights_from_json(q, f, *fallback);
  return Weights::zero(f, q.vertex_count());
}

Json dims_json(const Quiver& q, const DimVector& d) {
  Json j = Json::object();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) j[q.vertex(i)] = d[i];
  return j;
}

SearchBudget budget_of(const Common& c) {
  SearchBudget b;
  b.random_elements = c.budget;
  return b;
}

int quiver_info(const Common& c) {
  const Quiver q = resolve_quiver(c.quiver);
  const AffineData aff = affine_classify(q);
  Json ext = Json::array();
  for (auto v : aff.extending_vertices) ext.push_back(q.vertex(v));
  emit(Json{{"quiver", to_json(q)},
            {"connected", q.is_connected()},
            {"has_oriented_cycle", aff.has_oriented_cycle},
            {"is_affine", aff.is_affine},
            {"delta", aff.is_affine ? Json(aff.delta) : Json(nullptr)},
            {"extending_vertices", ext}});
  return kOk;
}

int rep_check(const Common& c) {
  const PairInput in = read_pair(c.input);
  const Quiver& q = in.pair.base();
  const std::size_t v = pick_vertex(q, c.vertex, in.vertex);
  const Weights lambda = pick_weights(q, in.pair.field(), c.lambda, in.lambda);
  const Classification cls = classify_relation(in.pair, lambda, v);
  const Field& f = in.pair.field();
  Scalar trace_sum = f.zero();
  Json ranks = Json::object();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    ranks[q.vertex(i)] = cls.defect.ranks[i];
    trace_sum = f.add(trace_sum, cls.defect.per_vertex[i].trace());
  }
  emit(Json{{"classification", to_string(cls.relation)},
            {"vertex", q.vertex(v)},
            {"lambda_dot_dims", to_json(f, lambda.dot(in.pair.dims()))},
            {"defect_ranks", ranks},
            {"defect_trace_sum", to_json(f, trace_sum)}});
  return cls.relation == Relation::Neither ? kNegative : kOk;
}

int rep_decompose(const Common& c) {
  const Representation x = read_rep(c.input, true);
  const Quiver& q = x.quiver();
  const AffineData aff = affine_classify(q);
  Decomposition d = decompose(x, c.seed);
  if (aff.is_affine) d = pri_split(q, aff, std::move(d));
  Json summands = Json::array();
  std::vector<Representation> regulars;
  std::vector<std::size_t> regular_index;
  for (std::size_t k = 0; k < d.summands.size(); ++k) {
    const auto& s = d.summands[k];
    Json j{{"dims", dims_json(q, s.rep.dims())}, {"class", to_string(s.cls)}};
    if (aff.is_affine) j["defect"] = defect(q, aff, s.rep.dims());
    summands.push_back(std::move(j));
    if (s.cls == RegClass::Regular) {
      regulars.push_back(s.rep);
      regular_index.push_back(k);
    }
  }
  Json tubes = Json::array();
  if (!regulars.empty()) {
    for (const auto& g : tube_partition(regulars).groups) {
      Json group = Json::array();
      for (auto k : g) group.push_back(regular_index[k]);
      tubes.push_back(std::move(group));
    }
  }
  emit(Json{{"field", to_json(d.field())}, {"summands", summands}, {"tube_groups", tubes}});
  return kOk;
}

int rep_submodule(const Common& c) {
  const PairInput in = read_pair(c.input);
  const Quiver& q = in.pair.base();
  const std::size_t v = pick_vertex(q, c.vertex, in.vertex);
  const Weights lambda = pick_weights(q, in.pair.field(), c.lambda, in.lambda);
  EngineOptions opts;
  opts.budget = budget_of(c);
  opts.seed = c.seed;
  const SubmoduleWitness w = nontrivial_submodule(in.pair, lambda, v, opts);
  const bool ok = verify_witness(in.pair, w);
  emit(Json{{"provenance", w.provenance_string()},
            {"field", to_json(w.parent.field())},
            {"witness", to_json(q, w.sub)},
            {"verified", ok}});
  return ok ? kOk : kNegative;
}

int rep_simplicity(const Common& c) {
  const Representation r = read_rep(c.input, false);
  const SimplicityResult res = simplicity(r, budget_of(c), c.seed);
  Json j{{"simple", res.simple},
         {"certificate",
          {{"basis_spins", res.certificate.basis_spins},
           {"norton", res.certificate.norton},
           {"exhaustive", res.certificate.exhaustive}}}};
  if (!res.simple) j["witness"] = to_json(r.quiver(), res.witness);
  emit(j);
  return kOk;
}

DimVector parse_dims(const Quiver& q, const std::string& text, std::int64_t m) {
  if (text.empty()) {
    const AffineData aff = affine_classify(q);
    if (!aff.is_affine) throw Error(ErrorCode::NotAffine, "--dims is required for non-affine quivers");
    return scale(aff.delta, m);
  }
  DimVector d(q.vertex_count(), 0);
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::Parse, std::string("malformed --dims: ") + e.what());
    }
    for (const auto& [name, val] : j.items()) d[q.vertex_index(name)] = val.get<std::int64_t>();
    return d;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected vertex=int in '" + item + "'");
    try {
      d[q.vertex_index(item.substr(0, eq))] = std::stoll(item.substr(eq + 1));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad dimension in '" + item + "'");
    }
  }
  return d;
}

GenMode mode_of(const std::string& s, GenMode fallback) {
  if (s.empty()) return fallback;
  auto m = parse_gen_mode(s);
  if (!m) throw Error(ErrorCode::Parse, "unknown mode " + s);
  return *m;
}

int gen_nearly_cmd(const Common& c) {
  GenSpec s;
  s.quiver = resolve_quiver(c.quiver);
  s.field = parse_field(c.field);
  s.v = pick_vertex(s.quiver, c.vertex, std::nullopt);
  s.lambda = pick_weights(s.quiver, s.field, c.lambda, std::nullopt);
  s.dims = parse_dims(s.quiver, c.dims, c.m);
  s.seed = c.seed;
  s.mode = mode_of(c.mode, GenMode::SolveNearly);
  const PairRep r = gen_nearly(s);
  emit(Json{{"rng", std::string(Rng::algorithm)},
            {"seed", c.seed},
            {"mode", to_string(s.mode)},
            {"vertex", s.quiver.vertex(s.v)},
            {"lambda", to_json(s.quiver, s.lambda)},
            {"classification", to_string(classify_relation(r, s.lambda, s.v).relation)},
            {"hash", instance_hash(r)},
            {"instance", to_json(r)}});
  return kOk;
}

int theorem_verify(const Common& c) {
  const Quiver q = resolve_quiver(c.quiver);
  const Field f = parse_field(c.field);
  std::optional<GenMode> mode;
  if (!c.mode.empty() && c.mode != "mix") mode = mode_of(c.mode, GenMode::SolveNearly);
  std::optional<Weights> lambda;
  if (!c.lambda.empty()) lambda = parse_weights(q, f, c.lambda);
  std::optional<std::size_t> vertex;
  if (!c.vertex.empty()) vertex = q.vertex_index(c.vertex);

  Json trials = Json::array();
  std::size_t verified = 0, exhausted = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    TrialSpec spec{q, c.m, f, c.seed + t, mode, lambda, vertex, budget_of(c)};
    const TrialReport rep = run_theorem_trial(spec, t);
    verified += rep.verified;
    exhausted += rep.error == ErrorCode::BudgetExhausted;
    trials.push_back(to_json(rep));
  }
  emit(Json{{"rng", std::string(Rng::algorithm)},
            {"quiver", c.quiver},
            {"m", c.m},
            {"field", to_json(f)},
            {"seed", c.seed},
            {"trials", trials},
            {"verified", verified},
            {"budget_exhausted", exhausted}});
  if (verified == c.trials) return kOk;
  return exhausted > 0 ? kBudget : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed preprojective algebras on affine quivers"};
  app.require_subcommand(1);
  Common c;

  auto add_input = [&](CLI::App* s) { s->add_option("--input", c.input, "JSON file, or - for stdin"); };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "64-bit seed"); };
  auto add_budget = [&](CLI::App* s) { s->add_option("--budget", c.budget, "random algebra elements per search"); };
  auto add_weights = [&](CLI::App* s) {
    s->add_option("--vertex", c.vertex, "distinguished vertex");
    s->add_option("--lambda", c.lambda, "weights: JSON object or inline i=val,...");
  };

  int code = kOk;
  auto bind = [&](CLI::App* s, int (*fn)(const Common&)) { s->callback([&code, &c, fn] { code = fn(c); }); };

  auto* quiver = app.add_subcommand("quiver", "quiver queries")->require_subcommand(1);
  auto* info = quiver->add_subcommand("info", "affine type, δ and extending vertices");
  info->add_option("--quiver", c.quiver, "built-in name or JSON file")->required();
  bind(info, quiver_info);

  auto* rep = app.add_subcommand("rep", "operations on a representation")->require_subcommand(1);
  auto* check = rep->add_subcommand("check", "classify as module, nearly or neither");
  add_input(check);
  add_weights(check);
  bind(check, rep_check);
  auto* dec = rep->add_subcommand("decompose", "indecomposable summands, classes and tube groups");
  add_input(dec);
  add_seed(dec);
  bind(dec, rep_decompose);
  auto* sub = rep->add_subcommand("submodule", "verified proper submodule of a nearly pair");
  add_input(sub);
  add_weights(sub);
  add_seed(sub);
  add_budget(sub);
  bind(sub, rep_submodule);
  auto* simp = rep->add_subcommand("simplicity", "simplicity verdict with certificate or witness");
  add_input(simp);
  add_seed(simp);
  add_budget(simp);
  bind(simp, rep_simplicity);

  auto* gen = app.add_subcommand("gen", "instance generators")->require_subcommand(1);
  auto* nearly = gen->add_subcommand("nearly", "random nearly representation");
  nearly->add_option("--quiver", c.quiver, "built-in name or JSON file");
  add_weights(nearly);
  nearly->add_option("--dims", c.dims, "dimension vector: JSON object or inline i=n,...");
  nearly->add_option("--m", c.m, "multiple of δ when --dims is absent");
  nearly->add_option("--field", c.field, "q, gf:p or gf:p^k");
  nearly->add_option("--mode", c.mode, "SolveNearly, ConjugatedSum, EllLift or WeylSum");
  add_seed(nearly);
  bind(nearly, gen_nearly_cmd);

  auto* theorem = app.add_subcommand("theorem", "main theorem checks")->require_subcommand(1);
  auto* verify = theorem->add_subcommand("verify", "generate instances and verify submodule witnesses");
  verify->add_option("--quiver", c.quiver, "built-in name or JSON file")->required();
  verify->add_option("--m", c.m, "multiple of δ");
  verify->add_option("--field", c.field, "q, gf:p or gf:p^k");
  verify->add_option("--trials", c.trials, "number of trials");
  verify->add_option("--mode", c.mode, "generator mode, or mix");
  add_weights(verify);
  add_seed(verify);
  add_budget(verify);
  bind(verify, theorem_verify);

  auto* self = app.add_subcommand("selftest", "run the embedded invariant suite");
  self->callback([&] { code = run_selftest(std::cout) ? kOk : kNegative; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
