#include "preproj/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "preproj/error.hpp"

namespace preproj {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) parse_error("not a number: " + s);
  return std::stoull(s);
}

template <class F>
auto parsing(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    parse_error(what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Field& f) {
  if (f.is_rationals()) return "q";
  if (f.degree() == 1) return "gf:" + std::to_string(f.characteristic());
  return Json{{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

Field parse_field(const std::string& spec) {
  if (spec == "q") return Field::rationals();
  if (spec.rfind("gf:", 0) != 0) parse_error("unknown field spec: " + spec);
  const std::string rest = spec.substr(3);
  const auto caret = rest.find('^');
  const std::uint64_t p = parse_u64(rest.substr(0, caret));
  if (!is_prime(p)) parse_error("not a prime: " + std::to_string(p));
  if (caret == std::string::npos) return Field::prime(p);
  const auto k = parse_u64(rest.substr(caret + 1));
  if (k == 0) parse_error("extension degree must be positive");
  return k == 1 ? Field::prime(p) : Field::galois(p, static_cast<unsigned>(k));
}

Field field_from_json(const Json& j) {
  return parsing("field", [&] {
    if (j.is_string()) return parse_field(j.get<std::string>());
    const auto p = j.at("p").get<std::uint64_t>();
    const auto k = j.at("k").get<unsigned>();
    auto modulus = j.at("modulus").get<std::vector<std::uint64_t>>();
    if (!is_prime(p)) parse_error("not a prime: " + std::to_string(p));
    if (modulus.size() != k + 1) parse_error("modulus must have k+1 coefficients");
    return k == 1 ? Field::prime(p) : Field::finite(p, std::move(modulus));
  });
}

Json to_json(const Field& f, const Scalar& s) {
  if (f.is_rationals()) return s.rational().get_str();
  return Json(f.coeffs(s));
}

Scalar parse_scalar(const Field& f, const std::string& text) {
  return parsing("scalar '" + text + "'", [&] {
    const auto slash = text.find('/');
    if (f.is_rationals()) {
      mpq_class q(text, 10);
      if (slash != std::string::npos && q.get_den() == 0) parse_error("zero denominator");
      q.canonicalize();
      return f.from_rational(q);
    }
    auto as_int = [&](const std::string& s) {
      const bool neg = !s.empty() && s[0] == '-';
      const std::uint64_t n = parse_u64(neg ? s.substr(1) : s) % f.characteristic();
      const Scalar x = f.from_int(static_cast<std::int64_t>(n));
      return neg ? f.neg(x) : x;
    };
    if (slash == std::string::npos) return as_int(text);
    const Scalar d = as_int(text.substr(slash + 1));
    if (f.is_zero(d)) parse_error("zero denominator");
    return f.div(as_int(text.substr(0, slash)), d);
  });
}

Scalar scalar_from_json(const Field& f, const Json& j) {
  if (j.is_string()) return parse_scalar(f, j.get<std::string>());
  if (j.is_number_integer()) return parse_scalar(f, std::to_string(j.get<std::int64_t>()));
  return parsing("scalar", [&] {
    if (!f.is_finite() || !j.is_array()) parse_error("expected a coefficient array");
    auto cs = j.get<std::vector<std::uint64_t>>();
    if (cs.size() != f.degree()) parse_error("expected " + std::to_string(f.degree()) + " coefficients");
    for (auto c : cs)
      if (c >= f.characteristic()) parse_error("coefficient out of range");
    return f.from_coeffs(cs);
  });
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m.field(), m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& a : q.arrows())
    arrows.push_back(Json{{"name", a.name}, {"tail", q.vertex(a.tail)}, {"head", q.vertex(a.head)}});
  return Json{{"vertices", q.vertices()}, {"arrows", arrows}};
}

Quiver quiver_from_json(const Json& j) {
  return parsing("quiver", [&] {
    Quiver q;
    for (const auto& v : j.at("vertices")) {
      const auto name = v.is_string() ? v.get<std::string>() : v.dump();
      if (q.find_vertex(name)) throw Error(ErrorCode::NameCollision, "duplicate vertex " + name);
      q.add_vertex(name);
    }
    for (const auto& a : j.at("arrows")) {
      auto id = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
      const auto name = a.at("name").get<std::string>();
      if (q.find_arrow(name)) throw Error(ErrorCode::NameCollision, "duplicate arrow " + name);
      q.add_arrow(name, id(a.at("tail")), id(a.at("head")));
    }
    return q;
  });
}

Quiver resolve_quiver(const std::string& name_or_file) {
  if (name_or_file == "jordan" || name_or_file == "kronecker" || name_or_file == "Dtilde4" ||
      name_or_file.rfind("cycle:", 0) == 0)
    return named_quiver(name_or_file);
  std::ifstream in(name_or_file);
  if (!in) parse_error("no such quiver name or file: " + name_or_file);
  return quiver_from_json(parsing("quiver file", [&] { return Json::parse(in); }));
}

Json to_json(const Representation& r) {
  const Quiver& q = r.quiver();
  const Field& f = r.field();
  Json dims = Json::object(), mats = Json::object();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) dims[q.vertex(i)] = r.dims()[i];
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    mats[q.arrow(a).name] = to_json(r.matrix(a));
  }
  return Json{{"field", to_json(f)}, {"quiver", to_json(q)}, {"dims", dims}, {"matrices", mats}};
}

Representation representation_from_json(const Json& j) {
  return parsing("representation", [&] {
    const Field f = field_from_json(j.at("field"));
    const Quiver q = quiver_from_json(j.at("quiver"));
    DimVector dims(q.vertex_count(), 0);
    for (const auto& [name, d] : j.at("dims").items()) {
      const auto v = d.get<std::int64_t>();
      if (v < 0) throw Error(ErrorCode::DimensionMismatch, "negative dimension at " + name);
      dims[q.vertex_index(name)] = v;
    }
    std::vector<Matrix> mats;
    const Json& jm = j.at("matrices");
    for (const auto& a : q.arrows()) {
      const auto rows = static_cast<std::size_t>(dims[a.head]), cols = static_cast<std::size_t>(dims[a.tail]);
      Matrix m(f, rows, cols);
      if (jm.contains(a.name)) {
        const Json& jr = jm.at(a.name);
        if (jr.size() != rows) throw Error(ErrorCode::DimensionMismatch, "arrow " + a.name + " has wrong row count");
        for (std::size_t i = 0; i < rows; ++i) {
          if (jr[i].size() != cols)
            throw Error(ErrorCode::DimensionMismatch, "arrow " + a.name + " has wrong column count");
          for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(f, jr[i][k]);
        }
      } else if (rows != 0 && cols != 0) {
        throw Error(ErrorCode::UnknownName, "missing matrix for arrow " + a.name);
      }
      mats.push_back(std::move(m));
    }
    return Representation(q, f, dims, std::move(mats));
  });
}

Json to_json(const PairRep& r) {
  Json j = to_json(r.rep());
  j["base_quiver"] = to_json(r.base());
  return j;
}

PairRep pair_from_json(const Json& j) {
  return parsing("pair representation", [&] {
    Representation rep = representation_from_json(j);
    Quiver base = quiver_from_json(j.at("base_quiver"));
    if (!(rep.quiver() == double_quiver(base)))
      throw Error(ErrorCode::DimensionMismatch, "quiver is not the double of base_quiver");
    return PairRep(std::move(base), std::move(rep));
  });
}

Json to_json(const Quiver& q, const SubRep& s) {
  Json dims = Json::object(), bases = Json::object();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    dims[q.vertex(i)] = s.spaces[i].dim();
    bases[q.vertex(i)] = to_json(s.spaces[i].basis());
  }
  return Json{{"dims", dims}, {"bases", bases}};
}

Json to_json(const Quiver& q, const Weights& w) {
  Json j = Json::object();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    const Scalar& s = w.values[i];
    j[q.vertex(i)] = w.field.degree() == 1 ? Json(w.field.format(s)) : to_json(w.field, s);
  }
  return j;
}

Weights weights_from_json(const Quiver& q, const Field& f, const Json& j) {
  return parsing("weights", [&] {
    Weights w = Weights::zero(f, q.vertex_count());
    for (const auto& [name, val] : j.items()) w.values[q.vertex_index(name)] = scalar_from_json(f, val);
    return w;
  });
}

Weights parse_weights(const Quiver& q, const Field& f, const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{')
    return weights_from_json(q, f, parsing("weights", [&] { return Json::parse(text); }));
  Weights w = Weights::zero(f, q.vertex_count());
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) parse_error("expected vertex=value in '" + item + "'");
    w.values[q.vertex_index(item.substr(0, eq))] = parse_scalar(f, item.substr(eq + 1));
  }
  return w;
}

std::string instance_hash(const PairRep& r) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(r).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace preproj
