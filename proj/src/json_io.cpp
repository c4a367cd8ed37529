#include "filtmult/json_io.hpp"

#include <iomanip>
#include <sstream>

namespace filtmult {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::kSchema, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema("expected a rational as \"p/q\" or an integer");
}

Json coordinate(const QuadExt& x) {
  if (x.is_rational()) return to_fraction_string(x.a());
  return to_json(Scalar(x));
}

std::string render_double(double v, int digits) {
  std::ostringstream out;
  out << std::setprecision(digits) << v;
  return out.str();
}

bool is_scalar_object(const Json& j) {
  if (!j.is_object()) return false;
  if (j.size() == 1 && (j.contains("rat") || j.contains("quad"))) return true;
  return j.size() == 2 && j.contains("float") && j.contains("tol");
}

Json scalars(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

Json estimate_float(const Rational& value, const Rational& lo, const Rational& hi) {
  double tol = std::max(Rational(hi - lo).get_d() / 2, kDefaultFloatTolerance);
  return to_json(Scalar(Float{value.get_d(), tol}));
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
}

// -----------------------------------------------------------------------------

Json to_json(const Scalar& s) {
  switch (s.kind()) {
    case ScalarKind::kRational: return Json{{"rat", to_fraction_string(s.rational())}};
    case ScalarKind::kQuadExt: {
      QuadExt q = s.quad();
      return Json{{"quad", Json{{"a", to_fraction_string(q.a())},
                                {"b", to_fraction_string(q.b())},
                                {"n", q.radicand()}}}};
    }
    case ScalarKind::kFloat: {
      Float f = s.as_float();
      return Json{{"float", f.value}, {"tol", f.tol}};
    }
  }
  return Json();
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return Scalar(rational_from_json(j));
  if (j.is_number_float()) return Scalar::from_double(j.get<double>());
  if (!j.is_object()) schema("expected a scalar");
  if (j.contains("rat")) return Scalar(rational_from_json(j.at("rat")));
  if (j.contains("quad")) {
    const Json& q = j.at("quad");
    std::int64_t n = int_field(q, "n");
    if (n < 2) schema("quadratic radicand must be at least 2");
    return Scalar(QuadExt(rational_from_json(field(q, "a")), rational_from_json(field(q, "b")), n));
  }
  if (j.contains("float")) {
    const Json& v = j.at("float");
    if (!v.is_number()) schema("float value must be a number");
    double tol = kDefaultFloatTolerance;
    if (j.contains("tol")) {
      if (!j.at("tol").is_number() || j.at("tol").get<double>() < 0) schema("tol must be a nonnegative number");
      tol = j.at("tol").get<double>();
    }
    return Scalar(Float{v.get<double>(), tol});
  }
  schema("unknown scalar encoding");
}

Json to_json(const ExponentVector& v) { return Json(v.to_vector()); }

Json to_json(const MonomialIdeal& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.generators()) gens.push_back(to_json(g));
  return Json{{"dim", ideal.dim()}, {"gens", gens}};
}

MonomialIdeal ideal_from_json(std::size_t dim, const Json& gens) {
  if (!gens.is_array()) schema("generators must be an array");
  std::vector<ExponentVector> out;
  for (const auto& g : gens) {
    if (!g.is_array() || g.size() != dim) schema("exponent vector of wrong length");
    std::vector<std::int64_t> coords;
    for (const auto& c : g) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0) schema("exponents must be nonnegative integers");
      coords.push_back(c.get<std::int64_t>());
    }
    out.emplace_back(coords);
  }
  return MonomialIdeal(dim, std::move(out));
}

// -----------------------------------------------------------------------------

Json to_json(const Filtration& f) {
  Json out;
  out["dim"] = f.dim();
  switch (f.kind()) {
    case FiltrationKind::kAdic:
      out["kind"] = "adic";
      out["gens"] = to_json(f.ideal())["gens"];
      break;
    case FiltrationKind::kDivisorialToric: {
      out["kind"] = "divtoric";
      Json terms = Json::array();
      for (const auto& t : f.terms()) terms.push_back(Json{{"w", t.valuation.weights()}, {"a", to_json(t.coefficient)}});
      out["terms"] = terms;
      break;
    }
    case FiltrationKind::kProduct:
      out["kind"] = "product";
      out["factors"] = Json::array({to_json(f.first()), to_json(f.second())});
      break;
    case FiltrationKind::kRescale:
      out["kind"] = "rescale";
      out["base"] = to_json(f.first());
      out["l"] = f.parameter();
      break;
    case FiltrationKind::kTruncate:
      out["kind"] = "truncate";
      out["base"] = to_json(f.first());
      out["a"] = f.parameter();
      break;
    case FiltrationKind::kClosure:
      out["kind"] = "closure";
      out["base"] = to_json(f.first());
      out["r_max"] = f.parameter();
      break;
    case FiltrationKind::kTable: {
      out["kind"] = "table";
      Json levels = Json::array();
      for (const auto& l : f.table_levels()) levels.push_back(to_json(l)["gens"]);
      out["levels"] = levels;
      out["tail"] = to_json(f.ideal())["gens"];
      break;
    }
  }
  return out;
}

Filtration filtration_from_json(const Json& j) {
  if (!j.is_object()) schema("filtration must be an object");
  const Json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) schema("kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  auto dim_of = [&](std::size_t fallback) -> std::size_t {
    if (j.contains("dim")) {
      std::int64_t d = int_field(j, "dim");
      if (d < 1) schema("dim must be positive");
      return static_cast<std::size_t>(d);
    }
    if (fallback == 0) schema("missing field 'dim'");
    return fallback;
  };
  auto child = [&](const char* key) { return filtration_from_json(field(j, key)); };
  auto positive = [&](const char* key) {
    std::int64_t v = int_field(j, key);
    if (v < 1) schema(std::string("field '") + key + "' must be positive");
    return v;
  };

  if (kind == "adic") {
    const Json& gens = field(j, "gens");
    std::size_t fallback = gens.is_array() && !gens.empty() && gens[0].is_array() ? gens[0].size() : 0;
    return Filtration::adic(ideal_from_json(dim_of(fallback), gens));
  }
  if (kind == "trivial") return Filtration::trivial(dim_of(0));
  if (kind == "divtoric") {
    const Json& terms = field(j, "terms");
    if (!terms.is_array() || terms.empty()) schema("terms must be a nonempty array");
    std::vector<DivisorialTerm> out;
    for (const auto& t : terms) {
      const Json& w = field(t, "w");
      if (!w.is_array()) schema("w must be an array");
      std::vector<std::int64_t> weights;
      for (const auto& x : w) {
        if (!x.is_number_integer()) schema("weights must be integers");
        weights.push_back(x.get<std::int64_t>());
      }
      out.push_back(DivisorialTerm{WeightValuation(weights), scalar_from_json(field(t, "a"))});
    }
    const std::size_t dim = dim_of(out[0].valuation.dim());
    return Filtration::divisorial_toric(dim, std::move(out));
  }
  if (kind == "product") {
    const Json& fs = field(j, "factors");
    if (!fs.is_array() || fs.size() < 2) schema("product needs at least two factors");
    Filtration acc = filtration_from_json(fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Filtration::product(acc, filtration_from_json(fs[i]));
    return acc;
  }
  if (kind == "rescale") return Filtration::rescale(child("base"), positive("l"));
  if (kind == "truncate") return Filtration::truncate(child("base"), positive("a"));
  if (kind == "closure") return Filtration::closure(child("base"), j.contains("r_max") ? positive("r_max") : 4);
  if (kind == "table") {
    const Json& tail = field(j, "tail");
    std::size_t fallback = tail.is_array() && !tail.empty() && tail[0].is_array() ? tail[0].size() : 0;
    const std::size_t dim = dim_of(fallback);
    std::vector<MonomialIdeal> levels;
    for (const auto& l : field(j, "levels")) levels.push_back(ideal_from_json(dim, l));
    return Filtration::table(std::move(levels), ideal_from_json(dim, tail));
  }
  schema("unknown filtration kind '" + kind + "'");
}

// -----------------------------------------------------------------------------

Json to_json(const Polytope<Rational>& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(to_fraction_string(c));
    verts.push_back(row);
  }
  return Json{{"dim", p.dim()}, {"verts", verts}};
}

Json to_json(const Polytope<QuadExt>& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(coordinate(c));
    verts.push_back(row);
  }
  return Json{{"dim", p.dim()}, {"verts", verts}};
}

Polytope<Rational> polytope_from_json(const Json& j) {
  std::int64_t dim = int_field(j, "dim");
  if (dim < 1) schema("dim must be positive");
  const Json& verts = field(j, "verts");
  if (!verts.is_array() || verts.empty()) schema("verts must be a nonempty array");
  std::vector<Point<Rational>> pts;
  for (const auto& v : verts) {
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim)) schema("vertex of wrong length");
    Point<Rational> p;
    for (const auto& c : v) {
      Scalar s = scalar_from_json(c);
      if (!s.is_rational()) schema("polytope coordinates must be rational");
      p.push_back(s.rational());
    }
    pts.push_back(std::move(p));
  }
  return Polytope<Rational>::hull(static_cast<std::size_t>(dim), std::move(pts));
}

// -----------------------------------------------------------------------------

Json to_json(const IntersectionTensor& t) {
  Json entries = Json::object();
  for (const auto& [key, value] : t.entries()) {
    std::string name;
    for (auto k : key) name += (name.empty() ? "" : ",") + t.labels()[k];
    if (value.fits_slong_p()) {
      entries[name] = value.get_si();
    } else {
      entries[name] = value.get_str();
    }
  }
  return Json{{"d", t.d()}, {"labels", t.labels()}, {"entries", entries}};
}

IntersectionTensor tensor_from_json(const Json& j) {
  std::int64_t d = int_field(j, "d");
  if (d < 1) schema("d must be positive");
  const Json& labels_j = field(j, "labels");
  if (!labels_j.is_array()) schema("labels must be an array");
  std::vector<std::string> labels;
  for (const auto& l : labels_j) {
    if (!l.is_string()) schema("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  IntersectionTensor t(static_cast<std::size_t>(d), labels);
  const Json& entries = field(j, "entries");
  if (!entries.is_object()) schema("entries must be an object");
  for (const auto& [key, value] : entries.items()) {
    std::vector<std::size_t> idx;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) idx.push_back(t.label_index(part));
    if (idx.size() != static_cast<std::size_t>(d)) schema("entry key '" + key + "' has the wrong length");
    Rational r = rational_from_json(value);
    if (r.get_den() != 1) schema("intersection numbers must be integers");
    t.set(idx, r.get_num());
  }
  if (!t.complete()) schema("tensor is missing entries");
  return t;
}

Json to_json(const NefEnvelope& env) {
  Json cones = Json::array();
  for (const auto& c : env.cones) {
    Json ineqs = Json::array(), gamma = Json::array();
    for (const auto& row : c.inequalities) ineqs.push_back(scalars(row));
    for (const auto& row : c.gamma) gamma.push_back(scalars(row));
    cones.push_back(Json{{"name", c.name}, {"ineqs", ineqs}, {"gamma", gamma}});
  }
  return Json{{"rank", env.rank}, {"cones", cones}};
}

NefEnvelope envelope_from_json(const Json& j) {
  const Json& cones = field(j, "cones");
  if (!cones.is_array() || cones.empty()) schema("cones must be a nonempty array");
  NefEnvelope env;
  auto matrix = [&](const Json& m, std::size_t cols) {
    std::vector<std::vector<Scalar>> out;
    if (!m.is_array()) schema("expected a matrix");
    for (const auto& row : m) {
      if (!row.is_array() || row.size() != cols) schema("matrix row of wrong length");
      std::vector<Scalar> r;
      for (const auto& x : row) r.push_back(scalar_from_json(x));
      out.push_back(std::move(r));
    }
    return out;
  };
  const Json& g0 = field(cones[0], "gamma");
  if (!g0.is_array() || g0.empty()) schema("gamma must be a nonempty matrix");
  env.rank = j.contains("rank") ? static_cast<std::size_t>(int_field(j, "rank")) : g0.size();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    EnvelopeCone c;
    c.name = cones[i].contains("name") ? cones[i].at("name").get<std::string>() : "cone " + std::to_string(i + 1);
    c.inequalities = matrix(field(cones[i], "ineqs"), env.rank);
    c.gamma = matrix(field(cones[i], "gamma"), env.rank);
    if (c.gamma.size() != env.rank) schema("gamma must be square");
    env.cones.push_back(std::move(c));
  }
  return env;
}

DivisorCoeffs divisor_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema("divisor must be a nonempty array of scalars");
  DivisorCoeffs out;
  for (const auto& x : j) out.push_back(scalar_from_json(x));
  return out;
}

Json to_json(const HomogeneousForm& f, int digits) {
  Json terms = Json::array();
  for (auto it = f.coefficients.rbegin(); it != f.coefficients.rend(); ++it) {
    terms.push_back(Json{{"exponents", it->first}, {"coefficient", to_json(it->second)}});
  }
  return Json{{"degree", f.degree}, {"variables", f.variables}, {"terms", terms}, {"display", f.to_string(digits)}};
}

// -----------------------------------------------------------------------------

Json to_json(const LimitEstimate& e) {
  Json raw = Json::array(), ext = Json::array();
  for (const auto& r : e.raw) raw.push_back(to_json(Scalar(r)));
  for (const auto& r : e.extrapolated) ext.push_back(to_json(Scalar(r)));
  Json out{{"schedule", e.schedule},
           {"raw", raw},
           {"extrapolated", ext},
           {"estimate", estimate_float(e.estimate, e.lower, e.upper)},
           {"bracket", Json::array({to_json(Scalar(e.lower)), to_json(Scalar(e.upper))})},
           {"relative_width", e.relative_width()}};
  out["exact"] = e.exact ? to_json(*e.exact) : Json();
  if (e.exact) out["exact_in_bracket"] = e.bracket_contains(*e.exact);
  return out;
}

Json to_json(const MixedMultiplicities& e) {
  Json brackets = Json::array(), nodes = Json::array();
  for (std::size_t i = 0; i < e.e.size(); ++i) brackets.push_back(Json::array({e.lower[i], e.upper[i]}));
  for (const auto& n : e.nodes) {
    Json node{{"n", Json::array({n.n1, n.n2})}};
    node["exact"] = e.exact ? to_json(n.exact) : Json();
    if (n.limit) node["limit"] = to_json(*n.limit);
    nodes.push_back(node);
  }
  return Json{{"d", e.d},
              {"e", scalars(e.e)},
              {"brackets", brackets},
              {"exact", e.exact},
              {"product_multiplicity", to_json(e.product_multiplicity())},
              {"homogeneity_residual", e.homogeneity_residual},
              {"nodes", nodes}};
}

Json to_json(const MinkowskiReport& r) {
  Json fam = Json::object();
  for (int k = 1; k <= 4; ++k) fam[std::to_string(k)] = Json::array();
  for (const auto& c : r.checks) {
    Json row{{"statement", c.statement}, {"relation", std::string(to_string(c.relation))},
             {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}};
    if (c.family != 4) row["i"] = c.index;
    fam[std::to_string(c.family)].push_back(row);
  }
  Json out{{"inequalities", fam}, {"all_hold", r.all_hold}, {"equality", r.equality}};
  out["equality_form"] = r.equality_form ? to_json(*r.equality_form) : Json();
  out["discrepancy"] = r.discrepancy ? Json(*r.discrepancy) : Json();
  return out;
}

Json to_json(const GammaRatioReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"weights", row.weights},
                        {"gamma1", to_json(row.gamma1)},
                        {"gamma2", to_json(row.gamma2)},
                        {"consistent", row.consistent}});
  }
  return Json{{"xi", to_json(r.xi)}, {"rows", rows}, {"all_consistent", r.all_consistent}};
}

Json to_json(const MinkowskiEqualityResult& r) {
  Json mk = to_json(r.report);
  Json mm = to_json(r.e);
  Json evidence{{"product_multiplicity", mm["product_multiplicity"]},
                {"all_hold", mk["all_hold"]},
                {"equality_form", mk["equality_form"]},
                {"exact", r.e.exact},
                {"homogeneity_residual", r.e.homogeneity_residual},
                {"nodes", mm["nodes"]}};
  evidence["xi"] = r.xi ? to_json(*r.xi) : Json();
  evidence["bodies_homothetic"] = r.bodies_homothetic ? Json(*r.bodies_homothetic) : Json();
  evidence["gamma"] = r.gamma ? to_json(*r.gamma) : Json();
  evidence["discrepancy"] = r.discrepancy ? Json(*r.discrepancy) : Json();
  return Json{{"e", mm["e"]},
              {"brackets", mm["brackets"]},
              {"inequalities", mk["inequalities"]},
              {"verdict", std::string(to_string(r.verdict))},
              {"evidence", evidence}};
}

Json to_json(const TrskResult& r) {
  Json out{{"verdict", std::string(to_string(r.verdict))}};
  if (r.verdict != TrskVerdict::kStrict) {
    out["a"] = r.a.get_str();
    out["b"] = r.b.get_str();
    out["levels_checked"] = r.levels_checked;
  }
  out["xi"] = r.xi ? to_json(*r.xi) : Json();
  Json rejected = Json::array();
  for (const auto& [cand, lvl] : r.rejected) rejected.push_back(Json{{"candidate", cand}, {"level", lvl}});
  out["rejected"] = rejected;
  out["minkowski"] = to_json(r.minkowski);
  return out;
}

Json to_json(const ReesResult& r) {
  Json out{{"verdict", std::string(to_string(r.verdict))}, {"e_small", to_json(r.e_small)}, {"e_big", to_json(r.e_big)}};
  out["closure_mismatch"] = r.closure_mismatch ? Json(*r.closure_mismatch) : Json();
  out["note"] = r.note ? Json(*r.note) : Json();
  return out;
}

Json to_json(const RigidityResult& r) {
  Json out{{"verdict", std::string(to_string(r.verdict))}, {"e_f", to_json(r.e_f)}, {"e_d", to_json(r.e_d)}};
  out["mismatch_level"] = r.mismatch_level ? Json(*r.mismatch_level) : Json();
  return out;
}

Json to_json(const TruncatedBody& b) {
  Json out = to_json(b.body);
  out["c"] = to_json(b.c);
  out["m_max"] = b.m_max;
  out["exact"] = b.exact;
  out["volume"] = to_json(Scalar(b.body.volume()));
  return out;
}

Json to_json(const BrunnMinkowskiReport& r) {
  return Json{{"volume_mix", to_json(Scalar(r.volume_mix))},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"strict", r.strict}};
}

Json to_json(const EqualityClassification& c, const NefEnvelope& env) {
  Json cones1 = Json::array(), cones2 = Json::array();
  for (auto i : c.cones1) cones1.push_back(env.cones[i].name);
  for (auto i : c.cones2) cones2.push_back(env.cones[i].name);
  return Json{{"verdict", std::string(to_string(c.verdict))},
              {"gamma1", scalars(c.gamma1)},
              {"gamma2", scalars(c.gamma2)},
              {"cones1", cones1},
              {"cones2", cones2},
              {"commentary", c.commentary}};
}

Json to_json(const MixedPolynomial& p, int digits) {
  Json pieces = Json::array();
  for (const auto& piece : p.piecewise) {
    Json ineqs = Json::array();
    for (const auto& [a, b] : piece.inequalities) ineqs.push_back(Json::array({to_json(a), to_json(b)}));
    pieces.push_back(Json{{"cone", piece.name}, {"inequalities", ineqs}, {"f", to_json(piece.f, digits)}});
  }
  return Json{{"form", to_json(p.form, digits)}, {"straddles", p.straddles}, {"piecewise", pieces}};
}

// -----------------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> flatten(const Json& j, int digits) {
  std::vector<std::pair<std::string, std::string>> out;
  auto walk = [&](auto&& self, const Json& node, const std::string& key) -> void {
    if (is_scalar_object(node)) {
      out.emplace_back(key, to_display_string(scalar_from_json(node), digits));
    } else if (node.is_object()) {
      for (const auto& [k, v] : node.items()) self(self, v, key.empty() ? k : key + "." + k);
    } else if (node.is_array()) {
      if (node.empty()) out.emplace_back(key, "[]");
      for (std::size_t i = 0; i < node.size(); ++i) self(self, node[i], key + "[" + std::to_string(i) + "]");
    } else if (node.is_string()) {
      out.emplace_back(key, node.get<std::string>());
    } else if (node.is_number_float()) {
      out.emplace_back(key, render_double(node.get<double>(), digits));
    } else {
      out.emplace_back(key, node.dump());
    }
  };
  walk(walk, j, "");
  return out;
}

}  // namespace filtmult
