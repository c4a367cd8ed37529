#include "filtmult/commands.hpp"

#include <algorithm>
#include <sstream>

#include "filtmult/divisorial.hpp"

namespace filtmult {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::kSchema, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("input is missing '") + key + "'");
  return j.at(key);
}

Filtration single_filtration(const Json& input) {
  if (input.is_object() && input.contains("filtration")) return filtration_from_json(input.at("filtration"));
  return filtration_from_json(input);
}

std::pair<Filtration, Filtration> filtration_pair(const Json& input) {
  Filtration f1 = filtration_from_json(member(input, "f1"));
  Filtration f2 = filtration_from_json(member(input, "f2"));
  if (f1.dim() != f2.dim()) throw Error(ErrorKind::kDimensionMismatch, "f1 and f2 live in different dimensions");
  return {f1, f2};
}

Json scalars_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

void merge(Json& out, const Json& extra) {
  for (const auto& [k, v] : extra.items()) out[k] = v;
}

bool is_divisorial(const Json& input) { return input.is_object() && input.contains("model"); }

struct DivisorialInput {
  IntersectionTensor tensor;
  NefEnvelope envelope;
};

DivisorialInput divisorial_model(const Json& input) {
  const Json& model = member(input, "model");
  if (!model.is_string()) schema("'model' must be a string");
  if (model == "builtin") {
    auto ex = builtin_example();
    return {ex.tensor, ex.envelope};
  }
  if (model != "divisorial") schema("unknown model '" + model.get<std::string>() + "'");
  DivisorialInput out{tensor_from_json(member(input, "tensor")), envelope_from_json(member(input, "envelope"))};
  if (out.envelope.rank != out.tensor.rank()) {
    throw Error(ErrorKind::kDimensionMismatch, "envelope rank differs from the number of divisor labels");
  }
  return out;
}

DivisorCoeffs unit_divisor(std::size_t rank, std::size_t i) {
  DivisorCoeffs d(rank, Scalar(0));
  d[i] = Scalar(1);
  return d;
}

// D1, D2 default to the first two basis divisors.
std::pair<DivisorCoeffs, DivisorCoeffs> divisor_pair(const Json& input, const DivisorialInput& m) {
  const std::size_t rank = m.tensor.rank();
  DivisorCoeffs d1 = input.contains("d1") ? divisor_from_json(input.at("d1")) : unit_divisor(rank, 0);
  DivisorCoeffs d2 = input.contains("d2") ? divisor_from_json(input.at("d2"))
                                          : unit_divisor(rank, std::min<std::size_t>(1, rank - 1));
  validate_divisor(d1, rank);
  validate_divisor(d2, rank);
  return {d1, d2};
}

std::vector<std::int64_t> schedule_for(const RunConfig& c, std::size_t dim) {
  return c.schedule ? *c.schedule : default_schedule(dim);
}

Json cone_names(const NefEnvelope& env, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(env.cones[i].name);
  return out;
}

// a·n1 + b·n2 as a degree-one form.
std::string linear_string(const std::vector<Scalar>& coeffs, int digits) {
  HomogeneousForm f;
  f.degree = 1;
  f.variables = coeffs.size();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    std::vector<int> e(coeffs.size(), 0);
    e[k] = 1;
    f.coefficients[e] = coeffs[k];
  }
  return f.to_string(digits);
}

// -----------------------------------------------------------------------------

Json cmd_mult(const RunConfig& c, const Json& input) {
  Filtration f = single_filtration(input);
  Json out{{"filtration", describe(f)}, {"dim", f.dim()}};
  if (f.is_trivial()) {
    out["limit"] = Json();
    out["volume"] = to_json(Scalar(0));
    out["agree"] = true;
    return out;
  }
  LimitEstimate est = multiplicity_limit(f, schedule_for(c, f.dim()));
  out["limit"] = to_json(est);
  out["volume"] = est.exact ? to_json(*est.exact) : Json();
  if (est.exact) {
    double ex = est.exact->to_double();
    double rel = ex == 0.0 ? std::abs(est.estimate.get_d()) : std::abs(est.estimate.get_d() - ex) / ex;
    out["relative_error"] = rel;
    out["agree"] = est.bracket_contains(*est.exact) || rel < 0.02;
  } else {
    out["relative_error"] = Json();
    out["agree"] = Json();
  }
  return out;
}

Json cmd_mixed(const RunConfig& c, const Json& input) {
  if (is_divisorial(input)) {
    auto m = divisorial_model(input);
    auto [d1, d2] = divisor_pair(input, m);
    auto mp = mixed_polynomial(m.tensor, m.envelope, d1, d2);
    auto mm = divisorial_mixed_multiplicities(m.tensor, m.envelope, d1, d2);
    Json out{{"model", "divisorial"}, {"d1", scalars_json(d1)}, {"d2", scalars_json(d2)}};
    Json e = Json::array();
    for (const auto& x : mm.e) e.push_back(to_json(x));
    out["e"] = e;
    out["polynomial"] = to_json(mp, c.digits);
    return out;
  }
  auto [f1, f2] = filtration_pair(input);
  auto mm = mixed_multiplicities(f1, f2, schedule_for(c, f1.dim()));
  Json out{{"model", "filtration"}, {"f1", describe(f1)}, {"f2", describe(f2)}};
  out["mixed"] = to_json(mm);
  out["polynomial"] = to_json(mm.polynomial(), c.digits);
  return out;
}

Json cmd_minkowski(const RunConfig& c, const Json& input) {
  if (is_divisorial(input)) {
    auto m = divisorial_model(input);
    auto [d1, d2] = divisor_pair(input, m);
    auto mm = divisorial_mixed_multiplicities(m.tensor, m.envelope, d1, d2);
    auto cls = equality_classifier(m.envelope, m.tensor, d1, d2);
    Json out{{"model", "divisorial"}, {"d1", scalars_json(d1)}, {"d2", scalars_json(d2)}};
    Json e = Json::array();
    for (const auto& x : mm.e) e.push_back(to_json(x));
    out["e"] = e;
    out["inequalities"] = to_json(minkowski_report(mm))["inequalities"];
    out["verdict"] = std::string(to_string(cls.verdict));
    out["classification"] = to_json(cls, m.envelope);
    return out;
  }
  auto [f1, f2] = filtration_pair(input);
  auto r = minkowski_equality_test(f1, f2, schedule_for(c, f1.dim()), c.m_max);
  Json out{{"model", "filtration"}, {"f1", describe(f1)}, {"f2", describe(f2)}};
  merge(out, to_json(r));
  return out;
}

Json cmd_trsk(const RunConfig& c, const Json& input) {
  if (is_divisorial(input)) {
    auto m = divisorial_model(input);
    auto [d1, d2] = divisor_pair(input, m);
    auto r = find_rescaling(m.envelope, m.tensor, d1, d2, c.q_cap);
    return Json{{"model", "divisorial"},
                {"d1", scalars_json(d1)},
                {"d2", scalars_json(d2)},
                {"verdict", "RESCALING"},
                {"a", r.a.get_str()},
                {"b", r.b.get_str()},
                {"xi", to_json(r.xi)}};
  }
  auto [f1, f2] = filtration_pair(input);
  auto r = trsk_check(f1, f2, schedule_for(c, f1.dim()), c.n_max, c.q_cap, c.r_max);
  Json out{{"model", "filtration"}, {"f1", describe(f1)}, {"f2", describe(f2)}};
  merge(out, to_json(r));
  return out;
}

Json cmd_gamma(const RunConfig& c, const Json& input) {
  if (is_divisorial(input)) {
    auto m = divisorial_model(input);
    std::vector<DivisorCoeffs> divisors;
    if (input.contains("divisors")) {
      if (!input.at("divisors").is_array()) schema("'divisors' must be an array");
      for (const auto& d : input.at("divisors")) divisors.push_back(divisor_from_json(d));
    } else {
      auto [d1, d2] = divisor_pair(input, m);
      divisors = {d1, d2};
    }
    Json rows = Json::array();
    for (const auto& d : divisors) {
      validate_divisor(d, m.tensor.rank());
      auto g = gamma_eval(m.envelope, d);
      Json gj = Json::object();
      for (std::size_t i = 0; i < g.size(); ++i) gj[m.tensor.labels()[i]] = to_json(g[i]);
      rows.push_back(Json{{"divisor", scalars_json(d)}, {"cones", cone_names(m.envelope, m.envelope.containing(d))},
                          {"gamma", gj}});
    }
    return Json{{"model", "divisorial"}, {"rows", rows}};
  }
  Filtration f = single_filtration(input);
  std::vector<WeightValuation> vals;
  if (input.is_object() && input.contains("valuations")) {
    const Json& vj = input.at("valuations");
    if (!vj.is_array() || vj.empty()) schema("'valuations' must be a non-empty array of weight vectors");
    for (const auto& w : vj) {
      if (!w.is_array()) schema("each valuation is an array of weights");
      std::vector<std::int64_t> ws;
      for (const auto& x : w) {
        if (!x.is_number_integer()) schema("valuation weights must be integers");
        ws.push_back(x.get<std::int64_t>());
      }
      if (ws.size() != f.dim()) throw Error(ErrorKind::kDimensionMismatch, "valuation has the wrong dimension");
      vals.emplace_back(std::move(ws));
    }
  } else {
    vals = default_valuations(f.dim());
  }
  Json rows = Json::array();
  for (const auto& mu : vals) {
    auto g = gamma(f, mu, c.m_max);
    Json row{{"weights", mu.weights()},
             {"upper", to_json(Scalar(g.upper))},
             {"argmin_m", g.argmin_m},
             {"spread", to_json(Scalar(g.spread))}};
    row["exact"] = g.exact ? to_json(*g.exact) : Json();
    row["value"] = to_json(g.value());
    rows.push_back(row);
  }
  return Json{{"model", "filtration"}, {"filtration", describe(f)}, {"m_max", c.m_max}, {"rows", rows}};
}

Json cmd_body(const RunConfig& c, const Json& input) {
  Filtration f = single_filtration(input);
  Scalar cut;
  if (input.is_object() && input.contains("c")) {
    cut = scalar_from_json(input.at("c"));
  } else {
    // One above the largest vertex degree so the truncation is not empty.
    QuadExt top = exact_body(f).max_vertex_degree();
    cut = Scalar(Rational(Scalar(top).ceil() + 1));
  }
  auto tb = delta_body(f, cut, c.m_max);
  Json out{{"filtration", describe(f)}, {"dim", f.dim()}, {"body", to_json(tb)}};
  out["multiplicity"] = to_json(multiplicity_via_volume(f, cut, c.m_max));
  return out;
}

Json cmd_closure(const RunConfig& c, const Json& input) {
  Filtration f = single_filtration(input);
  Filtration cl = Filtration::closure(f, c.r_max);
  Json levels = Json::array();
  bool all_closed = true;
  for (std::int64_t n = 1; n <= c.n_max; ++n) {
    MonomialIdeal a = f.level(n), b = cl.level(n);
    bool closed = a == b;
    all_closed = all_closed && closed;
    levels.push_back(Json{{"n", n},
                          {"ideal", to_json(a)},
                          {"colength", colength(a)},
                          {"closure", to_json(b)},
                          {"closure_colength", colength(b)},
                          {"closed", closed}});
  }
  return Json{{"filtration", describe(f)},
              {"r_max", c.r_max},
              {"n_max", c.n_max},
              {"all_closed", all_closed},
              {"levels", levels}};
}

Json cmd_bm(const RunConfig&, const Json& input) {
  auto k = polytope_from_json(member(input, "K"));
  auto l = polytope_from_json(member(input, "L"));
  if (k.dim() != l.dim()) throw Error(ErrorKind::kDimensionMismatch, "K and L have different dimensions");
  Rational t(1, 2);
  if (input.contains("t")) {
    Scalar ts = scalar_from_json(input.at("t"));
    if (!ts.is_rational()) schema("'t' must be rational");
    t = ts.rational();
  }
  if (t < 0 || t > 1) throw Error(ErrorKind::kNonPositiveInput, "t must lie in [0, 1]");
  auto r = brunn_minkowski_check(k, l, t);
  Json out{{"dim", k.dim()},
           {"t", to_json(Scalar(t))},
           {"vol_K", to_json(Scalar(k.volume()))},
           {"vol_L", to_json(Scalar(l.volume()))}};
  merge(out, to_json(r));
  auto h = homothety_detect(k, l);
  if (h) {
    Json shift = Json::array();
    for (const auto& s : h->shift) shift.push_back(to_json(s));
    out["homothety"] = Json{{"factor", to_json(h->factor)}, {"shift", shift}};
  } else {
    out["homothety"] = Json();
  }
  return out;
}

// -----------------------------------------------------------------------------

struct Representative {
  std::size_t cone;
  DivisorCoeffs first;
  DivisorCoeffs second;
};

DivisorCoeffs dv(long a, long b) { return {Scalar(a), Scalar(b)}; }

Json cmd_example_c7(const RunConfig& c, const Json&) {
  const auto ex = builtin_example();
  const auto& t = ex.tensor;
  const auto& env = ex.envelope;
  const int digits = c.digits;
  Json out{{"model", Json{{"tensor", to_json(t)}, {"envelope", to_json(env)}}}};

  // f(n1, n2) = -<(-(n1 E1 + n2 E2))^3>, one polynomial per region.
  auto mp = mixed_polynomial(t, env, dv(1, 0), dv(0, 1));
  Json pieces = Json::array();
  for (const auto& p : mp.piecewise) {
    Json ineqs = Json::array();
    for (const auto& [a, b] : p.inequalities) ineqs.push_back(linear_string({a, b}, digits) + " >= 0");
    pieces.push_back(Json{{"cone", p.name}, {"inequalities", ineqs}, {"f", to_json(p.f, digits)}});
  }
  out["piecewise"] = pieces;

  Json gamma_rows = Json::array();
  const std::vector<DivisorCoeffs> samples{dv(2, 1), dv(1, 1), dv(2, 3), dv(1, 2), dv(1, 3), dv(2, 7)};
  for (std::size_t i = 0; i < env.cones.size(); ++i) {
    const auto& cone = env.cones[i];
    Json maps = Json::array(), pts = Json::array();
    for (std::size_t j = 0; j < cone.gamma.size(); ++j) {
      maps.push_back("gamma_" + t.labels()[j] + " = " + linear_string(cone.gamma[j], digits));
    }
    for (const auto& d : samples) {
      if (!cone.contains(d)) continue;
      pts.push_back(Json{{"n", scalars_json(d)}, {"gamma", scalars_json(cone.apply(d))}});
    }
    gamma_rows.push_back(Json{{"cone", cone.name}, {"maps", maps}, {"samples", pts}});
  }
  out["gamma_table"] = gamma_rows;

  auto mm = divisorial_mixed_multiplicities(t, env, dv(1, 0), dv(0, 1));
  Json e = Json::array();
  for (const auto& x : mm.e) e.push_back(to_json(x));
  out["mixed_polynomial"] = Json{{"d1", t.labels()[0]},
                                 {"d2", t.labels()[1]},
                                 {"straddles", mp.straddles},
                                 {"form", to_json(mp.form, digits)},
                                 {"e", e}};

  Json names = Json::array(), matrix = Json::array();
  for (const auto& cone : env.cones) names.push_back(cone.name);
  for (std::size_t i = 0; i < env.cones.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < env.cones.size(); ++j) row.push_back(cone_pair_relation(env, i, j));
    matrix.push_back(row);
  }
  const std::vector<Representative> reps{
      {0, dv(2, 1), dv(3, 1)}, {1, dv(2, 3), dv(3, 4)}, {2, dv(1, 3), dv(1, 4)}};
  Json pairs = Json::array();
  for (const auto& r1 : reps) {
    for (const auto& r2 : reps) {
      auto cls = equality_classifier(env, t, r1.first, r2.second);
      pairs.push_back(Json{{"d1", scalars_json(r1.first)},
                           {"d2", scalars_json(r2.second)},
                           {"cones", Json::array({env.cones[r1.cone].name, env.cones[r2.cone].name})},
                           {"relation", cone_pair_relation(env, r1.cone, r2.cone)},
                           {"verdict", std::string(to_string(cls.verdict))}});
    }
  }
  out["classification"] = Json{{"cones", names}, {"matrix", matrix}, {"pairs", pairs}};
  return out;
}

// -----------------------------------------------------------------------------

std::string display(const Json& j, int digits) {
  if (j.is_string()) return j.get<std::string>();
  return to_display_string(scalar_from_json(j), digits);
}

std::string display_list(const Json& arr, int digits) {
  std::string out = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) out += (i ? ", " : "") + display(arr[i], digits);
  return out + ")";
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string render_c7_table(const Json& r, int digits) {
  std::ostringstream out;
  const Json& tensor = r["model"]["tensor"];
  out << "Intersection numbers (d = " << tensor["d"].get<int>() << ")\n";
  for (const auto& [key, v] : tensor["entries"].items()) out << "  " << key << " : " << v.dump() << "\n";

  out << "\nPiecewise polynomial f(n1, n2) = -<(-(n1*E1 + n2*E2))^3>\n";
  for (const auto& p : r["piecewise"]) {
    std::string cond;
    for (const auto& q : p["inequalities"]) cond += (cond.empty() ? "" : ", ") + q.get<std::string>();
    out << "  " << p["cone"].get<std::string>() << " [" << cond << "]\n";
    out << "    f = " << p["f"]["display"].get<std::string>() << "\n";
  }

  out << "\nGamma table\n";
  for (const auto& g : r["gamma_table"]) {
    out << "  " << g["cone"].get<std::string>() << "\n";
    for (const auto& m : g["maps"]) out << "    " << m.get<std::string>() << "\n";
    for (const auto& s : g["samples"]) {
      out << "    at n = " << display_list(s["n"], digits) << " : " << display_list(s["gamma"], digits) << "\n";
    }
  }

  const Json& mpj = r["mixed_polynomial"];
  out << "\nMixed polynomial for D1 = " << mpj["d1"].get<std::string>() << ", D2 = " << mpj["d2"].get<std::string>()
      << (mpj["straddles"].get<bool>() ? " (pair straddles regions)" : "") << "\n";
  out << "  P(n1, n2) = " << mpj["form"]["display"].get<std::string>() << "\n";
  for (std::size_t i = 0; i < mpj["e"].size(); ++i) {
    out << "  e_" << i << " = " << display(mpj["e"][i], digits) << "\n";
  }

  const Json& cls = r["classification"];
  out << "\nMinkowski equality by region pair\n";
  std::size_t w = 18;
  for (const auto& row : cls["matrix"]) {
    for (const auto& cell : row) w = std::max(w, cell.get<std::string>().size() + 2);
  }
  std::string header = "  " + pad("", w);
  for (const auto& n : cls["cones"]) header += pad(n.get<std::string>(), w);
  while (header.back() == ' ') header.pop_back();
  out << header << "\n";
  for (std::size_t i = 0; i < cls["matrix"].size(); ++i) {
    std::string line = "  " + pad(cls["cones"][i].get<std::string>(), w);
    for (const auto& cell : cls["matrix"][i]) line += pad(cell.get<std::string>(), w);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  out << "\nRepresentative pairs\n";
  for (const auto& p : cls["pairs"]) {
    out << "  D1 = " << display_list(p["d1"], digits) << ", D2 = " << display_list(p["d2"], digits) << " ["
        << p["cones"][0].get<std::string>() << " / " << p["cones"][1].get<std::string>() << "] "
        << p["verdict"].get<std::string>() << "\n";
  }
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

// -----------------------------------------------------------------------------

void RunConfig::validate() const {
  if (m_max < 1 || n_max < 1 || r_max < 1 || q_cap < 1) schema("caps must be positive");
  if (digits < 1 || digits > 40) schema("--digits must be in 1..40");
  if (schedule) {
    if (schedule->empty()) schema("empty schedule");
    for (std::size_t i = 0; i < schedule->size(); ++i) {
      if ((*schedule)[i] < 1) schema("schedule entries must be positive");
      if (i && (*schedule)[i] <= (*schedule)[i - 1]) schema("schedule must be strictly increasing");
    }
  }
}

std::vector<std::int64_t> parse_schedule(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) schema("bad schedule entry '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      schema("bad schedule entry '" + item + "'");
    }
  }
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "table") return OutputFormat::kTable;
  if (text == "csv") return OutputFormat::kCsv;
  schema("unknown format '" + text + "'");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"mult",    "mixed",   "minkowski", "trsk",      "gamma",
                                              "body",    "closure", "bm",        "example-c7"};
  return names;
}

Json run_command(const RunConfig& config, const Json& input) {
  config.validate();
  const std::string& cmd = config.command;
  if (cmd == "mult") return cmd_mult(config, input);
  if (cmd == "mixed") return cmd_mixed(config, input);
  if (cmd == "minkowski") return cmd_minkowski(config, input);
  if (cmd == "trsk") return cmd_trsk(config, input);
  if (cmd == "gamma") return cmd_gamma(config, input);
  if (cmd == "body") return cmd_body(config, input);
  if (cmd == "closure") return cmd_closure(config, input);
  if (cmd == "bm") return cmd_bm(config, input);
  if (cmd == "example-c7") return cmd_example_c7(config, input);
  schema("unknown command '" + cmd + "'");
}

std::string render(const std::string& command, const Json& report, OutputFormat format, int digits) {
  if (format == OutputFormat::kJson) return report.dump(2) + "\n";
  if (format == OutputFormat::kTable && command == "example-c7") return render_c7_table(report, digits);
  auto rows = flatten(report, digits);
  std::ostringstream out;
  if (format == OutputFormat::kCsv) {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << "," << csv_field(v) << "\n";
    return out.str();
  }
  std::size_t w = 0;
  for (const auto& row : rows) w = std::max(w, row.first.size());
  for (const auto& [k, v] : rows) out << pad(k, w) << "  " << v << "\n";
  return out.str();
}

}  // namespace filtmult
