#include "cstar/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cstar::json {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

Index index_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 1) bad(std::string(what) + " must be positive");
  return static_cast<Index>(v);
}

}  // namespace

Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (j.is_null()) bad(std::string(what) + " is null");
  bad(std::string(what) + " must be a number");
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const MatElement& a) {
  Json rows = Json::array();
  for (Index r = 0; r < a.dim(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < a.dim(); ++c) row.push_back(to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"dim", a.dim()}, {"rows", std::move(rows)}};
}

MatElement matrix_from_json(const Json& j) {
  const Index dim = index_from_json(field(j, "dim"), "dim");
  const Json& rows = field(j, "rows");
  if (!rows.is_array() || static_cast<Index>(rows.size()) != dim) bad("rows must be an array of dim rows");
  ComplexMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dim) bad("each row must hold dim entries");
    for (Index c = 0; c < dim; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        bad("matrix entries must be [re, im] pairs of numbers");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return MatElement(std::move(m));
}

Json to_json(const FnDescriptor& f) {
  using K = FnDescriptor::Kind;
  switch (f.kind()) {
    case K::identity: return {{"kind", "identity"}};
    case K::abs: return {{"kind", "abs"}};
    case K::pos_part: return {{"kind", "pos_part"}};
    case K::neg_part: return {{"kind", "neg_part"}};
    case K::sqrt: return {{"kind", "sqrt"}};
    case K::power: return {{"kind", "power"}, {"r", f.exponent()}};
    case K::indicator: return {{"kind", "indicator"}, {"lo", real_to_json(f.lo())}, {"hi", real_to_json(f.hi())}};
    case K::piecewise_linear: {
      Json pts = Json::array();
      for (auto [t, y] : f.points()) pts.push_back({t, y});
      return {{"kind", "piecewise_linear"}, {"points", std::move(pts)}};
    }
  }
  return {};
}

FnDescriptor fn_from_json(const Json& j) {
  const Json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) bad("function kind must be a string");
  const auto& kind = kind_j.get_ref<const std::string&>();
  if (kind == "identity") return FnDescriptor::identity();
  if (kind == "abs") return FnDescriptor::abs();
  if (kind == "pos_part") return FnDescriptor::pos_part();
  if (kind == "neg_part") return FnDescriptor::neg_part();
  if (kind == "sqrt") return FnDescriptor::sqrt();
  if (kind == "power") return FnDescriptor::power(real_from_json(field(j, "r"), "r"));
  if (kind == "indicator") {
    const double inf = std::numeric_limits<double>::infinity();
    const double lo = j.contains("lo") && !j["lo"].is_null() ? real_from_json(j["lo"], "lo") : -inf;
    const double hi = j.contains("hi") && !j["hi"].is_null() ? real_from_json(j["hi"], "hi") : inf;
    return FnDescriptor::indicator(lo, hi);
  }
  if (kind == "piecewise_linear") {
    const Json& pts = field(j, "points");
    if (!pts.is_array()) bad("points must be an array");
    std::vector<std::pair<double, double>> points;
    for (const Json& p : pts) {
      if (!p.is_array() || p.size() != 2) bad("each point must be [t, y]");
      points.emplace_back(real_from_json(p[0], "t"), real_from_json(p[1], "y"));
    }
    return FnDescriptor::piecewise_linear(std::move(points));
  }
  bad("unknown function kind \"" + kind + "\"");
}

Json to_json(const Weight& w) {
  if (w.is_infinite()) return {{"kind", "infinite"}};
  return {{"kind", "density"}, {"h", to_json(w.density_matrix())}};
}

Weight weight_from_json(const Json& j) {
  const Json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) bad("weight kind must be a string");
  const auto& kind = kind_j.get_ref<const std::string&>();
  if (kind == "infinite") return Weight::infinite();
  if (kind == "density") return Weight::density(matrix_from_json(field(j, "h")));
  bad("unknown weight kind \"" + kind + "\"");
}

Json to_json(const MatrixSequence& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries()) entries.push_back(to_json(e));
  return {{"dim", s.dim()}, {"entries", std::move(entries)}, {"tail_fraction", s.tail_fraction()}};
}

MatrixSequence sequence_from_json(const Json& j, double default_tail) {
  const Index dim = index_from_json(field(j, "dim"), "dim");
  const Json& entries_j = field(j, "entries");
  if (!entries_j.is_array()) bad("entries must be an array");
  std::vector<MatElement> entries;
  entries.reserve(entries_j.size());
  for (const Json& e : entries_j) {
    entries.push_back(matrix_from_json(e));
    if (entries.back().dim() != dim) bad("sequence entry dimension differs from dim");
  }
  const double tail = j.contains("tail_fraction") ? real_from_json(j["tail_fraction"], "tail_fraction")
                                                  : default_tail;
  return MatrixSequence(std::move(entries), tail);
}

Json to_json(const Spectrum& s) {
  Json values = Json::array();
  for (const auto& z : s.eigenvalues) values.push_back(to_json(z));
  return {{"eigenvalues", std::move(values)}, {"is_real", s.is_real}, {"spectral_radius", s.spectral_radius()}};
}

Json to_json(const SpectralDecomposition& d) {
  Json clusters = Json::array();
  for (const auto& c : d.clusters) {
    clusters.push_back({{"lambda", c.lambda}, {"multiplicity", c.multiplicity}, {"projection", to_json(c.projection)}});
  }
  return {{"clusters", std::move(clusters)}, {"cluster_tol", d.cluster_tol}};
}

Json to_json(const PStarApprox& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms) terms.push_back({{"gamma", t.gamma}, {"q", to_json(t.q)}});
  return {{"n", p.n}, {"terms", std::move(terms)}, {"achieved_error", p.achieved_error}};
}

Json to_json(const RetractionResult& r) {
  return {{"output", to_json(r.output)}, {"distance", r.distance}, {"defect", r.input_defect}};
}

Json to_json(const EquivWitness& w) {
  return {{"u", to_json(w.u)}, {"left_defect", w.left_defect}, {"right_defect", w.right_defect}};
}

Json to_json(const WeightFlags& f) {
  return {{"faithful", f.faithful}, {"state", f.state}, {"trace", f.trace}};
}

Json to_json(const LeqNResult& r) {
  Json out{{"holds", r.holds}, {"witness", nullptr}};
  if (r.witness) out["witness"] = {{"a1", to_json(r.witness->first)}, {"b1", to_json(r.witness->second)}};
  return out;
}

Json to_json(const ApsCertificate& c) {
  Json tail = Json::array();
  for (const auto& t : c.nearest_projections) {
    Json item{{"index", t.index}, {"rank", t.rank}, {"retraction", nullptr}};
    if (t.retraction) item["retraction"] = to_json(*t.retraction);
    tail.push_back(std::move(item));
  }
  Json out{{"certified", c.certified},
           {"threshold", c.threshold},
           {"tail_begin", c.tail_begin},
           {"defects", c.defects},
           {"fitted_decay", nullptr},
           {"nearest_projections", std::move(tail)},
           {"diagnostics", c.diagnostics}};
  if (c.fitted_decay) out["fitted_decay"] = {{"scale", c.fitted_decay->scale}, {"exponent", c.fitted_decay->exponent}};
  return out;
}

Json to_json(const ApisCertificate& c) {
  return {{"certified", c.certified}, {"range_side", to_json(c.range_side)}, {"source_side", to_json(c.source_side)}};
}

Json to_json(const SimAWitness& w) {
  Json terms = Json::array();
  for (const auto& t : w.terms) {
    terms.push_back({{"index", t.index},
                     {"u", to_json(t.u)},
                     {"residual", t.residual},
                     {"distance_a", t.distance_a},
                     {"distance_b", t.distance_b}});
  }
  return {{"success", w.success}, {"max_residual", w.max_residual}, {"terms", std::move(terms)}};
}

Json to_json(const ThresholdIndexResult& r) {
  Json projections = Json::array();
  for (const auto& p : r.projections) projections.push_back(to_json(p));
  return {{"n", r.n}, {"projections", std::move(projections)}};
}

Json to_json(const InfinitenessReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))},
          {"hypothesis_holds", r.hypothesis_holds},
          {"identity_indices", r.identity_indices},
          {"equivalent_to_identity", r.equivalent_to_identity},
          {"first_mismatch", r.first_mismatch ? Json(*r.first_mismatch) : Json(nullptr)},
          {"tail_ranks", r.tail_ranks},
          {"full_rank", r.full_rank},
          {"retractions_are_identity", r.retractions_are_identity},
          {"summary", r.summary}};
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace cstar::json
