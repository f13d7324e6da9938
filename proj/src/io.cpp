#include "chiy/io.hpp"

#include <sstream>

#include "chiy/error.hpp"

namespace chiy {

using nlohmann::json;

json datum_to_json(const FixedPointDatum& d) {
  json points = json::array();
  for (const auto& p : d.points()) points.push_back(json{{"weights", p.weights()}});
  return json{{"dim", d.dim()}, {"fixed_points", std::move(points)}};
}

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& message) {
  throw Error(ErrorKind::Parse, field + ": " + message);
}

}  // namespace

FixedPointDatum datum_from_json(const json& j) {
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  if (!j.contains("dim")) parse_fail("dim", "missing");
  const json& dim = j.at("dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 0 || dim.get<long long>() % 2 != 0) {
    parse_fail("dim", "expected an even non-negative integer");
  }
  const auto half_dim = static_cast<std::size_t>(dim.get<long long>() / 2);
  if (!j.contains("fixed_points")) parse_fail("fixed_points", "missing");
  const json& points = j.at("fixed_points");
  if (!points.is_array()) parse_fail("fixed_points", "expected an array");

  std::vector<FixedPoint> out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::string field = "fixed_points[" + std::to_string(k) + "].weights";
    const json& p = points[k];
    if (!p.is_object() || !p.contains("weights") || !p.at("weights").is_array()) {
      parse_fail(field, "expected an array of integers");
    }
    std::vector<Weight> weights;
    for (const json& w : p.at("weights")) {
      if (!w.is_number_integer()) parse_fail(field, "expected an array of integers");
      const auto v = w.get<long long>();
      if (v == 0) throw Error(ErrorKind::ZeroWeight, field + ": weight 0 is not allowed");
      if (v < -1'000'000'000LL || v > 1'000'000'000LL) parse_fail(field, "weight out of range");
      weights.push_back(static_cast<Weight>(v));
    }
    if (weights.size() != half_dim) {
      throw Error(ErrorKind::WrongArity, field + ": expected " + std::to_string(half_dim) + " weights for dim " +
                                             std::to_string(2 * half_dim) + ", got " +
                                             std::to_string(weights.size()));
    }
    out.emplace_back(std::move(weights));
  }
  return FixedPointDatum(half_dim, std::move(out));
}

FixedPointDatum parse_datum(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  return datum_from_json(j);
}

namespace {

json query_to_json(const EnumerationQuery& q) {
  json filters = json::array();
  for (Filter f : q.filters) filters.push_back(to_string(f));
  return json{{"n", q.half_dim},
              {"dim", 2 * q.half_dim},
              {"points", q.point_count},
              {"max_weight", q.max_weight},
              {"effective_only", q.effective_only},
              {"dedup_sign_flip", q.dedup_sign_flip},
              {"filters", std::move(filters)},
              {"candidate_ceiling", q.candidate_ceiling}};
}

json finding_to_json(const Finding& f) {
  json j = datum_to_json(f.datum);
  j["kind"] = f.kind;
  j["detail"] = f.detail;
  return j;
}

json diagnostics_to_json(const DatumDiagnostics& d) {
  return json{{"chi", d.chi},
              {"n_vector", d.counts},
              {"weight_types", d.types},
              {"gcd", d.gcd},
              {"theorem_scope", d.scope},
              {"checks",
               {{"rigidity", d.rigidity},
                {"weight_pairing", d.weight_pairing},
                {"smallest_weight_pairing", d.smallest_weight_pairing},
                {"kosniowski", d.kosniowski},
                {"crowded", d.crowded},
                {"middle_range", d.middle_range}}}};
}

template <typename Range>
std::string join(const Range& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : r) {
    if (!first) os << ';';
    os << x;
    first = false;
  }
  return os.str();
}

}  // namespace

json report_to_json(const EnumerationReport& r) {
  json admissible = json::array();
  for (const auto& a : r.admissible) {
    json j = datum_to_json(a.datum);
    j.update(diagnostics_to_json(a.diagnostics));
    admissible.push_back(std::move(j));
  }
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back(finding_to_json(f));
  const auto& c = r.counters;
  return json{{"query", query_to_json(r.query)},
              {"weight_bound_note", "results cover weights with |w| <= " + std::to_string(r.query.max_weight) +
                                        " only; emptiness means empty up to this bound"},
              {"count", r.admissible.size()},
              {"admissible", std::move(admissible)},
              {"counters",
               {{"nodes", c.nodes},
                {"candidates", c.candidates},
                {"pruned_pairing", c.pruned_pairing},
                {"pruned_symmetry", c.pruned_symmetry},
                {"rejected_effective", c.rejected_effective},
                {"rejected_pairing", c.rejected_pairing},
                {"rejected_symmetry", c.rejected_symmetry},
                {"rejected_smallest_pairing", c.rejected_smallest_pairing},
                {"rejected_rigidity_mod_p", c.rejected_rigidity_mod_p},
                {"rejected_rigidity", c.rejected_rigidity},
                {"rejected_sign_flip", c.rejected_sign_flip}}},
              {"findings", std::move(findings)}};
}

json open_questions_to_json(const OpenQuestionReport& r) {
  json violators = json::array();
  for (const auto& v : r.violators) violators.push_back(finding_to_json(v));
  return json{{"examined", r.examined}, {"violators", std::move(violators)}};
}

json classification_to_json(const ClassificationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json admissible = json::array();
    for (const auto& d : row.admissible) admissible.push_back(datum_to_json(d));
    json unmatched = json::array();
    for (const auto& d : row.unmatched) unmatched.push_back(datum_to_json(d));
    rows.push_back(json{{"n", row.half_dim},
                        {"dim", 2 * row.half_dim},
                        {"dimension_allowed", row.dimension_allowed},
                        {"admissible", std::move(admissible)},
                        {"unmatched", std::move(unmatched)},
                        {"consistent", row.consistent()}});
  }
  return json{{"points", r.point_count},
              {"max_weight", r.max_weight},
              {"weight_bound_note", "emptiness is established only for weights with |w| <= " +
                                        std::to_string(r.max_weight)},
              {"rows", std::move(rows)},
              {"consistent", r.consistent()}};
}

json bound_table_to_json(const std::vector<BoundRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back(json{{"dim", row.dim},
                       {"bound", row.bound},
                       {"known_minimum", row.known_minimum},
                       {"realizations", row.realizations}});
  }
  return out;
}

std::string report_to_csv(const EnumerationReport& r) {
  std::ostringstream os;
  os << "dim,k,weight_types,n_vector,chi,rigidity,weight_pairing,smallest_weight_pairing,kosniowski,crowded,"
        "middle_range\n";
  for (const auto& a : r.admissible) {
    const auto& d = a.diagnostics;
    os << a.datum.dim() << ',' << a.datum.point_count() << ',' << join(d.types) << ',' << join(d.counts) << ','
       << join(d.chi) << ',' << d.rigidity << ',' << d.weight_pairing << ',' << d.smallest_weight_pairing << ','
       << d.kosniowski << ',' << d.crowded << ',' << d.middle_range << '\n';
  }
  return os.str();
}

}  // namespace chiy
