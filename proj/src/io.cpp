#include "ovoid/io.hpp"

#include <string>

#include "ovoid/errors.hpp"

namespace ovoid::io {

json encode(const Mat2& X) { return json::array({X[0].v, X[1].v, X[2].v, X[3].v}); }

json encode(const ProjectivePoint5& P) {
  json a = json::array();
  for (Elem c : P.x) a.push_back(c.v);
  return a;
}

json encode(const Point4& x) { return json::array({x[0].v, x[1].v, x[2].v, x[3].v}); }

json encode(const PluckerLine& L) {
  json a = json::array();
  for (Elem c : L.p) a.push_back(c.v);
  return a;
}

json ovoid_record(const Field& F, const AffineOvoid& O) {
  json pts = json::array();
  for (const Mat2& X : O.points) pts.push_back(encode(X));
  return json{{"v", kSchemaVersion}, {"type", "ovoid"},          {"q", F.q()},
              {"model", model_name(O.model)}, {"size", O.points.size()}, {"points", std::move(pts)}};
}

json verify_record(const Field& F, const AffineOvoid& O, const VerifyReport& r) {
  json j{{"v", kSchemaVersion},
         {"type", "verify"},
         {"q", F.q()},
         {"model", model_name(O.model)},
         {"size", r.size},
         {"points_valid", r.points_valid},
         {"partial_ovoid", r.is_partial_ovoid},
         {"affine_ovoid", r.is_affine_ovoid},
         {"violations", r.violations.size()}};
  if (O.model == Model::Matrix && r.points_valid) j["sharply_transitive"] = is_sharply_transitive(F, O.points);
  j["diagnostics"] = r.diagnostics;
  return j;
}

json violation_record(const AffineOvoid& O, std::size_t i, std::size_t j) {
  return json{{"v", kSchemaVersion}, {"type", "violation"}, {"i", i}, {"j", j},
              {"a", encode(O.points[i])},  {"b", encode(O.points[j])}};
}

json section_record(const Field& F, const TraceSection& s) {
  const int q = F.q(), d = F.discriminant(s.t);
  return json{{"v", kSchemaVersion},
              {"type", "section"},
              {"q", q},
              {"t", s.t.v},
              {"delta", d},
              {"kind", section_kind_name(s.kind)},
              {"size", s.points.size()},
              {"expected", q * (q + d)},
              {"at_infinity", section_at_infinity_size(F, s.t)}};
}

json spread_line_record(const Field& F, std::size_t index, const SpreadLine& L) {
  json pts = json::array();
  for (const auto& x : L.points) pts.push_back(encode(x));
  return json{{"v", kSchemaVersion},        {"type", "spread_line"},
              {"q", F.q()},                 {"index", index},
              {"plucker", encode(L.plucker)}, {"isotropic", is_isotropic(F, L.plucker)},
              {"points", std::move(pts)}};
}

json search_record(const SearchResult& r, bool with_timing) {
  json stats{{"nodes", r.stats.nodes},
             {"dead_ends", r.stats.dead_ends},
             {"tasks", r.stats.tasks},
             {"tasks_completed", r.stats.tasks_completed},
             {"tasks_resumed", r.stats.tasks_resumed}};
  if (with_timing) stats["wall_seconds"] = r.stats.wall_seconds;
  json j{{"v", kSchemaVersion},
         {"type", "search"},
         {"q", r.q},
         {"symmetry", symmetry_name(r.symmetry)},
         {"fixed_points", r.fixed_points},
         {"solutions", r.solutions.size()},
         {"classes", r.classes.size()},
         {"class_sizes", r.class_sizes},
         {"complete", r.complete}};
  if (!r.complete) j["incomplete_reason"] = r.incomplete_reason;
  j["stats"] = std::move(stats);
  return j;
}

json known_record(const KnownReport& r) {
  json checks = json::object();
  for (const auto& c : r.checks) checks[c.name] = c.ok;
  return json{{"v", kSchemaVersion},         {"type", "known"},       {"q", r.q},
              {"subgroup_size", r.subgroup_size}, {"root_system", r.root_system}, {"checks", std::move(checks)},
              {"ok", r.all_ok()}};
}

namespace {

Elem element(const json& v, int q, std::size_t line) {
  if (!v.is_number_integer()) throw InputError(line, "field elements must be integers");
  const auto c = v.get<long long>();
  if (c < 0 || c >= q) throw InputError(line, "element code " + std::to_string(c) + " out of range for q = " + std::to_string(q));
  return Elem{static_cast<std::uint16_t>(c)};
}

}  // namespace

std::vector<ParsedOvoid> read_ovoids(std::istream& in, std::optional<int> q) {
  std::vector<ParsedOvoid> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json r;
    try {
      r = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!r.is_object()) throw InputError(line, "record is not an object");
    if (!r.contains("points")) {
      if (r.contains("type") && r["type"] != "ovoid") continue;
      throw InputError(line, "ovoid record without \"points\"");
    }
    if (r.contains("v") && r["v"] != kSchemaVersion) throw InputError(line, "unsupported schema version");

    ParsedOvoid o;
    o.line = line;
    if (r.contains("q")) {
      if (!r["q"].is_number_integer()) throw InputError(line, "\"q\" must be an integer");
      o.q = r["q"].get<int>();
      if (q && *q != o.q) throw InputError(line, "record has q = " + std::to_string(o.q) + ", expected " + std::to_string(*q));
    } else if (q) {
      o.q = *q;
    } else {
      throw InputError(line, "q missing");
    }
    if (r.contains("model")) {
      const auto m = r["model"];
      if (m == "matrix")
        o.model = Model::Matrix;
      else if (m == "orthonormal")
        o.model = Model::Orthonormal;
      else
        throw InputError(line, "unknown model");
    }
    const auto& pts = r["points"];
    if (!pts.is_array()) throw InputError(line, "\"points\" must be an array");
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& p = pts[k];
      if (!p.is_array() || (p.size() != 4 && p.size() != 5))
        throw InputError(line, "point " + std::to_string(k) + " needs 4 or 5 coordinates");
      if (k == 0) o.projective = p.size() == 5;
      if ((p.size() == 5) != o.projective) throw InputError(line, "mixed affine and projective points");
      if (o.projective) {
        ProjectivePoint5 P;
        for (std::size_t c = 0; c < 5; ++c) P.x[c] = element(p[c], o.q, line);
        o.projective_points.push_back(P);
      } else {
        Mat2 X;
        for (std::size_t c = 0; c < 4; ++c) X[c] = element(p[c], o.q, line);
        o.points.push_back(X);
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace ovoid::io
