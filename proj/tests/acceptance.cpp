// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails. All checks are exact; the only tolerances are the wall
// time budgets printed with each line.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ovoid/cli.hpp"
#include "ovoid/constructions.hpp"
#include "ovoid/io.hpp"
#include "ovoid/ovoid.hpp"
#include "ovoid/quadric.hpp"
#include "ovoid/search.hpp"
#include "ovoid/spread.hpp"

using namespace ovoid;
using json = io::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  json artifact = json::object();

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome(int jobs)> run;
};

json encode_points(const std::vector<Mat2>& pts) {
  json a = json::array();
  for (const auto& X : pts) a.push_back(io::encode(X));
  return a;
}

// Affine points of the model other than those in O, and for each the number
// of points of O collinear with it; returns the set of counts seen.
std::set<std::size_t> outside_counts(const Field& F, Model model, const std::vector<Mat2>& O) {
  const std::set<Mat2> in(O.begin(), O.end());
  std::set<std::size_t> seen;
  const auto E = F.elements();
  for (Elem a : E)
    for (Elem b : E)
      for (Elem c : E)
        for (Elem d : E) {
          const Mat2 P{{a, b, c, d}};
          if (in.count(P)) continue;
          std::size_t n = 0;
          if (model == Model::Matrix) {
            if (mat::det(F, P) != F.one()) continue;
            for (const Mat2& X : O) n += mat::det(F, mat::sub(F, X, P)).is_zero();
          } else {
            Elem norm = F.zero();
            for (std::size_t i = 0; i < 4; ++i) norm = F.add(norm, F.mul(P[i], P[i]));
            if (norm != F.one()) continue;
            for (const Mat2& X : O) {
              Elem s = F.zero();
              for (std::size_t i = 0; i < 4; ++i) s = F.add(s, F.mul(P[i], X[i]));
              n += s == F.one();
            }
          }
          seen.insert(n);
        }
  return seen;
}

bool antipodal_orthonormal(const Field& F, const std::vector<Mat2>& O) {
  const std::set<Mat2> in(O.begin(), O.end());
  for (const Mat2& X : O)
    if (!in.count(mat::neg(F, X))) return false;
  return true;
}

Outcome subgroup_table(int) {
  Outcome o;
  for (int q : {3, 5, 7, 11, 9, 13}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Sl2Geometry G(Field::make(q));
    const auto subs = find_subgroups_of_order(G, static_cast<std::size_t>(q * q - 1));
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool exists = q == 3 || q == 5 || q == 7 || q == 11;
    o.require(exists ? !subs.empty() : subs.empty(), "q=" + std::to_string(q) + ": " + std::to_string(subs.size()) + " classes");
    o.require(dt < (q == 13 ? 600.0 : 60.0), "q=" + std::to_string(q) + " too slow");
    json classes = json::array();
    for (const auto& H : subs) classes.push_back(encode_points(H));
    o.artifact[std::to_string(q)] = classes;
  }
  return o;
}

Outcome sharply_transitive(int) {
  Outcome o;
  const std::pair<int, std::size_t> sizes[] = {{3, 8}, {5, 24}, {7, 48}, {11, 120}};
  for (auto [q, n] : sizes) {
    const Sl2Geometry G(Field::make(q));
    const auto O = subgroup_ovoid(G);
    const auto r = verify(G.field(), O);
    const std::string tag = "q=" + std::to_string(q);
    o.require(O.points.size() == n, tag + " size");
    o.require(r.is_affine_ovoid, tag + " verify");
    o.require(is_sharply_transitive(G.field(), O.points), tag + " not sharply transitive");
    o.artifact[tag] = json{{"size", O.points.size()}, {"verify", r.is_affine_ovoid}};
  }
  return o;
}

Outcome root_systems(int) {
  Outcome o;
  using Q = QuadNum;
  auto rat = [](long long a, long long b, int d) { return Q::rational(Rational(a, b), d); };
  const Q r2{Rational(0), Rational(1, 2), 2};
  const Q phi2{Rational(1, 4), Rational(1, 4), 5}, iphi2{Rational(-1, 4), Rational(1, 4), 5};
  struct Case {
    RootName name;
    int q;
    std::set<Q> values;
  };
  const Case cases[] = {
      {RootName::K8, 3, {rat(-1, 1, 1), rat(0, 1, 1)}},
      {RootName::K24, 5, {rat(-1, 1, 1), rat(-1, 2, 1), rat(0, 1, 1), rat(1, 2, 1)}},
      {RootName::K48, 7, {rat(-1, 1, 2), rat(-1, 2, 2), rat(0, 1, 2), rat(1, 2, 2), r2, -r2}},
      {RootName::K120, 11,
       {rat(-1, 1, 5), -phi2, rat(-1, 2, 5), -iphi2, rat(0, 1, 5), iphi2, rat(1, 2, 5), phi2}},
  };
  for (const auto& c : cases) {
    const Field F = Field::make(c.q);
    const auto O = root_ovoid(c.name, F);
    const auto vals = inner_product_values(root_system(c.name));
    const std::string tag = root_name(c.name);
    o.require(O.model == Model::Orthonormal && verify(F, O).is_affine_ovoid, tag + " verify");
    o.require(std::set<Q>(vals.begin(), vals.end()) == c.values, tag + " inner products");
    json v = json::array();
    for (const auto& x : vals) v.push_back(x.str());
    o.artifact[tag] = json{{"points", encode_points(O.points)}, {"inner_products", v}};
  }
  const Field F7 = Field::make(7), F11 = Field::make(11);
  o.require(reduce(Q{Rational(0), Rational(1), 2}, F7) == F7.from_int(3), "sqrt2 in GF(7)");
  o.require(reduce(Q{Rational(0), Rational(1), 5}, F11) == F11.from_int(4), "sqrt5 in GF(11)");
  o.require(reduce(Q{Rational(1, 2), Rational(1, 2), 5}, F11) == F11.from_int(8), "phi in GF(11)");
  return o;
}

Outcome sections(int) {
  Outcome o;
  for (int q : {3, 5, 7, 9, 11}) {
    const Field F = Field::make(q);
    std::size_t total = 0;
    json sizes = json::array();
    for (Elem t : F.elements()) {
      const auto s = trace_section(F, t);
      const int d = F.discriminant(t);
      const auto kind = d == 1 ? SectionKind::Hyperbolic : d == -1 ? SectionKind::Elliptic : SectionKind::Cone;
      o.require(s.points.size() == static_cast<std::size_t>(q * (q + d)), "q=" + std::to_string(q) + " |S_t|");
      o.require(s.kind == kind, "q=" + std::to_string(q) + " section kind");
      total += s.points.size();
      sizes.push_back(json{{"t", t.v}, {"size", s.points.size()}, {"kind", section_kind_name(s.kind)}});
    }
    o.require(total == static_cast<std::size_t>(q * (q * q - 1)), "q=" + std::to_string(q) + " total");
    o.artifact[std::to_string(q)] = sizes;
  }
  return o;
}

Outcome criteria_sweep(int) {
  Outcome o;
  for (int q : {3, 5, 7, 9}) {
    const Field F = Field::make(q);
    const auto pts = enumerate_sl2(F);
    const auto s = sweep_criteria_omp(F, pts);
    o.require(s.pairs == pts.size() * (pts.size() - 1) / 2, "q=" + std::to_string(q) + " pair count");
    o.require(s.disagreements == 0, "q=" + std::to_string(q) + ": " + std::to_string(s.disagreements) + " disagreements");
    o.artifact[std::to_string(q)] = json{{"pairs", s.pairs}, {"collinear", s.collinear_pairs}, {"disagreements", s.disagreements}};
  }
  const Field F = Field::make(11);
  const auto s = sweep_criteria_sampled(F, enumerate_sl2(F), 100000);
  o.require(s.pairs == 100000 && s.disagreements == 0, "q=11 sampled disagreements");
  o.artifact["11"] = json{{"pairs", s.pairs}, {"collinear", s.collinear_pairs}, {"disagreements", s.disagreements}};
  return o;
}

Outcome ovoid_properties(int jobs) {
  Outcome o;
  for (int q : {3, 5, 7, 11}) {
    const Sl2Geometry G(Field::make(q));
    const Field& F = G.field();
    const auto S = subgroup_ovoid(G);
    const auto C = coset_ovoid(F, S, G.point(G.size() - 1));
    std::vector<std::pair<std::string, AffineOvoid>> all{{"subgroup", S}, {"coset", C}};
    if (q == 7) {
      SearchOptions opt;
      opt.jobs = jobs;
      const auto P = build_problem(std::make_shared<const Sl2Geometry>(F));
      const auto r = search_all(P, opt);
      for (std::size_t k = 0; k < r.solutions.size(); ++k) {
        AffineOvoid X{Model::Matrix, {}};
        for (auto i : r.solutions[k]) X.points.push_back(G.point(i));
        all.emplace_back("search" + std::to_string(k), X);
      }
    }
    const std::string tag = "q=" + std::to_string(q);
    json rec = json::object();
    for (const auto& [name, O] : all) {
      const std::string who = tag + " " + name;
      const auto counts = trace_statistics(F, O.points);
      bool traces = true;
      for (Elem t : F.elements())
        if (F.discriminant(t) == 1 && counts[t.v] != static_cast<std::size_t>(q + 1)) traces = false;
      o.require(traces, who + " trace counts");
      o.require(trace_counts_consistent(F, O.points), who + " trace counts at +-2");
      o.require(antipodal_pairing(F, O.points).paired, who + " antipodal");
      if (name == "subgroup") {
        const bool both = std::binary_search(O.points.begin(), O.points.end(), mat::identity(F)) &&
                          std::binary_search(O.points.begin(), O.points.end(), mat::neg(F, mat::identity(F)));
        o.require(both, who + " lacks I or -I");
      }
      const auto out = outside_counts(F, Model::Matrix, O.points);
      o.require(out == std::set<std::size_t>{static_cast<std::size_t>(q + 1)}, who + " outside collinearity");
      rec[name] = json{{"traces", counts}, {"outside", std::vector<std::size_t>(out.begin(), out.end())}};
    }
    o.artifact[tag] = rec;
  }
  for (RootName n : {RootName::K8, RootName::K24, RootName::K48, RootName::K120}) {
    const int q = root_target_q(n);
    const Field F = Field::make(q);
    const auto R = root_ovoid(n, F);
    const auto out = outside_counts(F, Model::Orthonormal, R.points);
    o.require(antipodal_orthonormal(F, R.points), std::string(root_name(n)) + " antipodal");
    o.require(out == std::set<std::size_t>{static_cast<std::size_t>(q + 1)}, std::string(root_name(n)) + " outside collinearity");
    o.artifact[root_name(n)] = std::vector<std::size_t>(out.begin(), out.end());
  }
  return o;
}

Outcome spreads(int) {
  Outcome o;
  for (int q : {3, 5, 7}) {
    const Sl2Geometry G(Field::make(q));
    const Field& F = G.field();
    const auto C = spread_set_from_ovoid(F, subgroup_ovoid(G));
    const std::string tag = "q=" + std::to_string(q);
    o.require(check_spread_set(F, C).valid(), tag + " spread set");
    const auto part = partial_spread(F, C);
    std::set<Point4> seen;
    bool disjoint = true;
    for (const auto& L : part)
      for (const auto& x : L.points) disjoint = seen.insert(x).second && disjoint;
    o.require(part.size() == static_cast<std::size_t>(q * q) && disjoint, tag + " partial spread not disjoint");
    for (std::size_t i = 0; i < C.matrices.size(); ++i)
      if (mat::det(F, C.matrices[i]) == F.one()) o.require(is_isotropic(F, part[i].plucker), tag + " det-1 line not isotropic");
    const auto full = complete_spread(F, C);
    const auto cov = spread_coverage(F, full);
    o.require(cov.points_total == static_cast<std::size_t>((q * q + 1) * (q + 1)) && cov.partition(), tag + " no partition");
    json lines = json::array();
    for (const auto& L : full) lines.push_back(io::encode(L.plucker));
    o.artifact[tag] = lines;
  }
  return o;
}

Outcome classification(int jobs) {
  Outcome o;
  const std::pair<int, double> budgets[] = {{3, 10}, {5, 300}, {7, 7200}, {9, 43200}};
  for (auto [q, budget] : budgets) {
    const auto P = build_problem(Field::make(q));
    SearchOptions opt;
    opt.classify = true;
    opt.jobs = jobs;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = search_all(P, opt);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string tag = "q=" + std::to_string(q);
    o.require(r.complete, tag + " incomplete");
    if (q == 9)
      o.require(r.solutions.empty(), tag + ": " + std::to_string(r.solutions.size()) + " solutions");
    else
      o.require(r.classes.size() == 1, tag + ": " + std::to_string(r.classes.size()) + " classes");
    for (const auto& s : r.solutions) {
      std::vector<Mat2> pts;
      for (auto i : s) pts.push_back(P.geometry->point(i));
      o.require(verify(P.geometry->field(), Model::Matrix, pts).is_affine_ovoid, tag + " bad solution");
    }
    o.require(dt < budget, tag + " over budget");
    o.artifact[tag] = io::search_record(r, false);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto k = verify_known(Sl2Geometry(Field::make(11)));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(k.all_ok(), "verify_known(11) failed");
  o.require(dt < 60, "verify_known(11) over budget");
  o.artifact["known11"] = io::known_record(k);
  return o;
}

Outcome oracle_soundness(int jobs) {
  Outcome o;
  const auto P = build_problem(Field::make(3));
  SearchOptions raw, fixed;
  raw.symmetry = Symmetry::None;
  fixed.symmetry = Symmetry::Auto;
  raw.jobs = fixed.jobs = jobs;
  const auto r = search_all(P, raw), f = search_all(P, fixed);
  const auto brute = search_bruteforce(P);
  o.require(r.complete && f.complete, "incomplete");
  o.require(r.solutions == brute, "unpruned search differs from brute force");
  bool superset = true;
  for (const auto& s : f.solutions) superset = superset && std::binary_search(r.solutions.begin(), r.solutions.end(), s);
  o.require(superset, "normalized solutions missing from the raw set");
  o.require(r.solutions.size() == 3 * f.solutions.size(), "raw count is not q times the normalized count");
  o.artifact = json{{"raw", r.solutions}, {"normalized", f.solutions}, {"brute", brute.size()}};
  return o;
}

// CLI output for the commands behind criteria 2-9.
std::vector<std::string> cli_outputs(int jobs) {
  using namespace ovoid::cli;
  std::vector<RunConfig> configs;
  for (int q : {3, 5, 7, 9}) {
    RunConfig c;
    c.command = Command::Search;
    c.q = q;
    c.classify = true;
    c.jobs = jobs;
    configs.push_back(c);
    c.command = Command::Sections;
    configs.push_back(c);
  }
  for (int q : {3, 5, 7, 11}) {
    RunConfig c;
    c.q = q;
    c.command = Command::Construct;
    configs.push_back(c);
    c.method = Method::RootSystem;
    configs.push_back(c);
    c.command = Command::Known;
    configs.push_back(c);
    if (q < 11) {
      c.command = Command::Spread;
      c.method = Method::Subgroup;
      configs.push_back(c);
    }
  }
  std::vector<std::string> out;
  for (const auto& c : configs) {
    std::ostringstream o, e;
    const int code = run(c, o, e);
    out.push_back(std::to_string(code) + "\n" + o.str());
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "subgroup of order q^2-1 exists exactly for q = 3, 5, 7, 11", 660, subgroup_table},
      {2, "subgroup ovoids verify and are sharply transitive", 60, sharply_transitive},
      {3, "root-system ovoids and inner-product values", 60, root_systems},
      {4, "trace section sizes q(q + delta(t))", 60, sections},
      {5, "eight collinearity criteria agree", 300, criteria_sweep},
      {6, "trace counts, antipodality, outside collinearity", 60, ovoid_properties},
      {7, "spread export partitions PG(3,q)", 60, spreads},
      {8, "exhaustive classification q <= 9, verify_known(11)", 55000, classification},
      {9, "q = 3 unpruned search and orbit factor", 300, oracle_soundness},
  };

  int failed = 0;
  std::vector<std::string> first, second, parallel;
  auto pass_over = [&](int jobs, std::vector<std::string>& dumps, bool report) {
    omp_set_num_threads(jobs);
    for (const auto& c : criteria) {
      const auto t0 = std::chrono::steady_clock::now();
      Outcome o;
      try {
        o = c.run(jobs);
      } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
      }
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (dt >= c.budget_seconds) o.require(false, "over budget");
      dumps.push_back(o.artifact.dump());
      if (!report) continue;
      failed += !o.pass;
      std::printf("criterion %2d [PRIMARY] %s  %-55s %9.2fs (budget %.0fs)%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                  dt, c.budget_seconds, o.detail.empty() ? "" : "  ", o.detail.c_str());
      std::fflush(stdout);
    }
  };
  pass_over(1, first, true);
  pass_over(1, second, false);
  pass_over(4, parallel, false);

  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  const auto cli1 = cli_outputs(1), cli1b = cli_outputs(1), cli4 = cli_outputs(4);
  for (std::size_t i = 0; i < cli1.size(); ++i)
    if ((cli1[i] != cli1b[i] || cli1[i] != cli4[i] || cli1[i][0] != '0') && detail.empty())
      detail = "CLI output " + std::to_string(i) + " not reproducible";
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i] != second[i] && detail.empty()) detail = "criterion " + std::to_string(i + 1) + " differs between runs";
    if (first[i] != parallel[i] && detail.empty()) detail = "criterion " + std::to_string(i + 1) + " differs with 4 jobs";
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failed += !detail.empty();
  std::printf("criterion %2d [PRIMARY] %s  %-55s %9.2fs%s%s\n", 10, detail.empty() ? "PASS" : "FAIL",
              "byte-identical JSON across runs and jobs 1 / 4", dt, detail.empty() ? "" : "  ", detail.c_str());
  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
