#include "ovoid/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "CLI11.hpp"

#include "ovoid/constructions.hpp"
#include "ovoid/errors.hpp"
#include "ovoid/io.hpp"
#include "ovoid/quadric.hpp"
#include "ovoid/spread.hpp"

namespace ovoid::cli {

using io::json;

const char* command_name(Command c) noexcept {
  switch (c) {
    case Command::Construct: return "construct";
    case Command::Verify: return "verify";
    case Command::Search: return "search";
    case Command::Sections: return "sections";
    case Command::Spread: return "spread";
    case Command::Transport: return "transport";
    case Command::Known: return "known";
  }
  return "?";
}

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::Subgroup: return "subgroup";
    case Method::Coset: return "coset";
    case Method::RootSystem: return "root-system";
  }
  return "?";
}

int max_search_q() {
  const char* s = std::getenv("OVOID_MAX_Q");
  if (!s || !*s) return 9;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 3) return 9;
  return static_cast<int>(v);
}

namespace {

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

// Everything that determines the output; --jobs, --output and --checkpoint
// are left out so runs differing only in those compare equal.
json header(const RunConfig& c) {
  json h{{"v", io::kSchemaVersion}, {"type", "header"}, {"command", command_name(c.command)}, {"q", c.q}};
  switch (c.command) {
    case Command::Transport:
      if (c.input.empty() && !c.name.empty()) h["name"] = c.name;
      break;
    case Command::Construct:
    case Command::Spread:
      if (c.input.empty()) {
        h["method"] = method_name(c.method);
        if (!c.name.empty()) h["name"] = c.name;
        if (!c.rep.empty()) h["rep"] = c.rep;
      }
      break;
    case Command::Search:
      h["symmetry"] = symmetry_name(c.symmetry);
      h["classify"] = c.classify;
      h["emit_solutions"] = c.emit_solutions;
      h["solution_limit"] = c.solution_limit;
      h["node_limit"] = c.node_limit;
      h["time_limit"] = c.time_limit;
      break;
    default:
      break;
  }
  if (!c.input.empty()) h["input"] = c.input;
  return h;
}

Field field_for(int q) {
  if (q < 3 || q > 13) throw UnsupportedError("q must lie in 3..13");
  Field F = Field::make(q);
  if (F.p() == 2) throw UnsupportedError("q must be odd");
  return F;
}

RootName default_root(int q) {
  for (RootName r : {RootName::K8, RootName::K24, RootName::K48, RootName::K120})
    if (root_target_q(r) == q) return r;
  throw UnsupportedError("no root-system ovoid for q = " + std::to_string(q));
}

AffineOvoid construct(const RunConfig& c, const Field& F) {
  if (c.method == Method::RootSystem) {
    RootName r;
    try {
      r = c.name.empty() ? default_root(c.q) : parse_root_name(c.name);
    } catch (const DomainError& e) {
      throw UnsupportedError(e.what());
    }
    if (root_target_q(r) != c.q)
      throw UnsupportedError(std::string(root_name(r)) + " is an ovoid for q = " + std::to_string(root_target_q(r)));
    return root_ovoid(r, F);
  }
  const Sl2Geometry G(F);
  AffineOvoid O = subgroup_ovoid(G);
  if (c.method == Method::Subgroup) return O;
  Mat2 rep;
  if (c.rep.empty()) {
    // Least element outside the subgroup.
    for (const Mat2& X : G.points())
      if (!std::binary_search(O.points.begin(), O.points.end(), X)) {
        rep = X;
        break;
      }
  } else {
    if (c.rep.size() != 4) throw UnsupportedError("--rep needs four entries");
    for (std::size_t i = 0; i < 4; ++i) rep[i] = F.from_code(c.rep[i]);
  }
  return coset_ovoid(F, O, rep);
}

std::vector<io::ParsedOvoid> read_input(const RunConfig& c) {
  if (c.input == "-") return io::read_ovoids(std::cin, c.q);
  std::ifstream in(c.input);
  if (!in) throw InputError(0, "cannot open " + c.input);
  return io::read_ovoids(in, c.q);
}

AffineOvoid single_input(const RunConfig& c, const Field& F) {
  auto parsed = read_input(c);
  if (parsed.empty()) throw InputError(0, "no ovoid record in input");
  auto& p = parsed.front();
  if (p.projective) {
    AffineOvoid O{p.model, {}};
    for (const auto& P : p.projective_points) {
      if (P.x[0].is_zero()) throw InputError(p.line, "point in the hyperplane at infinity");
      const Elem s = F.inv(P.x[0]);
      O.points.push_back(Mat2{{F.mul(s, P.x[1]), F.mul(s, P.x[2]), F.mul(s, P.x[3]), F.mul(s, P.x[4])}});
    }
    return O;
  }
  return AffineOvoid{p.model, std::move(p.points)};
}

int cmd_construct(const RunConfig& c, const Field& F, std::ostream& out) {
  AffineOvoid O = construct(c, F);
  O.sort();
  emit(out, io::ovoid_record(F, O));
  return kOk;
}

int cmd_verify(const RunConfig& c, const Field& F, std::ostream& out, std::ostream& err) {
  if (c.input.empty()) throw UnsupportedError("verify needs --input");
  int code = kOk;
  for (const auto& p : read_input(c)) {
    AffineOvoid O{p.model, p.points};
    VerifyReport r;
    if (p.projective) {
      r = verify_projective(F, p.model, p.projective_points);
      O.points.clear();
      for (const auto& P : p.projective_points)
        if (!P.x[0].is_zero()) {
          const Elem s = F.inv(P.x[0]);
          O.points.push_back(Mat2{{F.mul(s, P.x[1]), F.mul(s, P.x[2]), F.mul(s, P.x[3]), F.mul(s, P.x[4])}});
        }
    } else {
      r = verify(F, O);
    }
    json rec = io::verify_record(F, O, r);
    rec["line"] = p.line;
    emit(out, rec);
    for (auto [i, j] : r.violations) emit(out, io::violation_record(O, i, j));
    if (!r.is_affine_ovoid) {
      code = kVerifyFailed;
      err << "line " << p.line << ": not an affine ovoid";
      if (!r.violations.empty())
        err << " (points " << r.violations.front().first << " and " << r.violations.front().second << " are collinear)";
      err << '\n';
    }
  }
  return code;
}

int cmd_search(const RunConfig& c, const Field& F, std::ostream& out) {
  const int cap = max_search_q();
  if (c.q > cap)
    throw UnsupportedError("search at q = " + std::to_string(c.q) + " exceeds OVOID_MAX_Q = " + std::to_string(cap));
  const SearchProblem P = build_problem(F, 13);
  SearchOptions o;
  o.symmetry = c.symmetry;
  o.classify = c.classify;
  o.jobs = c.jobs;
  o.solution_limit = c.solution_limit;
  o.node_limit = c.node_limit;
  o.time_limit_seconds = c.time_limit;
  o.checkpoint_path = c.checkpoint;
  const SearchResult r = search_all(P, o);
  emit(out, io::search_record(r, c.timing));
  const Sl2Geometry& G = *P.geometry;
  auto as_ovoid = [&](const std::vector<std::uint32_t>& idx) {
    AffineOvoid O{Model::Matrix, {}};
    for (auto i : idx) O.points.push_back(G.point(i));
    return O;
  };
  if (c.emit_solutions)
    for (std::size_t k = 0; k < r.solutions.size(); ++k) {
      json rec = io::ovoid_record(F, as_ovoid(r.solutions[k]));
      rec["solution"] = k;
      emit(out, rec);
    }
  for (std::size_t k = 0; k < r.classes.size(); ++k) {
    json rec = io::ovoid_record(F, as_ovoid(r.classes[k]));
    rec["class"] = k;
    rec["class_size"] = r.class_sizes[k];
    emit(out, rec);
  }
  return kOk;
}

int cmd_sections(const Field& F, std::ostream& out) {
  std::size_t total = 0;
  bool ok = true;
  for (Elem t : F.elements()) {
    const TraceSection s = trace_section(F, t);
    const json rec = io::section_record(F, s);
    total += s.points.size();
    ok = ok && rec["size"] == rec["expected"];
    emit(out, rec);
  }
  const int q = F.q();
  const auto lines = pi_infinity_lines(F).size();
  ok = ok && total == static_cast<std::size_t>(q * (q * q - 1)) && lines == static_cast<std::size_t>(2 * (q + 1));
  emit(out, json{{"v", io::kSchemaVersion},
                 {"type", "sections_summary"},
                 {"q", q},
                 {"total", total},
                 {"expected_total", q * (q * q - 1)},
                 {"pi_infinity_lines", lines},
                 {"ok", ok}});
  return ok ? kOk : kVerifyFailed;
}

int cmd_spread(const RunConfig& c, const Field& F, std::ostream& out) {
  const AffineOvoid O = c.input.empty() ? construct(c, F) : single_input(c, F);
  if (O.model != Model::Matrix) throw UnsupportedError("spread export needs a matrix-model ovoid");
  const SpreadSet C = spread_set_from_ovoid(F, O);
  const SpreadSetCheck chk = check_spread_set(F, C);
  const auto lines = complete_spread(F, C);
  for (std::size_t i = 0; i < lines.size(); ++i) emit(out, io::spread_line_record(F, i, lines[i]));

  std::size_t isotropic = 0;
  bool det_one_isotropic = true;
  for (std::size_t i = 0; i < C.matrices.size(); ++i) {
    const bool iso = is_isotropic(F, lines[i].plucker);
    isotropic += iso;
    if (mat::det(F, C.matrices[i]) == F.one() && !iso) det_one_isotropic = false;
  }
  std::set<Point4> seen;
  bool disjoint = true;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i)
    for (const auto& x : lines[i].points) disjoint = seen.insert(x).second && disjoint;
  const SpreadCoverage cov = spread_coverage(F, lines);
  const bool ok = chk.valid() && disjoint && det_one_isotropic && cov.partition();
  emit(out, json{{"v", io::kSchemaVersion},
                 {"type", "spread_summary"},
                 {"q", F.q()},
                 {"spread_set_size", chk.size_ok},
                 {"spread_set_zero_identity", chk.has_zero_and_identity},
                 {"spread_set_differences", chk.differences_nonsingular},
                 {"partial_spread_disjoint", disjoint},
                 {"isotropic_lines", isotropic},
                 {"det_one_isotropic", det_one_isotropic},
                 {"points_total", cov.points_total},
                 {"partition", cov.partition()},
                 {"ok", ok}});
  return ok ? kOk : kVerifyFailed;
}

int cmd_transport(const RunConfig& c, const Field& F, std::ostream& out) {
  RunConfig rc = c;
  if (c.input.empty()) rc.method = Method::RootSystem;
  const AffineOvoid O = c.input.empty() ? construct(rc, F) : single_input(c, F);
  if (O.model != Model::Orthonormal) throw UnsupportedError("transport maps orthonormal-model ovoids");
  const QuadricModel A = QuadricModel::make(F, Model::Matrix), B = QuadricModel::make(F, Model::Orthonormal);
  Congruence K;
  try {
    K = congruence_transform(F, A.gram, B.gram);
  } catch (const IncompatibleFormsError& e) {
    throw UnsupportedError(e.what());
  }
  std::vector<ProjectivePoint5> image;
  for (const Mat2& X : O.points) {
    const ProjectivePoint5 P = affine_point(X);
    std::array<Elem, 5> y{};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) y[i] = F.add(y[i], F.mul(K.P(i, j), P.x[j]));
    image.push_back(normalize(F, y));
  }
  bool on = true, independent = true;
  for (std::size_t i = 0; i < image.size(); ++i) {
    on = on && on_quadric(F, A, image[i]);
    for (std::size_t j = i + 1; j < image.size(); ++j)
      independent = independent && !polar_form(F, A, image[i], image[j]).is_zero();
  }
  json P = json::array();
  for (int i = 0; i < 5; ++i) {
    json row = json::array();
    for (int j = 0; j < 5; ++j) row.push_back(K.P(i, j).v);
    P.push_back(std::move(row));
  }
  emit(out, json{{"v", io::kSchemaVersion}, {"type", "transport"}, {"q", F.q()}, {"lambda", K.lambda.v}, {"matrix", std::move(P)}});
  json pts = json::array();
  for (const auto& x : image) pts.push_back(io::encode(x));
  emit(out, json{{"v", io::kSchemaVersion},
                 {"type", "ovoid"},
                 {"q", F.q()},
                 {"model", "matrix"},
                 {"size", image.size()},
                 {"points", std::move(pts)},
                 {"on_quadric", on},
                 {"pairwise_non_collinear", independent}});
  return on && independent ? kOk : kVerifyFailed;
}

int cmd_known(const Field& F, std::ostream& out) {
  const Sl2Geometry G(F);
  const KnownReport r = verify_known(G);
  emit(out, io::known_record(r));
  return r.all_ok() ? kOk : kVerifyFailed;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Field F = field_for(c.q);
  emit(out, header(c));
  switch (c.command) {
    case Command::Construct: return cmd_construct(c, F, out);
    case Command::Verify: return cmd_verify(c, F, out, err);
    case Command::Search: return cmd_search(c, F, out);
    case Command::Sections: return cmd_sections(F, out);
    case Command::Spread: return cmd_spread(c, F, out);
    case Command::Transport: return cmd_transport(c, F, out);
    case Command::Known: return cmd_known(F, out);
  }
  return kUsage;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto error = [&](const char* kind, const std::string& msg, std::size_t line) {
    json e{{"v", io::kSchemaVersion}, {"type", "error"}, {"kind", kind}, {"message", msg}};
    if (line) e["line"] = line;
    emit(out, e);
    err << "error: " << msg << '\n';
  };
  try {
    return dispatch(cfg, out, err);
  } catch (const InputError& e) {
    error("input", e.what(), e.line());
    return kBadInput;
  } catch (const UnsupportedError& e) {
    error("unsupported", e.what(), 0);
    return kUnsupported;
  } catch (const DomainError& e) {
    error("unsupported", e.what(), 0);
    return kUnsupported;
  }
}

int main(int argc, const char* const* argv) {
  CLI::App app{"Affine ovoids of Q(4,q) as sharply transitive subsets of SL(2,q)"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::map<std::string, Method> methods{
      {"subgroup", Method::Subgroup}, {"coset", Method::Coset}, {"root-system", Method::RootSystem}};
  const std::map<std::string, Symmetry> symmetries{{"auto", Symmetry::Auto},
                                                   {"none", Symmetry::None},
                                                   {"identity", Symmetry::Identity},
                                                   {"identity+trace", Symmetry::IdentityAndTrace}};

  auto add_common = [&](CLI::App* s) {
    s->add_option("--q", cfg.q, "field order")->required();
    s->add_option("--output,-o", cfg.output, "output file (default stdout)");
  };
  auto add_source = [&](CLI::App* s) {
    s->add_option("--method", cfg.method, "subgroup, coset or root-system")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    s->add_option("--name", cfg.name, "root system: K8, K24, K24P, K48, K120");
    s->add_option("--rep", cfg.rep, "coset representative e1,e2,e3,e4")->delimiter(',');
  };

  auto* construct = app.add_subcommand("construct", "build a known ovoid");
  add_common(construct);
  add_source(construct);

  auto* verify = app.add_subcommand("verify", "check ovoid records");
  add_common(verify);
  verify->add_option("--input,-i", cfg.input, "JSON-lines file, - for stdin")->required();

  auto* search = app.add_subcommand("search", "exhaustive search for affine ovoids");
  add_common(search);
  search->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  search->add_flag("--classify", cfg.classify, "reduce solutions to equivalence classes");
  search->add_option("--symmetry", cfg.symmetry, "auto, none, identity, identity+trace")
      ->transform(CLI::CheckedTransformer(symmetries, CLI::ignore_case));
  search->add_flag("!--no-solutions", cfg.emit_solutions, "omit the solution records");
  search->add_option("--solution-limit", cfg.solution_limit);
  search->add_option("--node-limit", cfg.node_limit);
  search->add_option("--time-limit", cfg.time_limit, "seconds");
  search->add_option("--checkpoint", cfg.checkpoint, "resumable task log");
  search->add_flag("--timing", cfg.timing, "include wall time (output no longer reproducible)");

  auto* sections = app.add_subcommand("sections", "trace sections S_t");
  add_common(sections);

  auto* spread = app.add_subcommand("spread", "spread of PG(3,q) from an ovoid");
  add_common(spread);
  add_source(spread);
  spread->add_option("--input,-i", cfg.input, "ovoid record file instead of a construction");

  auto* transport = app.add_subcommand("transport", "map an orthonormal-model ovoid into the matrix model");
  add_common(transport);
  transport->add_option("--name", cfg.name, "root system");
  transport->add_option("--input,-i", cfg.input, "orthonormal ovoid record file");

  auto* known = app.add_subcommand("known", "check the known constructions for q");
  add_common(known);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  const std::pair<CLI::App*, Command> cmds[] = {{construct, Command::Construct}, {verify, Command::Verify},
                                                {search, Command::Search},       {sections, Command::Sections},
                                                {spread, Command::Spread},       {transport, Command::Transport},
                                                {known, Command::Known}};
  for (auto [s, c] : cmds)
    if (s->parsed()) cfg.command = c;

  if (cfg.output.empty()) return run(cfg, std::cout, std::cerr);
  std::ofstream out(cfg.output);
  if (!out) {
    std::cerr << "error: cannot write " << cfg.output << '\n';
    return kUsage;
  }
  return run(cfg, out, std::cerr);
}

}  // namespace ovoid::cli
