#include "ovoid/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <optional>

#include "json.hpp"

#include "ovoid/constructions.hpp"
#include "ovoid/errors.hpp"

namespace ovoid {

using json = nlohmann::json;

SearchProblem build_problem(const Field& F, int max_q) {
  if (F.p() == 2 || F.q() < 3) throw UnsupportedError("search needs odd q >= 3");
  if (F.q() > max_q) throw UnsupportedError("q = " + std::to_string(F.q()) + " exceeds the search limit " + std::to_string(max_q));
  return build_problem(std::make_shared<const Sl2Geometry>(F));
}

SearchProblem build_problem(std::shared_ptr<const Sl2Geometry> G) {
  if (G->field().p() == 2) throw UnsupportedError("search needs odd q");
  SearchProblem P;
  const auto& lines = G->lines();
  P.line_points.reserve(lines.size());
  for (const auto& L : lines) P.line_points.push_back(L.points);
  P.point_lines.resize(G->size());
  P.neighbours.resize(G->size());
  P.incidence.assign(G->size(), Bitset(lines.size()));
  for (std::size_t i = 0; i < G->size(); ++i) {
    P.point_lines[i] = G->lines_through(i);
    for (auto l : P.point_lines[i]) P.incidence[i].set(l);
    for (auto j : G->adjacency(i).to_indices()) P.neighbours[i].push_back(static_cast<std::uint32_t>(j));
  }
  P.geometry = std::move(G);
  return P;
}

const char* symmetry_name(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Identity: return "identity";
    case Symmetry::IdentityAndTrace: return "identity+trace";
    case Symmetry::Auto: return "auto";
  }
  return "?";
}

namespace {

// Least trace t with t^2 - 4 a non-zero square, if any.
std::optional<Elem> hyperbolic_trace(const Field& F) {
  for (Elem t : F.elements())
    if (F.discriminant(t) == 1) return t;
  return std::nullopt;
}

}  // namespace

Symmetry resolve_symmetry(const SearchProblem& P, Symmetry requested) {
  const bool has_trace = hyperbolic_trace(P.geometry->field()).has_value();
  if (requested == Symmetry::Auto) return has_trace ? Symmetry::IdentityAndTrace : Symmetry::Identity;
  if (requested == Symmetry::IdentityAndTrace && !has_trace) return Symmetry::Identity;
  return requested;
}

std::vector<std::uint32_t> fixed_points(const SearchProblem& P, Symmetry s) {
  s = resolve_symmetry(P, s);
  const Sl2Geometry& G = *P.geometry;
  const Field& F = G.field();
  std::vector<std::uint32_t> out;
  if (s == Symmetry::None) return out;
  out.push_back(G.identity_index());
  if (s == Symmetry::IdentityAndTrace) {
    // Companion matrix of x^2 - t x + 1.
    const Elem t = *hyperbolic_trace(F);
    out.push_back(G.index_of(Mat2{{F.zero(), F.neg(F.one()), F.one(), t}}));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Control {
  Control(const SearchOptions& o, Clock::time_point t) : opt(o), start(t) {}

  const SearchOptions& opt;
  Clock::time_point start;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> solutions{0};
  std::mutex reason_mutex;
  std::string reason;

  void halt(const std::string& why) {
    std::lock_guard<std::mutex> lock(reason_mutex);
    if (reason.empty()) reason = why;
    stop = true;
  }

  // Called every few thousand nodes with the nodes done since the last call.
  void poll(std::uint64_t delta) {
    const auto n = nodes.fetch_add(delta) + delta;
    if (opt.node_limit && n >= opt.node_limit) halt("node limit reached");
    if (opt.cancel && opt.cancel->load()) halt("cancelled");
    if (opt.time_limit_seconds > 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() >= opt.time_limit_seconds)
      halt("time limit reached");
  }
};

class Solver {
 public:
  Solver(const SearchProblem& P, Control& ctl)
      : P_(P),
        ctl_(ctl),
        avail_(P.num_points(), 1),
        count_(P.num_lines(), static_cast<std::uint16_t>(P.q())),
        covered_(P.num_lines(), 0) {}

  bool available(std::uint32_t p) const { return avail_[p] != 0; }
  std::size_t depth() const { return chosen_.size(); }

  void place(std::uint32_t p) {
    frames_.push_back(removed_.size());
    chosen_.push_back(p);
    for (auto l : P_.point_lines[p]) covered_[l] = 1;
    drop(p);
    for (auto n : P_.neighbours[p])
      if (avail_[n]) drop(n);
    ++nodes_;
    if (++since_poll_ == kPoll) flush();
  }

  void unplace() {
    const std::uint32_t p = chosen_.back();
    chosen_.pop_back();
    for (auto l : P_.point_lines[p]) covered_[l] = 0;
    const std::size_t mark = frames_.back();
    frames_.pop_back();
    while (removed_.size() > mark) {
      const auto n = removed_.back();
      removed_.pop_back();
      avail_[n] = 1;
      for (auto l : P_.point_lines[n]) ++count_[l];
    }
  }

  // Uncovered line with the fewest available points; count 0 means dead end.
  // Returns num_lines() when every line is covered.
  std::size_t pick_line(std::uint16_t& best) const {
    std::size_t arg = P_.num_lines();
    best = 0xffff;
    for (std::size_t l = 0; l < P_.num_lines(); ++l) {
      if (covered_[l] || count_[l] >= best) continue;
      best = count_[l];
      arg = l;
      if (best == 0) break;
    }
    return arg;
  }

  void dfs() {
    if (ctl_.stop.load(std::memory_order_relaxed)) {
      aborted_ = true;
      return;
    }
    if (chosen_.size() == P_.target()) {
      record();
      return;
    }
    std::uint16_t best;
    const std::size_t l = pick_line(best);
    if (best == 0 || l == P_.num_lines()) {
      ++dead_ends_;
      return;
    }
    for (auto p : P_.line_points[l]) {
      if (!avail_[p]) continue;
      place(p);
      dfs();
      unplace();
      if (aborted_) return;
    }
  }

  void flush() {
    ctl_.poll(since_poll_);
    since_poll_ = 0;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t dead_ends() const { return dead_ends_; }
  bool aborted() const { return aborted_; }
  std::vector<std::vector<std::uint32_t>>& found() { return found_; }

 private:
  static constexpr std::uint64_t kPoll = 4096;

  void drop(std::uint32_t p) {
    avail_[p] = 0;
    for (auto l : P_.point_lines[p]) --count_[l];
    removed_.push_back(p);
  }

  void record() {
    auto s = chosen_;
    std::sort(s.begin(), s.end());
    found_.push_back(std::move(s));
    const auto n = ctl_.solutions.fetch_add(1) + 1;
    if (ctl_.opt.solution_limit && n >= ctl_.opt.solution_limit) ctl_.halt("solution limit reached");
  }

  const SearchProblem& P_;
  Control& ctl_;
  std::vector<std::uint8_t> avail_;
  std::vector<std::uint16_t> count_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> removed_;
  std::vector<std::size_t> frames_;
  std::vector<std::vector<std::uint32_t>> found_;
  std::uint64_t nodes_ = 0, dead_ends_ = 0, since_poll_ = 0;
  bool aborted_ = false;
};

struct TaskResult {
  bool done = false;
  std::uint64_t nodes = 0, dead_ends = 0;
  std::vector<std::vector<std::uint32_t>> solutions;
};

constexpr const char* kMagic = "OVSEARCH1";

json checkpoint_header(const SearchProblem& P, Symmetry s, const std::vector<std::uint32_t>& fixed,
                       const std::vector<std::uint32_t>& tasks) {
  return json{{"q", P.q()}, {"symmetry", symmetry_name(s)}, {"fixed", fixed}, {"tasks", tasks}};
}

json task_record(std::size_t i, const TaskResult& r) {
  return json{{"task", i}, {"nodes", r.nodes}, {"dead_ends", r.dead_ends}, {"solutions", r.solutions}};
}

// Completed tasks from an existing checkpoint whose header matches; throws
// InputError on malformed files.
std::map<std::size_t, TaskResult> load_checkpoint(const std::string& path, const json& header) {
  std::map<std::size_t, TaskResult> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  std::size_t n = 0;
  if (!std::getline(in, line)) return done;
  ++n;
  if (line != kMagic) throw InputError(n, "checkpoint does not start with " + std::string(kMagic));
  if (!std::getline(in, line)) throw InputError(n + 1, "checkpoint header missing");
  ++n;
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw InputError(n, std::string("bad checkpoint header: ") + e.what());
  }
  if (h != header) throw InputError(n, "checkpoint belongs to a different search");
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      const json r = json::parse(line);
      const auto i = r.at("task").get<std::size_t>();
      const auto tasks = header.at("tasks").size();
      if (i >= tasks) throw InputError(n, "task index out of range");
      TaskResult t;
      t.done = true;
      t.nodes = r.at("nodes").get<std::uint64_t>();
      t.dead_ends = r.at("dead_ends").get<std::uint64_t>();
      t.solutions = r.at("solutions").get<std::vector<std::vector<std::uint32_t>>>();
      done[i] = std::move(t);
    } catch (const json::exception& e) {
      // A torn final line from an interrupted write is not fatal.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw InputError(n, std::string("bad checkpoint record: ") + e.what());
    }
  }
  return done;
}

}  // namespace

SearchResult search_all(const SearchProblem& P, const SearchOptions& opt) {
  const auto t0 = Clock::now();
  SearchResult res;
  res.q = P.q();
  res.symmetry = resolve_symmetry(P, opt.symmetry);
  res.fixed_points = fixed_points(P, res.symmetry);

  Control ctl{opt, t0};
  Solver root(P, ctl);
  for (auto p : res.fixed_points) {
    if (!root.available(p)) throw std::logic_error("fixed points are collinear");
    root.place(p);
  }

  // Tasks: the available points of the most constrained line at the root.
  std::vector<std::uint32_t> tasks;
  std::uint16_t best;
  const std::size_t l = root.pick_line(best);
  if (root.depth() == P.target()) {
    res.solutions.push_back(res.fixed_points);
  } else if (best > 0 && l < P.num_lines()) {
    for (auto p : P.line_points[l])
      if (root.available(p)) tasks.push_back(p);
  } else {
    ++res.stats.dead_ends;
  }
  res.stats.nodes = root.nodes();
  res.stats.tasks = tasks.size();

  std::vector<TaskResult> results(tasks.size());
  std::ofstream ck;
  if (!opt.checkpoint_path.empty()) {
    const json header = checkpoint_header(P, res.symmetry, res.fixed_points, tasks);
    auto done = load_checkpoint(opt.checkpoint_path, header);
    for (auto& [i, r] : done) {
      results[i] = std::move(r);
      ++res.stats.tasks_resumed;
    }
    ck.open(opt.checkpoint_path, std::ios::trunc);
    ck << kMagic << '\n' << header.dump() << '\n';
    for (std::size_t i = 0; i < results.size(); ++i)
      if (results[i].done) ck << task_record(i, results[i]).dump() << '\n';
    ck.flush();
  }
  std::mutex ck_mutex;

  const auto ntasks = static_cast<long long>(tasks.size());
  const int jobs = std::max(1, opt.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long long i = 0; i < ntasks; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (results[k].done || ctl.stop.load()) continue;
    Solver s = root;
    s.place(tasks[k]);
    s.dfs();
    s.flush();
    TaskResult& r = results[k];
    r.nodes = s.nodes() - root.nodes();
    r.dead_ends = s.dead_ends();
    r.solutions = std::move(s.found());
    r.done = !s.aborted();
    if (r.done && ck.is_open()) {
      std::lock_guard<std::mutex> lock(ck_mutex);
      ck << task_record(k, r).dump() << '\n';
      ck.flush();
    }
  }

  for (auto& r : results) {
    res.stats.nodes += r.nodes;
    res.stats.dead_ends += r.dead_ends;
    res.stats.tasks_completed += r.done;
    for (auto& s : r.solutions) res.solutions.push_back(std::move(s));
  }
  std::sort(res.solutions.begin(), res.solutions.end());
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()), res.solutions.end());
  if (res.stats.tasks_completed != res.stats.tasks) {
    res.complete = false;
    res.incomplete_reason = ctl.reason.empty() ? "interrupted" : ctl.reason;
  }
  if (opt.solution_limit && res.solutions.size() > opt.solution_limit) res.solutions.resize(opt.solution_limit);
  if (opt.classify) classify(P, res);
  res.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

std::vector<std::vector<std::uint32_t>> search_bruteforce(const SearchProblem& P) {
  const Sl2Geometry& G = *P.geometry;
  const std::size_t n = P.num_points(), target = P.target();
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> chosen;
  // Plain independent-set enumeration: every point later than the last
  // chosen one that is collinear with no chosen point.
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == target) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t p = from; p < n; ++p) {
      bool ok = true;
      for (auto c : chosen)
        if (G.adjacent(c, p)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(static_cast<std::uint32_t>(p));
      self(self, p + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

void classify(const SearchProblem& P, SearchResult& result) {
  const Sl2Geometry& G = *P.geometry;
  std::map<std::vector<std::uint32_t>, std::size_t> classes;
  for (const auto& sol : result.solutions) {
    std::vector<Mat2> pts;
    pts.reserve(sol.size());
    for (auto i : sol) pts.push_back(G.point(i));
    ++classes[canonical_form(G, pts)];
  }
  result.classes.clear();
  result.class_sizes.clear();
  for (auto& [c, k] : classes) {
    result.classes.push_back(c);
    result.class_sizes.push_back(k);
  }
}

KnownReport verify_known(const Sl2Geometry& G) {
  const Field& F = G.field();
  const int q = G.q();
  KnownReport rep;
  rep.q = q;
  auto check = [&](const std::string& name, bool ok) { rep.checks.push_back({name, ok}); };

  const AffineOvoid O = subgroup_ovoid(G);
  const auto n = static_cast<std::size_t>(q * q - 1);
  rep.subgroup_size = O.points.size();
  check("subgroup_size", O.points.size() == n);
  check("subgroup_verify", verify(F, O).is_affine_ovoid);
  check("subgroup_sharply_transitive", is_sharply_transitive(F, O.points));
  const Mat2 I = mat::identity(F);
  check("subgroup_contains_I_and_minus_I", std::binary_search(O.points.begin(), O.points.end(), I) &&
                                               std::binary_search(O.points.begin(), O.points.end(), mat::neg(F, I)));
  const auto anti = antipodal_pairing(F, O.points);
  check("subgroup_antipodal", anti.paired && anti.pairs == n / 2);
  check("subgroup_trace_counts", trace_counts_consistent(F, O.points));

  bool outside_ok = true;
  for (const Mat2& P : G.points()) {
    if (std::binary_search(O.points.begin(), O.points.end(), P)) continue;
    if (collinear_count_from_outside(F, O.points, P) != static_cast<std::size_t>(q + 1)) {
      outside_ok = false;
      break;
    }
  }
  check("subgroup_outside_collinear", outside_ok);

  const auto cov = line_coverage(G, O.points);
  check("subgroup_line_coverage", cov.affine_covered_once == cov.affine_lines &&
                                      cov.infinity_lines == static_cast<std::size_t>(2 * (q + 1)));

  std::optional<RootName> root;
  for (RootName r : {RootName::K8, RootName::K24, RootName::K48, RootName::K120})
    if (root_target_q(r) == q) root = r;
  if (root) {
    rep.root_system = root_name(*root);
    const AffineOvoid R = root_ovoid(*root, F);
    check("root_verify", verify(F, R).is_affine_ovoid);
    check("root_maximal", extendable_points(F, Model::Orthonormal, R.points) == 0);
    check("root_pair_histogram", orthonormal_pair_histogram(F, R.points) == ovoid_invariants(F, O.points).pair_traces);
  }
  return rep;
}

}  // namespace ovoid
