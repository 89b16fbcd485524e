#ifndef OVOID_SEARCH_HPP
#define OVOID_SEARCH_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ovoid/bitset.hpp"
#include "ovoid/field.hpp"
#include "ovoid/ovoid.hpp"
#include "ovoid/sl2.hpp"

namespace ovoid {

// Exact-cover form of the affine ovoid problem: pick q^2-1 points so that
// every affine line holds exactly one of them.
struct SearchProblem {
  std::shared_ptr<const Sl2Geometry> geometry;
  std::vector<std::vector<std::uint32_t>> line_points;   // q points each
  std::vector<std::vector<std::uint32_t>> point_lines;   // q+1 lines each
  std::vector<std::vector<std::uint32_t>> neighbours;    // collinear points
  std::vector<Bitset> incidence;                         // per point, over lines

  int q() const { return geometry->q(); }
  std::size_t num_points() const { return point_lines.size(); }
  std::size_t num_lines() const { return line_points.size(); }
  std::size_t target() const { return static_cast<std::size_t>(q() * q() - 1); }
};

// Throws UnsupportedError for even q, q < 3 or q above `max_q`.
SearchProblem build_problem(const Field& F, int max_q = 13);
SearchProblem build_problem(std::shared_ptr<const Sl2Geometry> G);

enum class Symmetry {
  None,              // raw search
  Identity,          // I in O
  IdentityAndTrace,  // I and a fixed matrix of hyperbolic trace in O
  Auto,              // strongest available for q
};
const char* symmetry_name(Symmetry s) noexcept;

struct SearchOptions {
  Symmetry symmetry = Symmetry::Auto;
  bool classify = false;
  int jobs = 1;
  std::uint64_t solution_limit = 0;  // 0 = unlimited
  std::uint64_t node_limit = 0;      // 0 = unlimited
  double time_limit_seconds = 0;     // 0 = unlimited
  const std::atomic<bool>* cancel = nullptr;
  // Resumable frontier; empty = no checkpointing.
  std::string checkpoint_path;
};

struct SearchStats {
  std::uint64_t nodes = 0;       // points placed
  std::uint64_t dead_ends = 0;   // uncovered line with no candidate left
  std::uint64_t tasks = 0;
  std::uint64_t tasks_completed = 0;
  std::uint64_t tasks_resumed = 0;
  double wall_seconds = 0;
};

struct SearchResult {
  int q = 0;
  Symmetry symmetry = Symmetry::None;
  std::vector<std::uint32_t> fixed_points;
  // Sorted point-index lists, sorted.
  std::vector<std::vector<std::uint32_t>> solutions;
  // Canonical forms (classify only), sorted, with the number of solutions in
  // each class.
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<std::size_t> class_sizes;
  bool complete = true;
  std::string incomplete_reason;
  SearchStats stats;
};

// The symmetry actually used for `requested` at this q, and the fixed
// points it implies.
Symmetry resolve_symmetry(const SearchProblem& P, Symmetry requested);
std::vector<std::uint32_t> fixed_points(const SearchProblem& P, Symmetry s);

// Exact-cover search, most-constrained line first, split into subtrees at
// the first branching level. Output is independent of `jobs`.
SearchResult search_all(const SearchProblem& P, const SearchOptions& opt = {});

// Unpruned reference: enumerates every set of q^2-1 pairwise non-collinear
// points by plain backtracking over point indices. Only sensible for q = 3.
std::vector<std::vector<std::uint32_t>> search_bruteforce(const SearchProblem& P);

// Fills result.classes / class_sizes from result.solutions.
void classify(const SearchProblem& P, SearchResult& result);

struct KnownCheck {
  std::string name;
  bool ok = false;
};
struct KnownReport {
  int q = 0;
  std::size_t subgroup_size = 0;
  std::string root_system;  // empty when none applies
  std::vector<KnownCheck> checks;
  bool all_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};
// Builds the subgroup ovoid and the matching root-system ovoid and checks
// their invariants without searching. q in {3, 5, 7, 11}.
KnownReport verify_known(const Sl2Geometry& G);

}  // namespace ovoid

#endif  // OVOID_SEARCH_HPP
