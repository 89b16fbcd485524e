#ifndef OVOID_OVOID_HPP
#define OVOID_OVOID_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ovoid/field.hpp"
#include "ovoid/quadric.hpp"
#include "ovoid/sl2.hpp"

namespace ovoid {

// Set of affine points of Q(4,q). In the matrix model each point is the
// SL(2,q) element (X1 X2 / X3 X4); in the orthonormal model the four
// entries are the coordinates (X1..X4) of the point (1, X1, .., X4).
struct AffineOvoid {
  Model model = Model::Matrix;
  std::vector<Mat2> points;

  void sort() { std::sort(points.begin(), points.end()); }
};

struct VerifyReport {
  bool points_valid = true;  // all on the quadric, affine, no repeats
  bool is_partial_ovoid = false;
  bool is_affine_ovoid = false;
  std::size_t size = 0;
  // (i, j) with j > i: point j is collinear with the earlier kept point i.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  std::vector<std::string> diagnostics;
};

// Pairwise non-collinearity check. Each point is compared against the
// earlier points that were not themselves flagged, so a full line of q
// points yields q-1 violations.
VerifyReport verify(const Field& F, Model model, const std::vector<Mat2>& points);
// Same for projective input; points in X0 = 0 are rejected.
VerifyReport verify_projective(const Field& F, Model model, const std::vector<ProjectivePoint5>& points);
inline VerifyReport verify(const Field& F, const AffineOvoid& O) { return verify(F, O.model, O.points); }

// Exactly one X in S with uX = v for all non-zero u, v in GF(q)^2.
bool is_sharply_transitive(const Field& F, const std::vector<Mat2>& S);

// counts[t.code()] = number of points with trace t.
std::vector<std::size_t> trace_statistics(const Field& F, const std::vector<Mat2>& points);

// Trace counts an affine ovoid must have: q+1 points of every trace t
// with t^2-4 a non-zero square; for t = 2 (resp. -2) either I (resp. -I)
// alone or q+1 other points.
bool trace_counts_consistent(const Field& F, const std::vector<Mat2>& points);

struct AntipodalPairing {
  bool paired = false;
  std::size_t pairs = 0;
  std::vector<Mat2> unpaired;
};
AntipodalPairing antipodal_pairing(const Field& F, const std::vector<Mat2>& points);

// X -> M X^sigma N^-1, or M (X^-1)^sigma N^-1 when `invert`.
// sigma = Frobenius^frobenius_power.
struct Automorphism {
  Mat2 M, N;
  int frobenius_power = 0;
  bool invert = false;

  static Automorphism identity(const Field& F);
  Mat2 apply(const Field& F, const Mat2& X) const;
};

// Throws DomainError when det M != det N.
AffineOvoid apply_automorphism(const Field& F, const Automorphism& a, const AffineOvoid& O);

// Number of points of O collinear with P. Throws DomainError when P is in O
// or not in SL(2,q).
std::size_t collinear_count_from_outside(const Field& F, const std::vector<Mat2>& O, const Mat2& P);

// GL(2,q) matrices normalized so the first non-zero entry is 1: one
// representative per scalar class.
std::vector<Mat2> pgl2_representatives(const Field& F);

// Lexicographically least sorted index list over all images of `points`
// under the maps X -> M X^s N^-1, M (X^-1)^s N^-1 (det M = det N).
std::vector<std::uint32_t> canonical_form(const Sl2Geometry& G, const std::vector<Mat2>& points);

// Invariants of the same group, cheap to compute: histogram of
// Tr(X Y^-1) over ordered pairs X != Y (least over Frobenius images) and the
// number of antipodal pairs.
struct OvoidInvariants {
  std::vector<std::size_t> pair_traces;
  std::size_t antipodal_pairs = 0;
  friend auto operator<=>(const OvoidInvariants&, const OvoidInvariants&) = default;
};
OvoidInvariants ovoid_invariants(const Field& F, const std::vector<Mat2>& points);
// Orthonormal-model counterpart: histogram of 2<v,w> over ordered pairs.
std::vector<std::size_t> orthonormal_pair_histogram(const Field& F, const std::vector<Mat2>& points);

// Affine quadric points outside `points` that are collinear with none of
// them. Zero means the set is maximal. Enumerates every affine point of the
// model.
std::size_t extendable_points(const Field& F, Model model, const std::vector<Mat2>& points);

// Incidence tally of a matrix-model point set against every quadric line.
// Lines inside X0 = 0 carry no affine point, so for an affine ovoid they are
// the only uncovered lines.
struct LineCoverage {
  std::size_t affine_lines = 0;
  std::size_t affine_covered_once = 0;
  std::size_t affine_uncovered = 0;
  std::size_t affine_overcovered = 0;
  std::size_t infinity_lines = 0;
};
LineCoverage line_coverage(const Sl2Geometry& G, const std::vector<Mat2>& points);

}  // namespace ovoid

#endif  // OVOID_OVOID_HPP
