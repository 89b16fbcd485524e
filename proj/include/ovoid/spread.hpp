#ifndef OVOID_SPREAD_HPP
#define OVOID_SPREAD_HPP

#include <array>
#include <vector>

#include "ovoid/field.hpp"
#include "ovoid/ovoid.hpp"
#include "ovoid/sl2.hpp"

namespace ovoid {

// Point of PG(3,q), first non-zero coordinate 1.
using Point4 = std::array<Elem, 4>;

// (p01, p02, p03, p23, p31, p12), p_ij = x_i y_j - x_j y_i, projectively
// normalized.
struct PluckerLine {
  std::array<Elem, 6> p{};
  friend auto operator<=>(const PluckerLine&, const PluckerLine&) = default;
};

Point4 normalize4(const Field& F, Point4 x);
PluckerLine plucker(const Field& F, const Point4& x, const Point4& y);
bool plucker_relation_holds(const Field& F, const PluckerLine& L);
// p01 = p23: isotropic for det(x0,x1;y0,y1) - det(x2,x3;y2,y3).
bool is_isotropic(const Field& F, const PluckerLine& L);

// L(X) spans (1,0,X1,X2) and (0,1,X3,X4); gives (1, X3, X4, det X, X2, -X1).
PluckerLine plucker_of_matrix(const Field& F, const Mat2& X);
// The q+1 points of L(X), sorted.
std::vector<Point4> line_points(const Field& F, const Point4& x, const Point4& y);
std::vector<Point4> line_points_of_matrix(const Field& F, const Mat2& X);

// det(X - Y) == 0.
bool lines_intersect(const Field& F, const Mat2& X, const Mat2& Y);

struct SpreadSet {
  std::vector<Mat2> matrices;  // sorted
};

struct SpreadSetCheck {
  bool size_ok = false;          // q^2 matrices
  bool has_zero_and_identity = false;
  bool differences_nonsingular = false;
  bool valid() const { return size_ok && has_zero_and_identity && differences_nonsingular; }
};
SpreadSetCheck check_spread_set(const Field& F, const SpreadSet& C);

// Translates O to contain I (left multiplication by the inverse of its least
// element when I is missing) and adds the zero matrix.
SpreadSet spread_set_from_ovoid(const Field& F, const AffineOvoid& O);

struct SpreadLine {
  PluckerLine plucker;
  std::vector<Point4> points;
};

// L(X) for X in C, in the order of C.
std::vector<SpreadLine> partial_spread(const Field& F, const SpreadSet& C);
// partial_spread plus the line through (0,0,1,0) and (0,0,0,1), last.
std::vector<SpreadLine> complete_spread(const Field& F, const SpreadSet& C);

struct SpreadCoverage {
  std::size_t points_total = 0;  // points of PG(3,q)
  std::size_t covered_once = 0;
  std::size_t uncovered = 0;
  std::size_t overcovered = 0;
  bool partition() const { return covered_once == points_total && uncovered == 0 && overcovered == 0; }
};
SpreadCoverage spread_coverage(const Field& F, const std::vector<SpreadLine>& lines);

}  // namespace ovoid

#endif  // OVOID_SPREAD_HPP
