#ifndef OVOID_SL2_HPP
#define OVOID_SL2_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "ovoid/bitset.hpp"
#include "ovoid/field.hpp"

namespace ovoid {

// 2x2 matrix over GF(q), row-major (X1 X2 / X3 X4). Ordering is the
// lexicographic order of the entry encodings.
struct Mat2 {
  std::array<Elem, 4> e{};

  Elem& operator[](std::size_t i) noexcept { return e[i]; }
  Elem operator[](std::size_t i) const noexcept { return e[i]; }
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

// Matrix arithmetic. Everything takes the field explicitly.
namespace mat {

Mat2 make(const Field& F, long long x1, long long x2, long long x3, long long x4);
Mat2 identity(const Field& F);
Mat2 zero(const Field& F);
Mat2 add(const Field& F, const Mat2& X, const Mat2& Y);
Mat2 sub(const Field& F, const Mat2& X, const Mat2& Y);
Mat2 neg(const Field& F, const Mat2& X);
Mat2 scale(const Field& F, Elem k, const Mat2& X);
Mat2 mul(const Field& F, const Mat2& X, const Mat2& Y);
Elem det(const Field& F, const Mat2& X);
Elem trace(const Field& F, const Mat2& X);
// (X4, -X2, -X3, X1)
Mat2 adjoint(const Field& F, const Mat2& X);
// Throws DomainError when det X = 0.
Mat2 inverse(const Field& F, const Mat2& X);
Mat2 frobenius(const Field& F, const Mat2& X, int k);
// Row vector times matrix.
std::array<Elem, 2> apply_row(const Field& F, const std::array<Elem, 2>& u, const Mat2& X);
// Dense code ((e1*q + e2)*q + e3)*q + e4, monotone in the matrix order.
inline std::uint32_t code(const Field& F, const Mat2& X) {
  const auto q = static_cast<std::uint32_t>(F.q());
  return ((X[0].v * q + X[1].v) * q + X[2].v) * q + X[3].v;
}

}  // namespace mat

// All determinant-one matrices in canonical order.
std::vector<Mat2> enumerate_sl2(const Field& F);

// Smallest n >= 1 with X^n = I. X must be invertible.
int element_order(const Field& F, const Mat2& X);

// det(Y - X) == 0. Throws DomainError when X == Y.
bool collinear(const Field& F, const Mat2& X, const Mat2& Y);

// The eight equivalent collinearity tests, in order:
//   0 polar form of the quadric vanishes on the two points
//   1 (1-k)X + kY in SL(2,q) for all k
//   2 (1-k)X + kY in SL(2,q) for some k outside {0,1}
//   3 det(Y - X) = 0
//   4 Tr XY^-1 = Tr Y^-1 X = 2
//   5 Tr YX^-1 = Tr X^-1 Y = 2
//   6 XY^-1 and YX^-1 have order p
//   7 Y^-1 X and X^-1 Y have order p
std::array<bool, 8> collinear_all_criteria(const Field& F, const Mat2& X, const Mat2& Y);

// The q+1 Sylow p-subgroups, i.e. the lines through I, each sorted.
// Ordered by their smallest non-identity element.
std::vector<std::vector<Mat2>> sylow_subgroups(const Field& F);

struct AffineLine {
  Mat2 base;                           // smallest point of the line
  int sylow_index = 0;                 // direction
  std::vector<std::uint32_t> points;   // sorted point indices
};

// Point/line structure of Q*(4,q) with dense point indices. Immutable once
// built; safe to share across threads.
class Sl2Geometry {
 public:
  explicit Sl2Geometry(Field F, bool parallel = true);

  const Field& field() const noexcept { return F_; }
  int q() const noexcept { return F_.q(); }
  std::size_t size() const noexcept { return points_.size(); }

  const std::vector<Mat2>& points() const noexcept { return points_; }
  const Mat2& point(std::size_t i) const noexcept { return points_[i]; }
  std::optional<std::uint32_t> index(const Mat2& X) const;
  // Like index() but throws DomainError for non-members.
  std::uint32_t index_of(const Mat2& X) const;
  std::uint32_t identity_index() const noexcept { return identity_; }

  const std::vector<std::vector<Mat2>>& sylow() const noexcept { return sylow_; }
  const std::vector<AffineLine>& lines() const noexcept { return lines_; }
  const std::vector<std::uint32_t>& lines_through(std::size_t point) const noexcept { return lines_of_point_[point]; }
  // Bit j of row i is set iff points i and j are distinct and collinear.
  const Bitset& adjacency(std::size_t i) const noexcept { return adjacency_[i]; }
  bool adjacent(std::size_t i, std::size_t j) const noexcept { return adjacency_[i].test(j); }

 private:
  Field F_;
  std::vector<Mat2> points_;
  std::vector<std::int32_t> index_of_code_;
  std::uint32_t identity_ = 0;
  std::vector<std::vector<Mat2>> sylow_;
  std::vector<AffineLine> lines_;
  std::vector<std::vector<std::uint32_t>> lines_of_point_;
  std::vector<Bitset> adjacency_;
};

// Left cosets X·S of every Sylow subgroup, deduplicated and sorted by point
// list. Needs the geometry only for indexing.
std::vector<AffineLine> affine_lines(const Sl2Geometry& G);
// Same with right cosets S·X; equal to affine_lines() as a set of point lists.
std::vector<std::vector<std::uint32_t>> right_coset_lines(const Sl2Geometry& G);

// Adjacency kernels: det(P_j - P_i) == 0 for every ordered pair.
std::vector<Bitset> build_adjacency_serial(const Field& F, const std::vector<Mat2>& points);
std::vector<Bitset> build_adjacency_omp(const Field& F, const std::vector<Mat2>& points);

// Sweeps of collinear_all_criteria; return the number of pairs where the
// eight entries disagree. Pairs are unordered i < j.
struct CriteriaSweep {
  std::uint64_t pairs = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t collinear_pairs = 0;
};
CriteriaSweep sweep_criteria_serial(const Field& F, const std::vector<Mat2>& points);
CriteriaSweep sweep_criteria_omp(const Field& F, const std::vector<Mat2>& points);
// `samples` deterministic pseudo-random distinct pairs (fixed-seed mt19937).
CriteriaSweep sweep_criteria_sampled(const Field& F, const std::vector<Mat2>& points, std::uint64_t samples);

}  // namespace ovoid

#endif  // OVOID_SL2_HPP
