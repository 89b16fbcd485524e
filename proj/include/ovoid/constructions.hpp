#ifndef OVOID_CONSTRUCTIONS_HPP
#define OVOID_CONSTRUCTIONS_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ovoid/field.hpp"
#include "ovoid/ovoid.hpp"
#include "ovoid/sl2.hpp"

namespace ovoid {

// Group multiplication on the dense point indices of an Sl2Geometry.
class MulTable {
 public:
  explicit MulTable(const Sl2Geometry& G);

  std::size_t size() const noexcept { return n_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return table_[a * n_ + b]; }
  std::uint32_t inv(std::uint32_t a) const noexcept { return inverse_[a]; }
  std::uint32_t identity() const noexcept { return identity_; }
  int order(std::uint32_t a) const noexcept { return order_[a]; }

 private:
  std::size_t n_;
  std::uint32_t identity_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<int> order_;
};

// Subgroups of SL(2,q) of order n, one per SL(2,q)-conjugacy class. Each is
// the least conjugate (as a sorted index list); the list is sorted.
// Exhaustive: every subgroup is reached through a chain of one-element
// extensions whose orders divide n.
std::vector<std::vector<Mat2>> find_subgroups_of_order(const Sl2Geometry& G, std::size_t n);

// First subgroup of order q^2-1 as an ovoid. Throws UnsupportedError unless
// q is 3, 5, 7 or 11.
AffineOvoid subgroup_ovoid(const Sl2Geometry& G);

// X·O. Throws DomainError when det X != 1.
AffineOvoid coset_ovoid(const Field& F, const AffineOvoid& O, const Mat2& X);

// --- root systems -------------------------------------------------------

struct Rational {
  long long num = 0, den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);
  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num, den); }
  bool is_zero() const { return num == 0; }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

// a + b*sqrt(d), d square-free; d = 1 means plain rationals (b unused).
struct QuadNum {
  Rational a, b;
  int d = 1;

  static QuadNum rational(Rational r, int d = 1) { return {r, Rational(0), d}; }
  friend QuadNum operator+(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y);
  QuadNum inverse() const;
  QuadNum operator-() const { return {-a, -b, d}; }
  friend bool operator==(const QuadNum& x, const QuadNum& y) { return x.a == y.a && x.b == y.b; }
  friend auto operator<=>(const QuadNum& x, const QuadNum& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
  std::string str() const;
};

enum class RootName { K8, K24, K24P, K48, K120 };
const char* root_name(RootName n) noexcept;
// Accepts K8, K24, K24P (or K24'), K48, K120. Throws DomainError.
RootName parse_root_name(const std::string& s);
// The field order the set is designed for: 3, 5, 7, 7, 11.
int root_target_q(RootName n) noexcept;

struct RootSystem {
  RootName name;
  int d = 1;  // quadratic field Q(sqrt d) holding the coordinates
  std::vector<std::array<QuadNum, 4>> vectors;
};

struct ReducedRootSystem {
  RootName name;
  std::vector<std::array<Elem, 4>> vectors;
};

RootSystem root_system(RootName name);
// Reduction with 1/2 = (p+1)/2, sqrt(d) = canonical root. Throws DomainError
// when sqrt(d) does not exist in the field or a denominator vanishes.
ReducedRootSystem reduce(const RootSystem& R, const Field& F);
Elem reduce(const QuadNum& x, const Field& F);
// Distinct values of <v, w> over v != w, sorted.
std::vector<QuadNum> inner_product_values(const RootSystem& R);
// Orthonormal-model point set {(1, v)}.
AffineOvoid root_ovoid(RootName name, const Field& F);

}  // namespace ovoid

#endif  // OVOID_CONSTRUCTIONS_HPP
