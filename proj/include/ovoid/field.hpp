#ifndef OVOID_FIELD_HPP
#define OVOID_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace ovoid {

// Element of GF(p^h), stored as its integer encoding
//   e(a) = sum_i coeffs[i] * p^i
// which is also the sort key and the serialized form.
struct Elem {
  std::uint16_t v = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint16_t code) : v(code) {}

  constexpr bool is_zero() const noexcept { return v == 0; }
  constexpr int code() const noexcept { return v; }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

// Description of a finite field of odd characteristic.
struct FieldSpec {
  int p = 0;
  int h = 0;
  // Monic irreducible polynomial of degree h, low degree first (length h+1).
  // Empty when h == 1.
  std::vector<int> modulus;
};

// GF(q), q = p^h with p an odd prime. All arithmetic goes through
// precomputed tables; copies share the tables and are cheap.
class Field {
 public:
  // Field of order q with the fixed default modulus (x^2+1 for q = 9, the
  // smallest irreducible polynomial by coefficient encoding otherwise).
  static Field make(int q);
  explicit Field(const FieldSpec& spec);

  int p() const noexcept { return spec_.p; }
  int h() const noexcept { return spec_.h; }
  int q() const noexcept { return q_; }
  const FieldSpec& spec() const noexcept { return spec_; }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  // Image of an integer in the prime subfield.
  Elem from_int(long long n) const noexcept;
  // Element with encoding `code`; throws DomainError when out of range.
  Elem from_code(int code) const;
  std::vector<int> coeffs(Elem a) const;

  Elem add(Elem a, Elem b) const noexcept { return Elem{tab_->add[a.v * q_ + b.v]}; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem neg(Elem a) const noexcept { return Elem{tab_->neg[a.v]}; }
  Elem mul(Elem a, Elem b) const noexcept { return Elem{tab_->mul[a.v * q_ + b.v]}; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long e) const;
  // a -> a^(p^k)
  Elem frobenius(Elem a, int k) const;

  bool is_square(Elem a) const noexcept { return tab_->square[a.v] != 0; }
  // Root of smallest encoding; throws DomainError on non-squares.
  Elem sqrt(Elem a) const;
  // Smallest non-square.
  Elem nonsquare() const noexcept { return Elem{tab_->nonsquare}; }
  // Sign class of t^2 - 4: -1 non-square, 0 zero, +1 non-zero square.
  int discriminant(Elem t) const noexcept;

  // All elements in encoding order.
  std::vector<Elem> elements() const;

 private:
  struct Tables {
    std::vector<std::uint16_t> add, mul, neg, inv;
    std::vector<std::uint8_t> square;
    std::vector<std::int32_t> sqrt;  // -1 for non-squares
    std::uint16_t nonsquare = 0;
  };

  FieldSpec spec_;
  int q_ = 0;
  std::shared_ptr<const Tables> tab_;
};

bool is_prime(int n) noexcept;
// Writes q = p^h with p prime; returns false when q is not a prime power.
bool prime_power(int q, int& p, int& h) noexcept;
// Exhaustive factor check over GF(p). `poly` low degree first, monic.
bool is_irreducible(int p, const std::vector<int>& poly);

}  // namespace ovoid

#endif  // OVOID_FIELD_HPP
