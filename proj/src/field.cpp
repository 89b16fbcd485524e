#include "ovoid/field.hpp"

#include <string>

#include "ovoid/errors.hpp"

namespace ovoid {

namespace {

using Poly = std::vector<int>;  // low degree first

int mod_p(long long x, int p) {
  long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void strip(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over GF(p).
Poly poly_rem(Poly a, const Poly& m, int p) {
  strip(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod_p(a[shift + i] - static_cast<long long>(lead) * m[i], p);
    strip(a);
  }
  return a;
}

Poly decode(int code, int p, int h) {
  Poly c(static_cast<std::size_t>(h), 0);
  for (int i = 0; i < h; ++i) {
    c[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return c;
}

int encode(const Poly& c, int p) {
  int code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

}  // namespace

bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool prime_power(int q, int& p, int& h) noexcept {
  if (q < 2) return false;
  int d = 2;
  while (q % d != 0) ++d;
  int n = q, k = 0;
  while (n % d == 0) {
    n /= d;
    ++k;
  }
  if (n != 1) return false;
  p = d;
  h = k;
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  Poly f = poly;
  strip(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1 || f.back() != 1) return false;
  if (deg == 1) return true;
  for (int d = 1; d <= deg / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly g = decode(low, p, d);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field Field::make(int q) {
  int p = 0, h = 0;
  if (!prime_power(q, p, h)) throw UnsupportedError("q = " + std::to_string(q) + " is not a prime power");
  if (p == 2) throw UnsupportedError("characteristic 2 is not supported");
  FieldSpec spec{p, h, {}};
  if (h > 1) {
    if (q == 9) {
      spec.modulus = {1, 0, 1};
    } else {
      int count = 1;
      for (int i = 0; i < h; ++i) count *= p;
      for (int low = 0; low < count; ++low) {
        Poly m = decode(low, p, h);
        m.push_back(1);
        if (is_irreducible(p, m)) {
          spec.modulus = m;
          break;
        }
      }
    }
  }
  return Field(spec);
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
  if (!is_prime(spec.p) || spec.p == 2) throw UnsupportedError("characteristic must be an odd prime");
  if (spec.h < 1) throw UnsupportedError("extension degree must be at least 1");
  const int p = spec.p, h = spec.h;
  q_ = 1;
  for (int i = 0; i < h; ++i) q_ *= p;
  if (q_ > 4096) throw UnsupportedError("field too large for table arithmetic");
  if (h > 1) {
    if (static_cast<int>(spec.modulus.size()) != h + 1 || !is_irreducible(p, spec.modulus))
      throw DomainError("modulus is not a monic irreducible polynomial of degree h");
  } else {
    spec_.modulus.clear();
  }

  auto t = std::make_shared<Tables>();
  const auto qs = static_cast<std::size_t>(q_);
  t->add.resize(qs * qs);
  t->mul.resize(qs * qs);
  t->neg.resize(qs);
  t->inv.assign(qs, 0);
  t->square.assign(qs, 0);
  t->sqrt.assign(qs, -1);

  std::vector<Poly> polys(qs);
  for (int a = 0; a < q_; ++a) polys[static_cast<std::size_t>(a)] = decode(a, p, h);

  for (int a = 0; a < q_; ++a) {
    const Poly& pa = polys[static_cast<std::size_t>(a)];
    Poly n(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) n[i] = mod_p(-pa[i], p);
    t->neg[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(encode(n, p));
    for (int b = 0; b < q_; ++b) {
      const Poly& pb = polys[static_cast<std::size_t>(b)];
      Poly s(static_cast<std::size_t>(h));
      for (int i = 0; i < h; ++i) s[static_cast<std::size_t>(i)] = (pa[static_cast<std::size_t>(i)] + pb[static_cast<std::size_t>(i)]) % p;
      t->add[static_cast<std::size_t>(a) * qs + static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(encode(s, p));

      Poly prod(static_cast<std::size_t>(2 * h - 1), 0);
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
          prod[static_cast<std::size_t>(i + j)] =
              (prod[static_cast<std::size_t>(i + j)] + pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)]) % p;
      if (h > 1) prod = poly_rem(prod, spec_.modulus, p);
      prod.resize(static_cast<std::size_t>(h), 0);
      t->mul[static_cast<std::size_t>(a) * qs + static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(encode(prod, p));
    }
  }

  for (std::size_t a = 1; a < qs; ++a)
    for (std::size_t b = 1; b < qs; ++b)
      if (t->mul[a * qs + b] == 1) t->inv[a] = static_cast<std::uint16_t>(b);

  // Ascending a, so the first root recorded is the smallest.
  for (std::size_t a = 0; a < qs; ++a) {
    const std::size_t sq = t->mul[a * qs + a];
    t->square[sq] = 1;
    if (t->sqrt[sq] < 0) t->sqrt[sq] = static_cast<std::int32_t>(a);
  }
  for (std::size_t a = 1; a < qs; ++a)
    if (!t->square[a]) {
      t->nonsquare = static_cast<std::uint16_t>(a);
      break;
    }
  tab_ = std::move(t);
}

Elem Field::from_int(long long n) const noexcept { return Elem{static_cast<std::uint16_t>(mod_p(n, spec_.p))}; }

Elem Field::from_code(int code) const {
  if (code < 0 || code >= q_) throw DomainError("field element code " + std::to_string(code) + " out of range");
  return Elem{static_cast<std::uint16_t>(code)};
}

std::vector<int> Field::coeffs(Elem a) const { return decode(a.v, spec_.p, spec_.h); }

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  return Elem{tab_->inv[a.v]};
}

Elem Field::pow(Elem a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, int k) const {
  k %= spec_.h;
  if (k < 0) k += spec_.h;
  for (int i = 0; i < k; ++i) a = pow(a, spec_.p);
  return a;
}

Elem Field::sqrt(Elem a) const {
  const int r = tab_->sqrt[a.v];
  if (r < 0) throw DomainError("square root of a non-square");
  return Elem{static_cast<std::uint16_t>(r)};
}

int Field::discriminant(Elem t) const noexcept {
  const Elem d = sub(mul(t, t), from_int(4));
  if (d.is_zero()) return 0;
  return is_square(d) ? 1 : -1;
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out;
  out.reserve(static_cast<std::size_t>(q_));
  for (int a = 0; a < q_; ++a) out.emplace_back(static_cast<std::uint16_t>(a));
  return out;
}

}  // namespace ovoid
