#include <algorithm>
#include <numeric>
#include <set>

#include "ovoid/constructions.hpp"
#include "ovoid/errors.hpp"

namespace ovoid {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DomainError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

Rational operator+(Rational a, Rational b) { return Rational(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
Rational operator/(Rational a, Rational b) {
  if (b.num == 0) throw DomainError("division by zero");
  return Rational(a.num * b.den, a.den * b.num);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) { return a.num * b.den <=> b.num * a.den; }

QuadNum operator+(const QuadNum& x, const QuadNum& y) { return {x.a + y.a, x.b + y.b, std::max(x.d, y.d)}; }
QuadNum operator-(const QuadNum& x, const QuadNum& y) { return {x.a - y.a, x.b - y.b, std::max(x.d, y.d)}; }
QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  const int d = std::max(x.d, y.d);
  return {x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a, d};
}

QuadNum QuadNum::inverse() const {
  const Rational norm = a * a - b * b * Rational(d);
  if (norm.is_zero()) throw DomainError("inverse of zero");
  return {a / norm, -b / norm, d};
}

std::string QuadNum::str() const {
  auto r = [](Rational x) { return x.den == 1 ? std::to_string(x.num) : std::to_string(x.num) + "/" + std::to_string(x.den); };
  if (b.is_zero()) return r(a);
  return r(a) + (b.num < 0 ? " - " : " + ") + r(b.num < 0 ? -b : b) + "*sqrt" + std::to_string(d);
}

const char* root_name(RootName n) noexcept {
  switch (n) {
    case RootName::K8: return "K8";
    case RootName::K24: return "K24";
    case RootName::K24P: return "K24P";
    case RootName::K48: return "K48";
    case RootName::K120: return "K120";
  }
  return "?";
}

RootName parse_root_name(const std::string& s) {
  if (s == "K8") return RootName::K8;
  if (s == "K24") return RootName::K24;
  if (s == "K24P" || s == "K24'") return RootName::K24P;
  if (s == "K48") return RootName::K48;
  if (s == "K120") return RootName::K120;
  throw DomainError("unknown root system '" + s + "'");
}

int root_target_q(RootName n) noexcept {
  switch (n) {
    case RootName::K8: return 3;
    case RootName::K24: return 5;
    case RootName::K24P:
    case RootName::K48: return 7;
    case RootName::K120: return 11;
  }
  return 0;
}

namespace {

using Vec = std::array<QuadNum, 4>;

QuadNum rat(long long n, long long d, int field) { return QuadNum::rational(Rational(n, d), field); }

void add_k8(std::vector<Vec>& out, int d) {
  for (int i = 0; i < 4; ++i)
    for (int s : {1, -1}) {
      Vec v{rat(0, 1, d), rat(0, 1, d), rat(0, 1, d), rat(0, 1, d)};
      v[static_cast<std::size_t>(i)] = rat(s, 1, d);
      out.push_back(v);
    }
}

void add_halves(std::vector<Vec>& out, int d) {
  for (int mask = 0; mask < 16; ++mask) {
    Vec v;
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = rat((mask >> i) & 1 ? -1 : 1, 2, d);
    out.push_back(v);
  }
}

// (1/sqrt2)(+-1, +-1) on every pair of coordinates.
void add_k24p(std::vector<Vec>& out) {
  const QuadNum c{Rational(0), Rational(1, 2), 2};  // 1/sqrt2 = sqrt2/2
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          Vec v{rat(0, 1, 2), rat(0, 1, 2), rat(0, 1, 2), rat(0, 1, 2)};
          v[static_cast<std::size_t>(i)] = si == 1 ? c : -c;
          v[static_cast<std::size_t>(j)] = sj == 1 ? c : -c;
          out.push_back(v);
        }
}

// 1/2 (+-1, +-phi, +-1/phi, 0) under the even permutations of the coordinates.
void add_snub(std::vector<Vec>& out) {
  const QuadNum half_one = rat(1, 2, 5);
  const QuadNum half_phi{Rational(1, 4), Rational(1, 4), 5};       // phi/2
  const QuadNum half_inv_phi{Rational(-1, 4), Rational(1, 4), 5};  // 1/(2 phi)
  const Vec base{half_one, half_phi, half_inv_phi, rat(0, 1, 5)};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    if (inversions % 2) continue;
    for (int signs = 0; signs < 8; ++signs) {
      Vec v;
      for (int i = 0; i < 4; ++i) {
        QuadNum x = base[static_cast<std::size_t>(i)];
        if (i < 3 && ((signs >> i) & 1)) x = -x;
        v[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = x;
      }
      out.push_back(v);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

QuadNum dot(const Vec& v, const Vec& w) {
  QuadNum s = QuadNum::rational(Rational(0), v[0].d);
  for (std::size_t i = 0; i < 4; ++i) s = s + v[i] * w[i];
  return s;
}

}  // namespace

RootSystem root_system(RootName name) {
  RootSystem R{name, 1, {}};
  switch (name) {
    case RootName::K8:
      add_k8(R.vectors, 1);
      break;
    case RootName::K24:
      add_k8(R.vectors, 1);
      add_halves(R.vectors, 1);
      break;
    case RootName::K24P:
      R.d = 2;
      add_k24p(R.vectors);
      break;
    case RootName::K48:
      R.d = 2;
      add_k8(R.vectors, 2);
      add_halves(R.vectors, 2);
      add_k24p(R.vectors);
      break;
    case RootName::K120:
      R.d = 5;
      add_k8(R.vectors, 5);
      add_halves(R.vectors, 5);
      add_snub(R.vectors);
      break;
  }
  return R;
}

Elem reduce(const QuadNum& x, const Field& F) {
  auto red = [&](Rational r) {
    const Elem den = F.from_int(r.den);
    if (den.is_zero()) throw DomainError("denominator vanishes in GF(" + std::to_string(F.q()) + ")");
    return F.div(F.from_int(r.num), den);
  };
  Elem v = red(x.a);
  if (!x.b.is_zero()) {
    const Elem d = F.from_int(x.d);
    if (!F.is_square(d))
      throw DomainError(std::to_string(x.d) + " is not a square in GF(" + std::to_string(F.q()) + ")");
    v = F.add(v, F.mul(red(x.b), F.sqrt(d)));
  }
  return v;
}

ReducedRootSystem reduce(const RootSystem& R, const Field& F) {
  if (R.d > 1 && !F.is_square(F.from_int(R.d)))
    throw DomainError(std::to_string(R.d) + " is not a square in GF(" + std::to_string(F.q()) + ")");
  ReducedRootSystem out{R.name, {}};
  for (const auto& v : R.vectors) {
    std::array<Elem, 4> w;
    for (std::size_t i = 0; i < 4; ++i) w[i] = reduce(v[i], F);
    out.vectors.push_back(w);
  }
  return out;
}

std::vector<QuadNum> inner_product_values(const RootSystem& R) {
  std::set<QuadNum> values;
  for (std::size_t i = 0; i < R.vectors.size(); ++i)
    for (std::size_t j = 0; j < R.vectors.size(); ++j)
      if (i != j) {
        QuadNum v = dot(R.vectors[i], R.vectors[j]);
        v.d = R.d;
        values.insert(v);
      }
  return {values.begin(), values.end()};
}

AffineOvoid root_ovoid(RootName name, const Field& F) {
  const auto reduced = reduce(root_system(name), F);
  AffineOvoid O{Model::Orthonormal, {}};
  for (const auto& v : reduced.vectors) O.points.push_back(Mat2{v});
  O.sort();
  return O;
}

}  // namespace ovoid
