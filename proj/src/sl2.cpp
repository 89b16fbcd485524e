#include "ovoid/sl2.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ovoid/errors.hpp"

namespace ovoid {

namespace mat {

Mat2 make(const Field& F, long long x1, long long x2, long long x3, long long x4) {
  return Mat2{{F.from_int(x1), F.from_int(x2), F.from_int(x3), F.from_int(x4)}};
}

Mat2 identity(const Field& F) { return Mat2{{F.one(), F.zero(), F.zero(), F.one()}}; }
Mat2 zero(const Field& F) { return Mat2{{F.zero(), F.zero(), F.zero(), F.zero()}}; }

Mat2 add(const Field& F, const Mat2& X, const Mat2& Y) {
  return Mat2{{F.add(X[0], Y[0]), F.add(X[1], Y[1]), F.add(X[2], Y[2]), F.add(X[3], Y[3])}};
}

Mat2 sub(const Field& F, const Mat2& X, const Mat2& Y) {
  return Mat2{{F.sub(X[0], Y[0]), F.sub(X[1], Y[1]), F.sub(X[2], Y[2]), F.sub(X[3], Y[3])}};
}

Mat2 neg(const Field& F, const Mat2& X) { return Mat2{{F.neg(X[0]), F.neg(X[1]), F.neg(X[2]), F.neg(X[3])}}; }

Mat2 scale(const Field& F, Elem k, const Mat2& X) {
  return Mat2{{F.mul(k, X[0]), F.mul(k, X[1]), F.mul(k, X[2]), F.mul(k, X[3])}};
}

Mat2 mul(const Field& F, const Mat2& X, const Mat2& Y) {
  return Mat2{{F.add(F.mul(X[0], Y[0]), F.mul(X[1], Y[2])), F.add(F.mul(X[0], Y[1]), F.mul(X[1], Y[3])),
               F.add(F.mul(X[2], Y[0]), F.mul(X[3], Y[2])), F.add(F.mul(X[2], Y[1]), F.mul(X[3], Y[3]))}};
}

Elem det(const Field& F, const Mat2& X) { return F.sub(F.mul(X[0], X[3]), F.mul(X[1], X[2])); }
Elem trace(const Field& F, const Mat2& X) { return F.add(X[0], X[3]); }

Mat2 adjoint(const Field& F, const Mat2& X) { return Mat2{{X[3], F.neg(X[1]), F.neg(X[2]), X[0]}}; }

Mat2 inverse(const Field& F, const Mat2& X) {
  const Elem d = det(F, X);
  if (d.is_zero()) throw DomainError("inverse of a singular matrix");
  return scale(F, F.inv(d), adjoint(F, X));
}

Mat2 frobenius(const Field& F, const Mat2& X, int k) {
  return Mat2{{F.frobenius(X[0], k), F.frobenius(X[1], k), F.frobenius(X[2], k), F.frobenius(X[3], k)}};
}

std::array<Elem, 2> apply_row(const Field& F, const std::array<Elem, 2>& u, const Mat2& X) {
  return {F.add(F.mul(u[0], X[0]), F.mul(u[1], X[2])), F.add(F.mul(u[0], X[1]), F.mul(u[1], X[3]))};
}

}  // namespace mat

std::vector<Mat2> enumerate_sl2(const Field& F) {
  const auto elems = F.elements();
  std::vector<Mat2> out;
  out.reserve(static_cast<std::size_t>(F.q()) * static_cast<std::size_t>(F.q() * F.q() - 1));
  // Nested in entry order, so the output is already sorted.
  for (Elem a : elems)
    for (Elem b : elems)
      for (Elem c : elems)
        for (Elem d : elems) {
          Mat2 X{{a, b, c, d}};
          if (mat::det(F, X) == F.one()) out.push_back(X);
        }
  return out;
}

int element_order(const Field& F, const Mat2& X) {
  if (mat::det(F, X).is_zero()) throw DomainError("element_order of a singular matrix");
  const Mat2 I = mat::identity(F);
  Mat2 power = X;
  const long long bound = static_cast<long long>(F.q()) * F.q() * F.q() * F.q();
  for (long long n = 1; n <= bound; ++n) {
    if (power == I) return static_cast<int>(n);
    power = mat::mul(F, power, X);
  }
  throw DomainError("element order exceeds the group bound");
}

bool collinear(const Field& F, const Mat2& X, const Mat2& Y) {
  if (X == Y) throw DomainError("collinearity is defined on distinct points");
  return mat::det(F, mat::sub(F, Y, X)).is_zero();
}

std::array<bool, 8> collinear_all_criteria(const Field& F, const Mat2& X, const Mat2& Y) {
  if (X == Y) throw DomainError("collinearity is defined on distinct points");
  std::array<bool, 8> r{};
  const Elem one = F.one(), two = F.from_int(2);

  // Polar form of X0^2 - X1X4 + X2X3 at (1,X) and (1,Y).
  const Elem half = F.inv(two);
  Elem polar = one;
  polar = F.sub(polar, F.mul(half, F.add(F.mul(X[0], Y[3]), F.mul(X[3], Y[0]))));
  polar = F.add(polar, F.mul(half, F.add(F.mul(X[1], Y[2]), F.mul(X[2], Y[1]))));
  r[0] = polar.is_zero();

  bool all_k = true, some_k = false;
  for (Elem k : F.elements()) {
    const Mat2 Z = mat::add(F, mat::scale(F, F.sub(one, k), X), mat::scale(F, k, Y));
    const bool in_sl = mat::det(F, Z) == one;
    all_k = all_k && in_sl;
    if (k != F.zero() && k != one && in_sl) some_k = true;
  }
  r[1] = all_k;
  r[2] = some_k;
  r[3] = mat::det(F, mat::sub(F, Y, X)).is_zero();

  const Mat2 Xi = mat::inverse(F, X), Yi = mat::inverse(F, Y);
  const Mat2 XYi = mat::mul(F, X, Yi), YiX = mat::mul(F, Yi, X);
  const Mat2 YXi = mat::mul(F, Y, Xi), XiY = mat::mul(F, Xi, Y);
  r[4] = mat::trace(F, XYi) == two && mat::trace(F, YiX) == two;
  r[5] = mat::trace(F, YXi) == two && mat::trace(F, XiY) == two;
  r[6] = element_order(F, XYi) == F.p() && element_order(F, YXi) == F.p();
  r[7] = element_order(F, YiX) == F.p() && element_order(F, XiY) == F.p();
  return r;
}

std::vector<std::vector<Mat2>> sylow_subgroups(const Field& F) {
  const Mat2 I = mat::identity(F);
  const Elem two = F.from_int(2);
  std::vector<std::vector<Mat2>> out;
  for (const Mat2& X : enumerate_sl2(F)) {
    if (X == I || mat::trace(F, X) != two) continue;
    std::vector<Mat2> line;
    for (Elem k : F.elements()) line.push_back(mat::add(F, mat::scale(F, F.sub(F.one(), k), I), mat::scale(F, k, X)));
    std::sort(line.begin(), line.end());
    if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(std::move(line));
  }
  // Enumeration is ascending, so out is already ordered by smallest
  // non-identity element.
  return out;
}

Sl2Geometry::Sl2Geometry(Field F, bool parallel) : F_(std::move(F)) {
  points_ = enumerate_sl2(F_);
  const auto q = static_cast<std::size_t>(F_.q());
  index_of_code_.assign(q * q * q * q, -1);
  for (std::size_t i = 0; i < points_.size(); ++i) index_of_code_[mat::code(F_, points_[i])] = static_cast<std::int32_t>(i);
  identity_ = index_of(mat::identity(F_));
  sylow_ = sylow_subgroups(F_);
  lines_ = affine_lines(*this);
  lines_of_point_.assign(points_.size(), {});
  for (std::size_t l = 0; l < lines_.size(); ++l)
    for (auto pt : lines_[l].points) lines_of_point_[pt].push_back(static_cast<std::uint32_t>(l));
  adjacency_ = parallel ? build_adjacency_omp(F_, points_) : build_adjacency_serial(F_, points_);
}

std::optional<std::uint32_t> Sl2Geometry::index(const Mat2& X) const {
  const std::int32_t i = index_of_code_[mat::code(F_, X)];
  if (i < 0) return std::nullopt;
  return static_cast<std::uint32_t>(i);
}

std::uint32_t Sl2Geometry::index_of(const Mat2& X) const {
  auto i = index(X);
  if (!i) throw DomainError("matrix is not in SL(2," + std::to_string(F_.q()) + ")");
  return *i;
}

std::vector<AffineLine> affine_lines(const Sl2Geometry& G) {
  const Field& F = G.field();
  std::vector<AffineLine> out;
  for (std::uint32_t base = 0; base < G.size(); ++base) {
    const Mat2& X = G.point(base);
    for (std::size_t s = 0; s < G.sylow().size(); ++s) {
      AffineLine line{X, static_cast<int>(s), {}};
      bool is_min = true;
      for (const Mat2& U : G.sylow()[s]) {
        const std::uint32_t idx = G.index_of(mat::mul(F, X, U));
        if (idx < base) {
          is_min = false;
          break;
        }
        line.points.push_back(idx);
      }
      if (!is_min) continue;
      std::sort(line.points.begin(), line.points.end());
      out.push_back(std::move(line));
    }
  }
  std::sort(out.begin(), out.end(), [](const AffineLine& a, const AffineLine& b) { return a.points < b.points; });
  return out;
}

std::vector<std::vector<std::uint32_t>> right_coset_lines(const Sl2Geometry& G) {
  const Field& F = G.field();
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t base = 0; base < G.size(); ++base)
    for (const auto& S : G.sylow()) {
      std::vector<std::uint32_t> line;
      for (const Mat2& U : S) line.push_back(G.index_of(mat::mul(F, U, G.point(base))));
      std::sort(line.begin(), line.end());
      if (line.front() == base) out.push_back(std::move(line));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Bitset> build_adjacency_serial(const Field& F, const std::vector<Mat2>& points) {
  const std::size_t n = points.size();
  std::vector<Bitset> adj(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && mat::det(F, mat::sub(F, points[j], points[i])).is_zero()) adj[i].set(j);
  return adj;
}

std::vector<Bitset> build_adjacency_omp(const Field& F, const std::vector<Mat2>& points) {
  const std::size_t n = points.size();
  std::vector<Bitset> adj(n, Bitset(n));
  const auto ni = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < ni; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    Bitset& row = adj[ui];
    for (std::size_t j = 0; j < n; ++j)
      if (ui != j && mat::det(F, mat::sub(F, points[j], points[ui])).is_zero()) row.set(j);
  }
  return adj;
}

namespace {

void tally(CriteriaSweep& s, const std::array<bool, 8>& r) {
  ++s.pairs;
  if (r[0]) ++s.collinear_pairs;
  for (int k = 1; k < 8; ++k)
    if (r[static_cast<std::size_t>(k)] != r[0]) {
      ++s.disagreements;
      break;
    }
}

}  // namespace

CriteriaSweep sweep_criteria_serial(const Field& F, const std::vector<Mat2>& points) {
  CriteriaSweep s;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) tally(s, collinear_all_criteria(F, points[i], points[j]));
  return s;
}

CriteriaSweep sweep_criteria_omp(const Field& F, const std::vector<Mat2>& points) {
  std::uint64_t pairs = 0, disagreements = 0, collinear_pairs = 0;
  const auto n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : pairs, disagreements, collinear_pairs)
  for (long long i = 0; i < n; ++i) {
    CriteriaSweep local;
    for (long long j = i + 1; j < n; ++j)
      tally(local, collinear_all_criteria(F, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]));
    pairs += local.pairs;
    disagreements += local.disagreements;
    collinear_pairs += local.collinear_pairs;
  }
  return {pairs, disagreements, collinear_pairs};
}

CriteriaSweep sweep_criteria_sampled(const Field& F, const std::vector<Mat2>& points, std::uint64_t samples) {
  std::mt19937_64 rng(0x51320011u);
  const std::uint64_t n = points.size();
  CriteriaSweep s;
  while (s.pairs < samples) {
    const std::uint64_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    tally(s, collinear_all_criteria(F, points[i], points[j]));
  }
  return s;
}

}  // namespace ovoid
