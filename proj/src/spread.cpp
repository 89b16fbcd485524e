#include "ovoid/spread.hpp"

#include <algorithm>
#include <set>

#include "ovoid/errors.hpp"

namespace ovoid {

Point4 normalize4(const Field& F, Point4 x) {
  std::size_t k = 0;
  while (k < 4 && x[k].is_zero()) ++k;
  if (k == 4) throw DomainError("zero vector is not a point of PG(3,q)");
  const Elem s = F.inv(x[k]);
  for (auto& c : x) c = F.mul(s, c);
  return x;
}

PluckerLine plucker(const Field& F, const Point4& x, const Point4& y) {
  auto pij = [&](std::size_t i, std::size_t j) { return F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])); };
  PluckerLine L{{pij(0, 1), pij(0, 2), pij(0, 3), pij(2, 3), pij(3, 1), pij(1, 2)}};
  std::size_t k = 0;
  while (k < 6 && L.p[k].is_zero()) ++k;
  if (k == 6) throw DomainError("points do not span a line");
  const Elem s = F.inv(L.p[k]);
  for (auto& c : L.p) c = F.mul(s, c);
  return L;
}

bool plucker_relation_holds(const Field& F, const PluckerLine& L) {
  const auto& p = L.p;
  const Elem s = F.add(F.add(F.mul(p[0], p[3]), F.mul(p[1], p[4])), F.mul(p[2], p[5]));
  return s.is_zero();
}

bool is_isotropic(const Field& F, const PluckerLine& L) { return F.sub(L.p[0], L.p[3]).is_zero(); }

PluckerLine plucker_of_matrix(const Field& F, const Mat2& X) {
  return plucker(F, {F.one(), F.zero(), X[0], X[1]}, {F.zero(), F.one(), X[2], X[3]});
}

std::vector<Point4> line_points(const Field& F, const Point4& x, const Point4& y) {
  std::vector<Point4> pts{normalize4(F, x)};
  for (Elem k : F.elements()) {
    Point4 z;
    for (std::size_t i = 0; i < 4; ++i) z[i] = F.add(y[i], F.mul(k, x[i]));
    pts.push_back(normalize4(F, z));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<Point4> line_points_of_matrix(const Field& F, const Mat2& X) {
  return line_points(F, {F.one(), F.zero(), X[0], X[1]}, {F.zero(), F.one(), X[2], X[3]});
}

bool lines_intersect(const Field& F, const Mat2& X, const Mat2& Y) { return mat::det(F, mat::sub(F, X, Y)).is_zero(); }

SpreadSetCheck check_spread_set(const Field& F, const SpreadSet& C) {
  SpreadSetCheck r;
  const auto& M = C.matrices;
  r.size_ok = M.size() == static_cast<std::size_t>(F.q() * F.q());
  const bool has_zero = std::find(M.begin(), M.end(), mat::zero(F)) != M.end();
  const bool has_id = std::find(M.begin(), M.end(), mat::identity(F)) != M.end();
  r.has_zero_and_identity = has_zero && has_id;
  r.differences_nonsingular = true;
  for (std::size_t i = 0; i < M.size() && r.differences_nonsingular; ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j)
      if (mat::det(F, mat::sub(F, M[i], M[j])).is_zero()) {
        r.differences_nonsingular = false;
        break;
      }
  return r;
}

SpreadSet spread_set_from_ovoid(const Field& F, const AffineOvoid& O) {
  if (O.model != Model::Matrix) throw DomainError("spread sets need a matrix-model ovoid");
  if (O.points.empty()) throw DomainError("empty ovoid");
  const Mat2 I = mat::identity(F);
  std::vector<Mat2> pts = O.points;
  if (std::find(pts.begin(), pts.end(), I) == pts.end()) {
    const Mat2 t = mat::inverse(F, *std::min_element(pts.begin(), pts.end()));
    for (auto& X : pts) X = mat::mul(F, t, X);
  }
  if (std::find(pts.begin(), pts.end(), I) == pts.end()) throw std::logic_error("translated ovoid lacks the identity");
  pts.push_back(mat::zero(F));
  std::sort(pts.begin(), pts.end());
  return SpreadSet{std::move(pts)};
}

std::vector<SpreadLine> partial_spread(const Field& F, const SpreadSet& C) {
  std::vector<SpreadLine> out;
  for (const Mat2& X : C.matrices) out.push_back({plucker_of_matrix(F, X), line_points_of_matrix(F, X)});
  return out;
}

std::vector<SpreadLine> complete_spread(const Field& F, const SpreadSet& C) {
  auto out = partial_spread(F, C);
  const Point4 a{F.zero(), F.zero(), F.one(), F.zero()}, b{F.zero(), F.zero(), F.zero(), F.one()};
  out.push_back({plucker(F, a, b), line_points(F, a, b)});
  return out;
}

SpreadCoverage spread_coverage(const Field& F, const std::vector<SpreadLine>& lines) {
  const std::size_t q = static_cast<std::size_t>(F.q());
  SpreadCoverage c;
  auto code = [&](const Point4& x) { return ((x[0].v * q + x[1].v) * q + x[2].v) * q + x[3].v; };
  std::vector<std::uint32_t> hits(q * q * q * q, 0);
  for (const auto& L : lines)
    for (const auto& x : L.points) ++hits[code(x)];
  // Walk the normalized points of PG(3,q).
  for (std::size_t k = 0; k < hits.size(); ++k) {
    Point4 x;
    std::size_t v = k;
    for (std::size_t i = 4; i-- > 0;) {
      x[i] = Elem{static_cast<std::uint16_t>(v % q)};
      v /= q;
    }
    std::size_t lead = 0;
    while (lead < 4 && x[lead].is_zero()) ++lead;
    if (lead == 4 || x[lead] != F.one()) continue;
    ++c.points_total;
    if (hits[k] == 0)
      ++c.uncovered;
    else if (hits[k] == 1)
      ++c.covered_once;
    else
      ++c.overcovered;
  }
  return c;
}

}  // namespace ovoid
