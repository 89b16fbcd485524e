#include "ovoid/ovoid.hpp"

#include <set>
#include <string>

#include "ovoid/errors.hpp"

namespace ovoid {

namespace {

bool on_model_quadric(const Field& F, Model model, const Mat2& X) {
  if (model == Model::Matrix) return mat::det(F, X) == F.one();
  Elem s = F.zero();
  for (auto c : X.e) s = F.add(s, F.mul(c, c));
  return s == F.one();
}

bool affine_collinear(const Field& F, Model model, const Mat2& X, const Mat2& Y) {
  if (model == Model::Matrix) return mat::det(F, mat::sub(F, Y, X)).is_zero();
  Elem s = F.zero();
  for (std::size_t i = 0; i < 4; ++i) s = F.add(s, F.mul(X[i], Y[i]));
  return s == F.one();
}

}  // namespace

VerifyReport verify(const Field& F, Model model, const std::vector<Mat2>& points) {
  VerifyReport r;
  r.size = points.size();
  std::set<Mat2> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!on_model_quadric(F, model, points[i])) {
      r.points_valid = false;
      r.diagnostics.push_back("point " + std::to_string(i) + " is not on the quadric");
    }
    if (!seen.insert(points[i]).second) {
      r.points_valid = false;
      r.diagnostics.push_back("point " + std::to_string(i) + " is repeated");
    }
  }
  if (!r.points_valid) return r;

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < points.size(); ++j) {
    bool clash = false;
    for (std::size_t i : kept)
      if (affine_collinear(F, model, points[i], points[j])) {
        r.violations.emplace_back(i, j);
        clash = true;
        break;
      }
    if (!clash) kept.push_back(j);
  }
  r.is_partial_ovoid = r.violations.empty();
  r.is_affine_ovoid = r.is_partial_ovoid && points.size() == static_cast<std::size_t>(F.q() * F.q() - 1);
  return r;
}

VerifyReport verify_projective(const Field& F, Model model, const std::vector<ProjectivePoint5>& points) {
  std::vector<Mat2> affine;
  VerifyReport bad;
  bad.size = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& x = points[i].x;
    if (x[0].is_zero()) {
      bad.points_valid = false;
      bad.diagnostics.push_back("point " + std::to_string(i) + " lies in the hyperplane at infinity");
      continue;
    }
    const Elem s = F.inv(x[0]);
    affine.push_back(Mat2{{F.mul(s, x[1]), F.mul(s, x[2]), F.mul(s, x[3]), F.mul(s, x[4])}});
  }
  if (!bad.points_valid) return bad;
  return verify(F, model, affine);
}

bool is_sharply_transitive(const Field& F, const std::vector<Mat2>& S) {
  const int q = F.q();
  const std::size_t nonzero = static_cast<std::size_t>(q * q - 1);
  if (S.size() != nonzero) return false;
  std::vector<std::uint32_t> hits(static_cast<std::size_t>(q * q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      const std::array<Elem, 2> u{Elem{static_cast<std::uint16_t>(a)}, Elem{static_cast<std::uint16_t>(b)}};
      std::fill(hits.begin(), hits.end(), 0);
      for (const Mat2& X : S) {
        const auto v = mat::apply_row(F, u, X);
        ++hits[static_cast<std::size_t>(v[0].v * q + v[1].v)];
      }
      if (hits[0] != 0) return false;
      for (std::size_t k = 1; k < hits.size(); ++k)
        if (hits[k] != 1) return false;
    }
  return true;
}

std::vector<std::size_t> trace_statistics(const Field& F, const std::vector<Mat2>& points) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(F.q()), 0);
  for (const Mat2& X : points) ++counts[mat::trace(F, X).v];
  return counts;
}

bool trace_counts_consistent(const Field& F, const std::vector<Mat2>& points) {
  const auto counts = trace_statistics(F, points);
  const auto q1 = static_cast<std::size_t>(F.q() + 1);
  const std::set<Mat2> s(points.begin(), points.end());
  const Mat2 I = mat::identity(F);
  const Elem two = F.from_int(2);
  for (Elem t : F.elements()) {
    const std::size_t c = counts[t.v];
    if (t == two) {
      if (c != (s.count(I) ? 1 : q1)) return false;
    } else if (t == F.neg(two)) {
      if (c != (s.count(mat::neg(F, I)) ? 1 : q1)) return false;
    } else if (F.discriminant(t) == 1 && c != q1) {
      return false;
    }
  }
  return true;
}

AntipodalPairing antipodal_pairing(const Field& F, const std::vector<Mat2>& points) {
  const std::set<Mat2> s(points.begin(), points.end());
  AntipodalPairing r;
  for (const Mat2& X : points) {
    if (s.count(mat::neg(F, X)))
      ++r.pairs;
    else
      r.unpaired.push_back(X);
  }
  r.pairs /= 2;
  r.paired = r.unpaired.empty();
  return r;
}

Automorphism Automorphism::identity(const Field& F) { return {mat::identity(F), mat::identity(F), 0, false}; }

Mat2 Automorphism::apply(const Field& F, const Mat2& X) const {
  Mat2 Y = invert ? mat::inverse(F, X) : X;
  Y = mat::frobenius(F, Y, frobenius_power);
  return mat::mul(F, mat::mul(F, M, Y), mat::inverse(F, N));
}

AffineOvoid apply_automorphism(const Field& F, const Automorphism& a, const AffineOvoid& O) {
  if (O.model != Model::Matrix) throw DomainError("automorphisms act on the matrix model");
  if (mat::det(F, a.M) != mat::det(F, a.N)) throw DomainError("automorphism needs det M = det N");
  if (mat::det(F, a.M).is_zero()) throw DomainError("automorphism needs invertible M, N");
  AffineOvoid out{Model::Matrix, {}};
  out.points.reserve(O.points.size());
  for (const Mat2& X : O.points) out.points.push_back(a.apply(F, X));
  out.sort();
  return out;
}

std::size_t collinear_count_from_outside(const Field& F, const std::vector<Mat2>& O, const Mat2& P) {
  if (mat::det(F, P) != F.one()) throw DomainError("point is not in SL(2,q)");
  std::size_t n = 0;
  for (const Mat2& X : O) {
    if (X == P) throw DomainError("point lies in the ovoid");
    if (collinear(F, X, P)) ++n;
  }
  return n;
}

std::vector<Mat2> pgl2_representatives(const Field& F) {
  std::vector<Mat2> out;
  const auto elems = F.elements();
  for (Elem a : elems)
    for (Elem b : elems)
      for (Elem c : elems)
        for (Elem d : elems) {
          const Mat2 M{{a, b, c, d}};
          std::size_t k = 0;
          while (k < 4 && M[k].is_zero()) ++k;
          if (k == 4 || M[k] != F.one()) continue;
          if (!mat::det(F, M).is_zero()) out.push_back(M);
        }
  return out;
}

std::vector<std::uint32_t> canonical_form(const Sl2Geometry& G, const std::vector<Mat2>& points) {
  const Field& F = G.field();
  if (points.empty()) return {};
  const Mat2 P0 = G.point(0);
  const auto pgl = pgl2_representatives(F);
  // Right factors C^-1 P0.
  std::vector<Mat2> right(pgl.size());
  for (std::size_t c = 0; c < pgl.size(); ++c) right[c] = mat::mul(F, mat::inverse(F, pgl[c]), P0);

  // Every image containing P0 is Y -> C (phi(Y) z^-1) C^-1 P0 with phi a
  // Frobenius power optionally composed with inversion, z in phi(O) and C
  // in PGL(2,q). The least sorted list always contains P0.
  struct Frame {
    int invert, power;
    std::size_t z;
  };
  std::vector<Frame> frames;
  for (int inv = 0; inv < 2; ++inv)
    for (int s = 0; s < F.h(); ++s)
      for (std::size_t z = 0; z < points.size(); ++z) frames.push_back({inv, s, z});

  std::vector<std::uint32_t> best;
  const auto nframes = static_cast<long long>(frames.size());
#pragma omp parallel
  {
    std::vector<std::uint32_t> local_best, img(points.size());
    std::vector<Mat2> W(points.size());
#pragma omp for schedule(dynamic, 1) nowait
    for (long long f = 0; f < nframes; ++f) {
      const Frame& fr = frames[static_cast<std::size_t>(f)];
      auto phi = [&](const Mat2& X) { return mat::frobenius(F, fr.invert ? mat::inverse(F, X) : X, fr.power); };
      const Mat2 zi = mat::inverse(F, phi(points[fr.z]));
      for (std::size_t k = 0; k < points.size(); ++k) W[k] = mat::mul(F, phi(points[k]), zi);
      for (std::size_t c = 0; c < pgl.size(); ++c) {
        for (std::size_t k = 0; k < points.size(); ++k)
          img[k] = G.index_of(mat::mul(F, mat::mul(F, pgl[c], W[k]), right[c]));
        std::sort(img.begin(), img.end());
        if (local_best.empty() || img < local_best) local_best = img;
      }
    }
#pragma omp critical(ovoid_canonical_min)
    {
      if (!local_best.empty() && (best.empty() || local_best < best)) best = local_best;
    }
  }
  return best;
}

OvoidInvariants ovoid_invariants(const Field& F, const std::vector<Mat2>& points) {
  const auto q = static_cast<std::size_t>(F.q());
  std::vector<std::size_t> hist(q, 0);
  std::vector<Mat2> inv(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) inv[i] = mat::inverse(F, points[i]);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      if (i != j) ++hist[mat::trace(F, mat::mul(F, points[i], inv[j])).v];

  OvoidInvariants r;
  for (int s = 0; s < F.h(); ++s) {
    std::vector<std::size_t> img(q, 0);
    for (std::size_t t = 0; t < q; ++t) img[F.frobenius(Elem{static_cast<std::uint16_t>(t)}, s).v] += hist[t];
    if (s == 0 || img < r.pair_traces) r.pair_traces = img;
  }
  r.antipodal_pairs = antipodal_pairing(F, points).pairs;
  return r;
}

std::vector<std::size_t> orthonormal_pair_histogram(const Field& F, const std::vector<Mat2>& points) {
  std::vector<std::size_t> hist(static_cast<std::size_t>(F.q()), 0);
  const Elem two = F.from_int(2);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      Elem s = F.zero();
      for (std::size_t c = 0; c < 4; ++c) s = F.add(s, F.mul(points[i][c], points[j][c]));
      ++hist[F.mul(two, s).v];
    }
  return hist;
}

std::size_t extendable_points(const Field& F, Model model, const std::vector<Mat2>& points) {
  const std::set<Mat2> in(points.begin(), points.end());
  std::size_t n = 0;
  const auto elems = F.elements();
  for (Elem a : elems)
    for (Elem b : elems)
      for (Elem c : elems)
        for (Elem d : elems) {
          const Mat2 X{{a, b, c, d}};
          if (in.count(X) || !on_model_quadric(F, model, X)) continue;
          bool free = true;
          for (const Mat2& Y : points)
            if (affine_collinear(F, model, X, Y)) {
              free = false;
              break;
            }
          n += free;
        }
  return n;
}

LineCoverage line_coverage(const Sl2Geometry& G, const std::vector<Mat2>& points) {
  Bitset in(G.size());
  for (const Mat2& X : points) in.set(G.index_of(X));
  LineCoverage c;
  c.affine_lines = G.lines().size();
  for (const auto& line : G.lines()) {
    std::size_t hits = 0;
    for (auto p : line.points) hits += in.test(p);
    if (hits == 0)
      ++c.affine_uncovered;
    else if (hits == 1)
      ++c.affine_covered_once;
    else
      ++c.affine_overcovered;
  }
  c.infinity_lines = pi_infinity_lines(G.field()).size();
  return c;
}

}  // namespace ovoid
