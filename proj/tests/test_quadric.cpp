#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ovoid/errors.hpp"
#include "ovoid/quadric.hpp"

using namespace ovoid;

namespace {

bool congruent(const Field& F, const FMatrix& A, const FMatrix& B, const Congruence& c) {
  return fm_mul(F, fm_transpose(c.P), fm_mul(F, A, c.P)) == fm_scale(F, c.lambda, B);
}

}  // namespace

TEST_CASE("quadric: affine points of the matrix model are SL(2,q)") {
  for (int q : {3, 5}) {
    const Field F = Field::make(q);
    const auto M = QuadricModel::make(F, Model::Matrix);
    for (Elem a : F.elements())
      for (Elem b : F.elements())
        for (Elem c : F.elements())
          for (Elem d : F.elements()) {
            const Mat2 X{{a, b, c, d}};
            CHECK(on_quadric(F, M, affine_point(X)) == (mat::det(F, X) == F.one()));
          }
  }
}

TEST_CASE("quadric: point counts and polar form") {
  for (int q : {3, 5, 7}) {
    const Field F = Field::make(q);
    for (Model m : {Model::Matrix, Model::Orthonormal}) {
      const auto M = QuadricModel::make(F, m);
      CHECK(quadric_points(F, M).size() == static_cast<std::size_t>((q + 1) * (q * q + 1)));
    }
    const auto M = QuadricModel::make(F, Model::Matrix);
    const auto pts = enumerate_sl2(F);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < pts.size(); i += 3)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        bad += polar_form(F, M, affine_point(pts[i]), affine_point(pts[j])).is_zero() != collinear(F, pts[i], pts[j]);
    CHECK(bad == 0);
  }
  const Field F = Field::make(5);
  CHECK(normalize(F, {F.zero(), F.from_int(2), F.zero(), F.from_int(4), F.one()}).x[1] == F.one());
  CHECK_THROWS_AS(normalize(F, {}), DomainError);
}

TEST_CASE("quadric: trace sections") {
  const Field F5 = Field::make(5);
  CHECK(trace_section(F5, F5.from_int(0)).kind == SectionKind::Hyperbolic);
  CHECK(trace_section(F5, F5.from_int(0)).points.size() == 30);
  CHECK(trace_section(F5, F5.from_int(1)).kind == SectionKind::Elliptic);
  CHECK(trace_section(F5, F5.from_int(1)).points.size() == 20);
  CHECK(trace_section(F5, F5.from_int(2)).kind == SectionKind::Cone);
  CHECK(trace_section(F5, F5.from_int(2)).points.size() == 25);
  for (int q : {3, 5, 7, 9, 11}) {
    const Field F = Field::make(q);
    std::size_t total = 0;
    for (Elem t : F.elements()) {
      const auto s = trace_section(F, t);
      const int d = F.discriminant(t);
      CHECK(s.points.size() == static_cast<std::size_t>(q * (q + d)));
      CHECK(s.kind == (d == 1 ? SectionKind::Hyperbolic : d == -1 ? SectionKind::Elliptic : SectionKind::Cone));
      for (const Mat2& X : s.points) CHECK(mat::trace(F, X) == t);
      total += s.points.size();
    }
    CHECK(total == static_cast<std::size_t>(q * (q * q - 1)));
    CHECK(section_at_infinity_size(F, F.one()) == q + 1);
  }
}

TEST_CASE("quadric: lines at infinity") {
  for (int q : {3, 5, 7}) {
    const Field F = Field::make(q);
    const auto M = QuadricModel::make(F, Model::Matrix);
    const auto lines = pi_infinity_lines(F);
    CHECK(lines.size() == static_cast<std::size_t>(2 * (q + 1)));
    for (const auto& L : lines) {
      CHECK(L.size() == static_cast<std::size_t>(q + 1));
      for (const auto& P : L) {
        CHECK(P.x[0].is_zero());
        CHECK(on_quadric(F, M, P));
        for (const auto& Q : L) CHECK(polar_form(F, M, P, Q).is_zero());
      }
    }
    const Sl2Geometry G(F);
    CHECK(G.lines().size() + lines.size() == static_cast<std::size_t>((q + 1) * (q * q + 1)));
  }
}

TEST_CASE("quadric: congruence") {
  const Field F5 = Field::make(5);
  const FMatrix I2 = FMatrix::identity(F5, 2), D = FMatrix::diagonal(F5, {4, 4});
  const auto same = congruence_transform(F5, I2, I2);
  CHECK(congruent(F5, I2, I2, same));

  const auto c = congruence_transform(F5, I2, D, true);
  CHECK(c.lambda == F5.one());
  CHECK(congruent(F5, I2, D, c));
  // Brute force over GL(2,5): the same equation has solutions, e.g. diag(2,2).
  std::size_t solutions = 0;
  for (Elem a : F5.elements())
    for (Elem b : F5.elements())
      for (Elem x : F5.elements())
        for (Elem y : F5.elements()) {
          FMatrix P(2, F5.zero());
          P(0, 0) = a, P(0, 1) = b, P(1, 0) = x, P(1, 1) = y;
          if (fm_det(F5, P).is_zero()) continue;
          solutions += fm_mul(F5, fm_transpose(P), P) == D;
        }
  CHECK(solutions > 0);
  FMatrix two(2, F5.zero());
  two(0, 0) = two(1, 1) = F5.from_int(2);
  CHECK(fm_mul(F5, fm_transpose(two), two) == D);

  for (int q : {3, 5, 7, 9, 11}) {
    const Field F = Field::make(q);
    const auto A = QuadricModel::make(F, Model::Matrix), B = QuadricModel::make(F, Model::Orthonormal);
    const auto k = congruence_transform(F, A.gram, B.gram);
    CHECK(congruent(F, A.gram, B.gram, k));
    for (const auto& P : quadric_points(F, B)) {
      std::array<Elem, 5> y{};
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) y[i] = F.add(y[i], F.mul(k.P(i, j), P.x[j]));
      CHECK(on_quadric(F, A, normalize(F, y)));
    }
  }

  const Field F3 = Field::make(3);
  CHECK_THROWS_AS(congruence_transform(F3, FMatrix::identity(F3, 2), FMatrix::identity(F3, 3)), IncompatibleFormsError);
  CHECK_THROWS_AS(congruence_transform(F3, FMatrix::identity(F3, 3), FMatrix::diagonal(F3, {1, 1, 2}), true),
                  IncompatibleFormsError);
  CHECK_THROWS_AS(congruence_transform(F3, FMatrix::identity(F3, 2), FMatrix::diagonal(F3, {1, 0})),
                  IncompatibleFormsError);
  const auto odd = congruence_transform(F3, FMatrix::identity(F3, 3), FMatrix::diagonal(F3, {1, 1, 2}));
  CHECK_FALSE(F3.is_square(odd.lambda));
  CHECK(congruent(F3, FMatrix::identity(F3, 3), FMatrix::diagonal(F3, {1, 1, 2}), odd));
}
