#include <set>

#include "doctest.h"
#include "ovoid/constructions.hpp"
#include "ovoid/errors.hpp"
#include "ovoid/spread.hpp"

using namespace ovoid;

TEST_CASE("spread: Plucker coordinates") {
  const Field F = Field::make(5);
  const Mat2 X = mat::make(F, 1, 2, 3, 4);
  const auto L = plucker_of_matrix(F, X);
  const std::array<Elem, 6> expect{F.one(), X[2], X[3], mat::det(F, X), X[1], F.neg(X[0])};
  CHECK(L.p == expect);
  CHECK(plucker_relation_holds(F, L));
  CHECK(line_points_of_matrix(F, X).size() == 6);
  CHECK_THROWS_AS(plucker(F, {F.one(), F.zero(), F.zero(), F.zero()}, {F.from_int(2), F.zero(), F.zero(), F.zero()}),
                  DomainError);
  CHECK_THROWS_AS(normalize4(F, {}), DomainError);
  // The same line from two other points on it.
  const auto pts = line_points_of_matrix(F, X);
  CHECK(plucker(F, pts[1], pts[4]) == L);
}

TEST_CASE("spread: intersection test against point sets") {
  const Field F = Field::make(3);
  std::vector<Mat2> all;
  for (Elem a : F.elements())
    for (Elem b : F.elements())
      for (Elem c : F.elements())
        for (Elem d : F.elements()) all.push_back(Mat2{{a, b, c, d}});
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto Pi = line_points_of_matrix(F, all[i]);
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const auto Pj = line_points_of_matrix(F, all[j]);
      std::vector<Point4> common;
      std::set_intersection(Pi.begin(), Pi.end(), Pj.begin(), Pj.end(), std::back_inserter(common));
      CHECK(lines_intersect(F, all[i], all[j]) == !common.empty());
    }
    CHECK(is_isotropic(F, plucker_of_matrix(F, all[i])) == (mat::det(F, all[i]) == F.one()));
  }
}

TEST_CASE("spread: ovoid gives a spread") {
  for (int q : {3, 5, 7}) {
    const Sl2Geometry G(Field::make(q));
    const Field& F = G.field();
    const auto O = subgroup_ovoid(G);
    const auto C = spread_set_from_ovoid(F, O);
    CHECK(check_spread_set(F, C).valid());
    const auto lines = complete_spread(F, C);
    CHECK(lines.size() == static_cast<std::size_t>(q * q + 1));
    for (std::size_t i = 0; i < C.matrices.size(); ++i)
      if (mat::det(F, C.matrices[i]) == F.one()) CHECK(is_isotropic(F, lines[i].plucker));
    const auto cov = spread_coverage(F, lines);
    CHECK(cov.points_total == static_cast<std::size_t>((q * q + 1) * (q + 1)));
    CHECK(cov.partition());
    CHECK_FALSE(spread_coverage(F, partial_spread(F, C)).partition());

    // A coset without I is translated first.
    const auto T = coset_ovoid(F, O, G.point(G.size() - 1));
    CHECK(check_spread_set(F, spread_set_from_ovoid(F, T)).valid());
  }
  const Field F = Field::make(3);
  SpreadSet bad{{mat::zero(F), mat::identity(F), mat::make(F, 1, 1, 0, 1)}};
  const auto chk = check_spread_set(F, bad);
  CHECK_FALSE(chk.size_ok);
  CHECK(chk.has_zero_and_identity);
  CHECK_FALSE(chk.differences_nonsingular);
  CHECK_THROWS_AS(spread_set_from_ovoid(F, {Model::Orthonormal, {mat::identity(F)}}), DomainError);
}
