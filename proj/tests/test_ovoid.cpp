#include <random>
#include <set>

#include "doctest.h"
#include "ovoid/constructions.hpp"
#include "ovoid/errors.hpp"
#include "ovoid/ovoid.hpp"

using namespace ovoid;

namespace {

Automorphism random_automorphism(const Field& F, const std::vector<Mat2>& sl, std::mt19937_64& rng) {
  const auto gl = pgl2_representatives(F);
  Automorphism a;
  a.M = gl[rng() % gl.size()];
  const Elem d = mat::det(F, a.M);
  a.N = mat::mul(F, sl[rng() % sl.size()], Mat2{{d, F.zero(), F.zero(), F.one()}});
  a.frobenius_power = static_cast<int>(rng() % static_cast<unsigned>(F.h()));
  a.invert = rng() % 2;
  return a;
}

}  // namespace

TEST_CASE("ovoid: subgroup ovoids verify") {
  for (int q : {3, 5, 7}) {
    const Sl2Geometry G(Field::make(q));
    const Field& F = G.field();
    const AffineOvoid O = subgroup_ovoid(G);
    const auto r = verify(F, O);
    CHECK(r.points_valid);
    CHECK(r.is_partial_ovoid);
    CHECK(r.is_affine_ovoid);
    CHECK(r.size == static_cast<std::size_t>(q * q - 1));
    CHECK(is_sharply_transitive(F, O.points));
    CHECK(trace_counts_consistent(F, O.points));
    const auto anti = antipodal_pairing(F, O.points);
    CHECK(anti.paired);
    CHECK(anti.pairs == O.points.size() / 2);
    const auto cov = line_coverage(G, O.points);
    CHECK(cov.affine_covered_once == cov.affine_lines);
    CHECK(cov.infinity_lines == static_cast<std::size_t>(2 * (q + 1)));
    CHECK(extendable_points(F, Model::Matrix, O.points) == 0);
    for (const Mat2& P : G.points()) {
      if (std::binary_search(O.points.begin(), O.points.end(), P)) continue;
      CHECK(collinear_count_from_outside(F, O.points, P) == static_cast<std::size_t>(q + 1));
    }
    CHECK_THROWS_AS(collinear_count_from_outside(F, O.points, O.points[0]), DomainError);
    CHECK_THROWS_AS(collinear_count_from_outside(F, O.points, mat::zero(F)), DomainError);
  }
}

TEST_CASE("ovoid: violations and malformed sets") {
  const Sl2Geometry G(Field::make(5));
  const Field& F = G.field();
  // A whole line: every point after the first clashes with the first.
  std::vector<Mat2> line;
  for (auto i : G.lines()[0].points) line.push_back(G.point(i));
  const auto r = verify(F, Model::Matrix, line);
  CHECK(r.violations.size() == 4);
  CHECK_FALSE(r.is_partial_ovoid);

  auto O = subgroup_ovoid(G);
  CHECK_FALSE(verify(F, Model::Matrix, {O.points[0], O.points[0]}).points_valid);
  CHECK_FALSE(verify(F, Model::Matrix, {mat::zero(F)}).points_valid);
  // Drop a point whose trace t has t^2 - 4 a non-zero square.
  auto smaller = O.points;
  smaller.erase(std::find_if(smaller.begin(), smaller.end(),
                             [&](const Mat2& X) { return F.discriminant(mat::trace(F, X)) == 1; }));
  const auto rs = verify(F, Model::Matrix, smaller);
  CHECK(rs.is_partial_ovoid);
  CHECK_FALSE(rs.is_affine_ovoid);
  CHECK(extendable_points(F, Model::Matrix, smaller) == 1);
  CHECK_FALSE(trace_counts_consistent(F, smaller));

  std::vector<ProjectivePoint5> proj;
  for (const Mat2& X : O.points) proj.push_back(affine_point(X));
  CHECK(verify_projective(F, Model::Matrix, proj).is_affine_ovoid);
  proj.push_back({{F.zero(), F.one(), F.zero(), F.zero(), F.zero()}});
  CHECK_FALSE(verify_projective(F, Model::Matrix, proj).points_valid);
}

TEST_CASE("ovoid: sharp transitivity is the ovoid property on SL(2,3)") {
  const Sl2Geometry G(Field::make(3));
  const Field& F = G.field();
  const auto& pts = G.points();
  // Every 8-subset: verify and sharp transitivity agree.
  std::size_t subsets = 0, ovoids = 0, mismatches = 0;
  std::vector<int> pick(8);
  std::vector<Mat2> S(8);
  auto rec = [&](auto&& self, int k, int from) -> void {
    if (k == 8) {
      ++subsets;
      for (int i = 0; i < 8; ++i) S[i] = pts[pick[i]];
      bool indep = true;
      for (int i = 0; i < 8 && indep; ++i)
        for (int j = i + 1; j < 8 && indep; ++j) indep = !G.adjacent(pick[i], pick[j]);
      ovoids += indep;
      mismatches += indep != is_sharply_transitive(F, S);
      return;
    }
    for (int p = from; p <= 24 - (8 - k); ++p) {
      pick[k] = p;
      self(self, k + 1, p + 1);
    }
  };
  rec(rec, 0, 0);
  CHECK(subsets == 735471);
  CHECK(mismatches == 0);
  CHECK(ovoids == 3);
}

TEST_CASE("ovoid: automorphisms") {
  std::mt19937_64 rng(7);
  for (int q : {3, 5, 9}) {
    const Sl2Geometry G(Field::make(q));
    const Field& F = G.field();
    std::vector<Mat2> O;
    if (q == 9) {
      // Not an ovoid; invariance still has to hold.
      for (std::size_t i = 0; i < G.size(); i += 37) O.push_back(G.point(i));
    } else {
      O = subgroup_ovoid(G).points;
    }
    const AffineOvoid base{Model::Matrix, O};
    const auto canon = canonical_form(G, O);
    const auto inv = ovoid_invariants(F, O);
    const bool is_ovoid = verify(F, base).is_affine_ovoid;
    for (int k = 0; k < (q == 9 ? 3 : 20); ++k) {
      const auto a = random_automorphism(F, G.points(), rng);
      const auto img = apply_automorphism(F, a, base);
      CHECK(verify(F, img).is_affine_ovoid == is_ovoid);
      CHECK(antipodal_pairing(F, img.points).pairs == antipodal_pairing(F, O).pairs);
      CHECK(ovoid_invariants(F, img.points) == inv);
      CHECK(canonical_form(G, img.points) == canon);
    }
  }
  const Field F = Field::make(5);
  Automorphism bad = Automorphism::identity(F);
  bad.M = mat::make(F, 2, 0, 0, 1);
  CHECK_THROWS_AS(apply_automorphism(F, bad, {Model::Matrix, {mat::identity(F)}}), DomainError);
}

TEST_CASE("ovoid: cosets of Q8 are equivalent") {
  const Sl2Geometry G(Field::make(3));
  const Field& F = G.field();
  const auto O = subgroup_ovoid(G);
  const auto canon = canonical_form(G, O.points);
  std::set<std::vector<Mat2>> cosets;
  for (const Mat2& X : G.points()) cosets.insert(coset_ovoid(F, O, X).points);
  CHECK(cosets.size() == 3);
  for (const auto& C : cosets) CHECK(canonical_form(G, C) == canon);
  CHECK(pgl2_representatives(F).size() == 24);
}

TEST_CASE("ovoid: orthonormal pair histogram matches the subgroup") {
  for (auto [name, q] : {std::pair{RootName::K8, 3}, {RootName::K24, 5}, {RootName::K48, 7}}) {
    const Sl2Geometry G(Field::make(q));
    const auto R = root_ovoid(name, G.field());
    const auto O = subgroup_ovoid(G);
    CHECK(orthonormal_pair_histogram(G.field(), R.points) == ovoid_invariants(G.field(), O.points).pair_traces);
    CHECK(extendable_points(G.field(), Model::Orthonormal, R.points) == 0);
  }
}
