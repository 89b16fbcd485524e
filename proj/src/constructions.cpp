#include "ovoid/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ovoid/errors.hpp"

namespace ovoid {

MulTable::MulTable(const Sl2Geometry& G) : n_(G.size()), identity_(G.identity_index()) {
  const Field& F = G.field();
  if (n_ > 65535) throw UnsupportedError("group too large for a multiplication table");
  table_.resize(n_ * n_);
  inverse_.resize(n_);
  order_.resize(n_);
  const auto n = static_cast<long long>(n_);
#pragma omp parallel for schedule(static)
  for (long long a = 0; a < n; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    for (std::size_t b = 0; b < n_; ++b)
      table_[ua * n_ + b] = static_cast<std::uint16_t>(G.index_of(mat::mul(F, G.point(ua), G.point(b))));
    inverse_[ua] = G.index_of(mat::inverse(F, G.point(ua)));
  }
  for (std::size_t a = 0; a < n_; ++a) {
    int k = 1;
    for (std::uint32_t x = static_cast<std::uint32_t>(a); x != identity_; x = mul(x, static_cast<std::uint32_t>(a))) ++k;
    order_[a] = k;
  }
}

namespace {

struct Subgroup {
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> elems;  // sorted
  Bitset mask;
  std::vector<std::size_t> order_hist;
};

// <gens>, or an empty result once the size exceeds `limit`.
bool closure(const MulTable& T, const std::vector<std::uint32_t>& gens, std::size_t limit, Subgroup& out) {
  Bitset mask(T.size());
  std::vector<std::uint32_t> elems{T.identity()};
  mask.set(T.identity());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto g : gens) {
      const auto y = T.mul(elems[i], g);
      if (mask.test(y)) continue;
      if (elems.size() == limit) return false;
      mask.set(y);
      elems.push_back(y);
    }
  std::sort(elems.begin(), elems.end());
  out.gens = gens;
  out.elems = std::move(elems);
  out.mask = std::move(mask);
  out.order_hist.clear();
  for (auto x : out.elems) {
    const auto o = static_cast<std::size_t>(T.order(x));
    if (out.order_hist.size() <= o) out.order_hist.resize(o + 1, 0);
    ++out.order_hist[o];
  }
  return true;
}

bool conjugate(const MulTable& T, const Subgroup& A, const Subgroup& B) {
  if (A.elems.size() != B.elems.size() || A.order_hist != B.order_hist) return false;
  for (std::uint32_t c = 0; c < T.size(); ++c) {
    const auto ci = T.inv(c);
    bool ok = true;
    for (auto x : A.gens)
      if (!B.mask.test(T.mul(T.mul(c, x), ci))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

std::vector<std::uint32_t> least_conjugate(const MulTable& T, const std::vector<std::uint32_t>& elems) {
  std::vector<std::uint32_t> best, img(elems.size());
  for (std::uint32_t c = 0; c < T.size(); ++c) {
    const auto ci = T.inv(c);
    for (std::size_t k = 0; k < elems.size(); ++k) img[k] = T.mul(T.mul(c, elems[k]), ci);
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = img;
  }
  return best;
}

}  // namespace

std::vector<std::vector<Mat2>> find_subgroups_of_order(const Sl2Geometry& G, std::size_t n) {
  if (n == 0 || G.size() % n != 0) return {};
  const MulTable T(G);

  // Conjugacy-class representatives of subgroups whose order divides n,
  // processed in discovery order.
  std::vector<Subgroup> reps;
  Subgroup trivial;
  closure(T, {}, n, trivial);
  reps.push_back(trivial);
  std::set<std::vector<std::uint64_t>> seen{trivial.mask.words()};

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t g = 0; g < T.size(); ++g)
    if (n % static_cast<std::size_t>(T.order(g)) == 0) candidates.push_back(g);

  for (std::size_t r = 0; r < reps.size(); ++r) {
    const Subgroup H = reps[r];
    if (H.elems.size() == n) continue;
    std::vector<Subgroup> found(candidates.size());
    std::vector<char> ok(candidates.size(), 0);
    const auto nc = static_cast<long long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long k = 0; k < nc; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const auto g = candidates[uk];
      if (H.mask.test(g)) continue;
      auto gens = H.gens;
      gens.push_back(g);
      Subgroup K;
      if (closure(T, gens, n, K) && n % K.elems.size() == 0) {
        found[uk] = std::move(K);
        ok[uk] = 1;
      }
    }
    // Merge in candidate order.
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!ok[k]) continue;
      Subgroup& K = found[k];
      if (!seen.insert(K.mask.words()).second) continue;
      bool known = false;
      for (const auto& R : reps)
        if (conjugate(T, K, R)) {
          known = true;
          break;
        }
      if (!known) reps.push_back(std::move(K));
    }
  }

  std::vector<std::vector<std::uint32_t>> classes;
  for (const auto& R : reps)
    if (R.elems.size() == n) classes.push_back(least_conjugate(T, R.elems));
  std::sort(classes.begin(), classes.end());

  std::vector<std::vector<Mat2>> out;
  for (const auto& c : classes) {
    std::vector<Mat2> s;
    for (auto i : c) s.push_back(G.point(i));
    out.push_back(std::move(s));
  }
  return out;
}

AffineOvoid subgroup_ovoid(const Sl2Geometry& G) {
  const int q = G.q();
  if (q != 3 && q != 5 && q != 7 && q != 11)
    throw UnsupportedError("no subgroup of order q^2-1 in SL(2," + std::to_string(q) + ")");
  auto subgroups = find_subgroups_of_order(G, static_cast<std::size_t>(q * q - 1));
  if (subgroups.empty()) throw UnsupportedError("subgroup search found no subgroup of order q^2-1");
  AffineOvoid O{Model::Matrix, std::move(subgroups.front())};
  O.sort();
  return O;
}

AffineOvoid coset_ovoid(const Field& F, const AffineOvoid& O, const Mat2& X) {
  if (mat::det(F, X) != F.one()) throw DomainError("coset representative must have determinant 1");
  AffineOvoid out{Model::Matrix, {}};
  for (const Mat2& Y : O.points) out.points.push_back(mat::mul(F, X, Y));
  out.sort();
  return out;
}

}  // namespace ovoid
