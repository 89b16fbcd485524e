#include "ovoid/quadric.hpp"

#include <algorithm>
#include <set>

#include "ovoid/errors.hpp"

namespace ovoid {

ProjectivePoint5 normalize(const Field& F, std::array<Elem, 5> x) {
  std::size_t k = 0;
  while (k < 5 && x[k].is_zero()) ++k;
  if (k == 5) throw DomainError("zero vector is not a projective point");
  const Elem s = F.inv(x[k]);
  for (auto& c : x) c = F.mul(s, c);
  return ProjectivePoint5{x};
}

ProjectivePoint5 affine_point(const Mat2& X) { return ProjectivePoint5{{Elem{1}, X[0], X[1], X[2], X[3]}}; }

FMatrix FMatrix::identity(const Field& F, int dim) {
  FMatrix I(dim, F.zero());
  for (int i = 0; i < dim; ++i) I(i, i) = F.one();
  return I;
}

FMatrix FMatrix::diagonal(const Field& F, const std::vector<long long>& d) {
  FMatrix D(static_cast<int>(d.size()), F.zero());
  for (std::size_t i = 0; i < d.size(); ++i) D(static_cast<int>(i), static_cast<int>(i)) = F.from_int(d[i]);
  return D;
}

FMatrix fm_mul(const Field& F, const FMatrix& A, const FMatrix& B) {
  FMatrix C(A.n, F.zero());
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      Elem s = F.zero();
      for (int k = 0; k < A.n; ++k) s = F.add(s, F.mul(A(i, k), B(k, j)));
      C(i, j) = s;
    }
  return C;
}

FMatrix fm_transpose(const FMatrix& A) {
  FMatrix T = A;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) T(i, j) = A(j, i);
  return T;
}

FMatrix fm_scale(const Field& F, Elem k, const FMatrix& A) {
  FMatrix S = A;
  for (auto& v : S.a) v = F.mul(k, v);
  return S;
}

Elem fm_det(const Field& F, FMatrix A) {
  Elem d = F.one();
  for (int c = 0; c < A.n; ++c) {
    int piv = c;
    while (piv < A.n && A(piv, c).is_zero()) ++piv;
    if (piv == A.n) return F.zero();
    if (piv != c) {
      for (int j = 0; j < A.n; ++j) std::swap(A(piv, j), A(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, A(c, c));
    const Elem inv = F.inv(A(c, c));
    for (int r = c + 1; r < A.n; ++r) {
      const Elem f = F.mul(A(r, c), inv);
      if (f.is_zero()) continue;
      for (int j = c; j < A.n; ++j) A(r, j) = F.sub(A(r, j), F.mul(f, A(c, j)));
    }
  }
  return d;
}

FMatrix fm_inverse(const Field& F, const FMatrix& M) {
  FMatrix A = M, R = FMatrix::identity(F, M.n);
  for (int c = 0; c < A.n; ++c) {
    int piv = c;
    while (piv < A.n && A(piv, c).is_zero()) ++piv;
    if (piv == A.n) throw DomainError("inverse of a singular matrix");
    for (int j = 0; j < A.n; ++j) {
      std::swap(A(piv, j), A(c, j));
      std::swap(R(piv, j), R(c, j));
    }
    const Elem inv = F.inv(A(c, c));
    for (int j = 0; j < A.n; ++j) {
      A(c, j) = F.mul(inv, A(c, j));
      R(c, j) = F.mul(inv, R(c, j));
    }
    for (int r = 0; r < A.n; ++r) {
      if (r == c || A(r, c).is_zero()) continue;
      const Elem f = A(r, c);
      for (int j = 0; j < A.n; ++j) {
        A(r, j) = F.sub(A(r, j), F.mul(f, A(c, j)));
        R(r, j) = F.sub(R(r, j), F.mul(f, R(c, j)));
      }
    }
  }
  return R;
}

const char* model_name(Model m) noexcept { return m == Model::Matrix ? "matrix" : "orthonormal"; }

QuadricModel QuadricModel::make(const Field& F, Model kind) {
  QuadricModel M{kind, FMatrix(5, F.zero())};
  if (kind == Model::Matrix) {
    const Elem half = F.inv(F.from_int(2));
    M.gram(0, 0) = F.one();
    M.gram(1, 4) = M.gram(4, 1) = F.neg(half);
    M.gram(2, 3) = M.gram(3, 2) = half;
  } else {
    M.gram(0, 0) = F.neg(F.one());
    for (int i = 1; i < 5; ++i) M.gram(i, i) = F.one();
  }
  return M;
}

Elem polar_form(const Field& F, const QuadricModel& M, const ProjectivePoint5& P, const ProjectivePoint5& Q) {
  Elem s = F.zero();
  for (int i = 0; i < 5; ++i) {
    if (P.x[static_cast<std::size_t>(i)].is_zero()) continue;
    Elem row = F.zero();
    for (int j = 0; j < 5; ++j) row = F.add(row, F.mul(M.gram(i, j), Q.x[static_cast<std::size_t>(j)]));
    s = F.add(s, F.mul(P.x[static_cast<std::size_t>(i)], row));
  }
  return s;
}

Elem quadratic_form(const Field& F, const QuadricModel& M, const ProjectivePoint5& P) { return polar_form(F, M, P, P); }

bool on_quadric(const Field& F, const QuadricModel& M, const ProjectivePoint5& P) { return quadratic_form(F, M, P).is_zero(); }

std::vector<ProjectivePoint5> quadric_points(const Field& F, const QuadricModel& M) {
  std::vector<ProjectivePoint5> out;
  const int q = F.q();
  for (int lead = 0; lead < 5; ++lead) {
    int tail = 1;
    for (int k = lead + 1; k < 5; ++k) tail *= q;
    for (int code = 0; code < tail; ++code) {
      ProjectivePoint5 P;
      P.x[static_cast<std::size_t>(lead)] = F.one();
      int c = code;
      for (int k = 4; k > lead; --k) {
        P.x[static_cast<std::size_t>(k)] = Elem{static_cast<std::uint16_t>(c % q)};
        c /= q;
      }
      if (on_quadric(F, M, P)) out.push_back(P);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* section_kind_name(SectionKind k) noexcept {
  switch (k) {
    case SectionKind::Elliptic: return "elliptic";
    case SectionKind::Hyperbolic: return "hyperbolic";
    case SectionKind::Cone: return "cone";
  }
  return "?";
}

TraceSection trace_section(const Field& F, Elem t) {
  TraceSection S{t, SectionKind::Cone, {}};
  switch (F.discriminant(t)) {
    case -1: S.kind = SectionKind::Elliptic; break;
    case 1: S.kind = SectionKind::Hyperbolic; break;
    default: S.kind = SectionKind::Cone; break;
  }
  for (const Mat2& X : enumerate_sl2(F))
    if (mat::trace(F, X) == t) S.points.push_back(X);
  return S;
}

int section_at_infinity_size(const Field& F, Elem t) {
  // Points (0, X1, X2, X3, X4) of PG(4,q) with X1 + X4 = 0 (t X0 vanishes)
  // and X1 X4 - X2 X3 = 0. t only enters through X0, which is zero here.
  (void)t;
  const QuadricModel M = QuadricModel::make(F, Model::Matrix);
  int count = 0;
  for (const auto& P : quadric_points(F, M))
    if (P.x[0].is_zero() && F.add(P.x[1], P.x[4]).is_zero()) ++count;
  return count;
}

std::vector<std::vector<ProjectivePoint5>> pi_infinity_lines(const Field& F) {
  const QuadricModel M = QuadricModel::make(F, Model::Matrix);
  std::vector<ProjectivePoint5> at_inf;
  for (const auto& P : quadric_points(F, M))
    if (P.x[0].is_zero()) at_inf.push_back(P);

  std::set<std::vector<ProjectivePoint5>> lines;
  for (std::size_t i = 0; i < at_inf.size(); ++i)
    for (std::size_t j = i + 1; j < at_inf.size(); ++j) {
      if (!polar_form(F, M, at_inf[i], at_inf[j]).is_zero()) continue;
      std::vector<ProjectivePoint5> line{at_inf[i]};
      for (Elem k : F.elements()) {
        std::array<Elem, 5> x{};
        for (std::size_t c = 0; c < 5; ++c) x[c] = F.add(at_inf[j].x[c], F.mul(k, at_inf[i].x[c]));
        line.push_back(normalize(F, x));
      }
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  return {lines.begin(), lines.end()};
}

namespace {

// Returns R with R^T A R diagonal, entries (1, ..., 1, d), d in {1, nonsquare}.
FMatrix normal_form_basis(const Field& F, const FMatrix& A, Elem& last) {
  const int n = A.n;
  FMatrix R = FMatrix::identity(F, n);
  FMatrix G = A;

  auto apply = [&](const FMatrix& T) {
    G = fm_mul(F, fm_mul(F, fm_transpose(T), G), T);
    R = fm_mul(F, R, T);
  };

  for (int c = 0; c < n; ++c) {
    if (G(c, c).is_zero()) {
      int j = c + 1;
      while (j < n && G(c, j).is_zero()) ++j;
      if (j == n) throw DomainError("degenerate quadratic form");
      // e_c <- e_c + e_j gives a non-zero diagonal entry 2 G(c,j) + G(j,j)
      // or, failing that, e_c + 2 e_j would; try both.
      FMatrix T = FMatrix::identity(F, n);
      T(j, c) = F.one();
      FMatrix G1 = fm_mul(F, fm_mul(F, fm_transpose(T), G), T);
      if (G1(c, c).is_zero()) T(j, c) = F.from_int(2);
      apply(T);
      if (G(c, c).is_zero()) throw DomainError("degenerate quadratic form");
    }
    FMatrix T = FMatrix::identity(F, n);
    const Elem inv = F.inv(G(c, c));
    for (int j = c + 1; j < n; ++j) T(c, j) = F.neg(F.mul(inv, G(c, j)));
    apply(T);
  }

  // Scale each diagonal entry to 1 or the fixed non-square.
  const Elem nu = F.nonsquare();
  {
    FMatrix T = FMatrix::identity(F, n);
    for (int c = 0; c < n; ++c) {
      const Elem d = G(c, c);
      const Elem target = F.is_square(d) ? F.one() : nu;
      T(c, c) = F.sqrt(F.div(target, d));
    }
    apply(T);
  }

  // Pair up non-squares: diag(nu, nu) ~ diag(1, 1) via a^2 + b^2 = 1/nu.
  Elem a = F.zero(), b = F.zero();
  {
    const Elem target = F.inv(nu);
    bool found = false;
    for (Elem x : F.elements()) {
      for (Elem y : F.elements())
        if (F.add(F.mul(x, x), F.mul(y, y)) == target) {
          a = x;
          b = y;
          found = true;
          break;
        }
      if (found) break;
    }
  }
  std::vector<int> nonsq;
  for (int c = 0; c < n; ++c)
    if (G(c, c) != F.one()) nonsq.push_back(c);
  for (std::size_t k = 0; k + 1 < nonsq.size(); k += 2) {
    const int i = nonsq[k], j = nonsq[k + 1];
    FMatrix T = FMatrix::identity(F, n);
    T(i, i) = a;
    T(i, j) = F.neg(b);
    T(j, i) = b;
    T(j, j) = a;
    apply(T);
  }
  // Move a remaining non-square to the last slot.
  if (nonsq.size() % 2 == 1 && nonsq.back() != n - 1) {
    FMatrix T(n, F.zero());
    const int i = nonsq.back();
    for (int c = 0; c < n; ++c) T(c, c) = F.one();
    T(i, i) = T(n - 1, n - 1) = F.zero();
    T(i, n - 1) = T(n - 1, i) = F.one();
    apply(T);
  }
  last = G(n - 1, n - 1);
  return R;
}

}  // namespace

Congruence congruence_transform(const Field& F, const FMatrix& A, const FMatrix& B, bool require_square_scalar) {
  if (A.n != B.n || A.n == 0) throw IncompatibleFormsError("forms of different dimension");
  if (fm_det(F, A).is_zero() || fm_det(F, B).is_zero()) throw IncompatibleFormsError("degenerate form");
  Elem lambda = F.one();
  FMatrix Bs = B;
  const bool same_class = F.is_square(fm_det(F, A)) == F.is_square(fm_det(F, B));
  if (!same_class) {
    if (require_square_scalar || A.n % 2 == 0)
      throw IncompatibleFormsError("determinants lie in different square classes");
    lambda = F.nonsquare();
    Bs = fm_scale(F, lambda, B);
  }
  Elem la, lb;
  const FMatrix RA = normal_form_basis(F, A, la);
  const FMatrix RB = normal_form_basis(F, Bs, lb);
  if (la != lb) throw IncompatibleFormsError("normal forms differ");
  // RA^T A RA = RB^T Bs RB  =>  P = RA RB^-1.
  return Congruence{fm_mul(F, RA, fm_inverse(F, RB)), lambda};
}

}  // namespace ovoid
