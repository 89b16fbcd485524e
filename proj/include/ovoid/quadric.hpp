#ifndef OVOID_QUADRIC_HPP
#define OVOID_QUADRIC_HPP

#include <array>
#include <vector>

#include "ovoid/field.hpp"
#include "ovoid/sl2.hpp"

namespace ovoid {

// Homogeneous point of PG(4,q); first non-zero coordinate is 1.
struct ProjectivePoint5 {
  std::array<Elem, 5> x{};
  friend auto operator<=>(const ProjectivePoint5&, const ProjectivePoint5&) = default;
};

// Throws DomainError for the zero vector.
ProjectivePoint5 normalize(const Field& F, std::array<Elem, 5> x);
// (1, X1, X2, X3, X4) for a matrix or an orthonormal-model affine point.
ProjectivePoint5 affine_point(const Mat2& X);

// Dense square matrix over GF(q), row-major.
struct FMatrix {
  int n = 0;
  std::vector<Elem> a;

  FMatrix() = default;
  FMatrix(int dim, Elem fill) : n(dim), a(static_cast<std::size_t>(dim * dim), fill) {}
  Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  Elem operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  bool operator==(const FMatrix&) const = default;

  static FMatrix identity(const Field& F, int dim);
  static FMatrix diagonal(const Field& F, const std::vector<long long>& d);
};

FMatrix fm_mul(const Field& F, const FMatrix& A, const FMatrix& B);
FMatrix fm_transpose(const FMatrix& A);
FMatrix fm_scale(const Field& F, Elem k, const FMatrix& A);
Elem fm_det(const Field& F, FMatrix A);
// Throws DomainError when singular.
FMatrix fm_inverse(const Field& F, const FMatrix& A);

enum class Model { Matrix, Orthonormal };
const char* model_name(Model m) noexcept;

// Quadric Q(4,q) given by Q(x) = x^T gram x.
struct QuadricModel {
  Model kind = Model::Matrix;
  FMatrix gram;

  // Matrix model X0^2 - X1X4 + X2X3, orthonormal model X1^2+..+X4^2 - X0^2.
  static QuadricModel make(const Field& F, Model kind);
};

Elem quadratic_form(const Field& F, const QuadricModel& M, const ProjectivePoint5& P);
bool on_quadric(const Field& F, const QuadricModel& M, const ProjectivePoint5& P);
// x^T gram y; two distinct quadric points span a quadric line iff this is 0.
Elem polar_form(const Field& F, const QuadricModel& M, const ProjectivePoint5& P, const ProjectivePoint5& Q);

// All projective points of the quadric, sorted.
std::vector<ProjectivePoint5> quadric_points(const Field& F, const QuadricModel& M);

enum class SectionKind { Elliptic, Hyperbolic, Cone };
const char* section_kind_name(SectionKind k) noexcept;

struct TraceSection {
  Elem t;
  SectionKind kind = SectionKind::Cone;
  std::vector<Mat2> points;  // SL(2,q) elements of trace t, sorted
};

TraceSection trace_section(const Field& F, Elem t);
// Number of points of the hyperplane section X1 + X4 = t X0 lying in X0 = 0,
// counted directly in PG(3,q).
int section_at_infinity_size(const Field& F, Elem t);

// Lines of Q(4,q) inside X0 = 0, each as a sorted list of q+1 points.
std::vector<std::vector<ProjectivePoint5>> pi_infinity_lines(const Field& F);

struct Congruence {
  FMatrix P;      // P^T gram(A) P = lambda gram(B)
  Elem lambda;
};

// Requires equal dimension and non-degenerate forms. With
// `require_square_scalar`, lambda is forced to 1 and forms whose
// determinants lie in different square classes are rejected. Otherwise a
// non-square lambda is used when the classes differ and the dimension is odd.
// Throws IncompatibleFormsError when no admissible transform exists.
Congruence congruence_transform(const Field& F, const FMatrix& A, const FMatrix& B, bool require_square_scalar = false);

}  // namespace ovoid

#endif  // OVOID_QUADRIC_HPP
