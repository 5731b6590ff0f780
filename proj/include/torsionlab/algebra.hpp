#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torsionlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Default relative tolerance for rank decisions and criticality tests.
inline constexpr double kDefaultTol = 1e-9;

/// Thrown when a computation fails for numerical reasons (failed
/// factorization, loss of positive definiteness) as opposed to a
/// malformed input.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense 3-index tensor with the "upper" index first: t(a, i, k).
template <typename Scalar>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, Scalar{}) {}

  int dim() const { return n_; }

  Scalar& operator()(int a, int i, int k) { return data_[index(a, i, k)]; }
  const Scalar& operator()(int a, int i, int k) const { return data_[index(a, i, k)]; }

  double max_abs() const {
    double m = 0.0;
    for (const Scalar& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const Scalar& v : data_) s += std::norm(v);
    return s;
  }

 private:
  std::size_t index(int a, int i, int k) const {
    return (static_cast<std::size_t>(a) * n_ + i) * n_ + k;
  }

  int n_ = 0;
  std::vector<Scalar> data_;
};

using ComplexTensor3 = Tensor3<Complex>;
using RealTensor3 = Tensor3<double>;

struct StructureConstants;

/// Structure constants of a real Lie algebra: [u_i, u_k] = sum_j S(j,i,k) u_j.
struct RealStructureConstants {
  int dim = 0;
  RealTensor3 S;

  static RealStructureConstants zero(int n) { return {n, RealTensor3(n)}; }

  /// Sets [u_i, u_k] += v u_j together with the antisymmetric partner.
  void set_bracket(int i, int k, int j, double v) {
    S(j, i, k) = v;
    S(j, k, i) = -v;
  }

  StructureConstants complexified() const;
};

/// Structure constants of a complex Lie algebra: [x_i, x_j] = sum_k c(k,i,j) x_k.
///
/// Antisymmetry c(k,i,j) = -c(k,j,i) holds exactly after construction; the
/// Jacobi identity is a property of the data and is checked separately.
struct StructureConstants {
  int dim = 0;
  ComplexTensor3 c;

  static StructureConstants zero(int n) { return {n, ComplexTensor3(n)}; }

  /// Ingests a raw tensor, verifying antisymmetry to `tol` and then
  /// enforcing it exactly.
  static StructureConstants from_tensor(const ComplexTensor3& t, double tol = kDefaultTol) {
    const int n = t.dim();
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(t(k, i, j) + t(k, j, i)));
    if (worst > tol * std::max(1.0, t.max_abs()))
      throw std::invalid_argument("structure constants are not antisymmetric in the lower indices");
    StructureConstants out = zero(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.c(k, i, j) = 0.5 * (t(k, i, j) - t(k, j, i));
    return out;
  }

  /// Sets [x_i, x_j] += v x_k together with the antisymmetric partner.
  void set_bracket(int i, int j, int k, Complex v) {
    c(k, i, j) = v;
    c(k, j, i) = -v;
  }
};

inline StructureConstants RealStructureConstants::complexified() const {
  StructureConstants out = StructureConstants::zero(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) out.c(j, i, k) = S(j, i, k);
  return out;
}

/// A linear subspace of the algebra, spanned by the columns of `basis`.
struct Subspace {
  int ambient_dim = 0;
  Matrix basis;  // ambient_dim x r

  int dim() const { return static_cast<int>(basis.cols()); }

  static Subspace from_vectors(int ambient, const std::vector<Vector>& vectors,
                               double tol = kDefaultTol) {
    Matrix m(ambient, static_cast<int>(vectors.size()));
    for (std::size_t v = 0; v < vectors.size(); ++v) {
      if (vectors[v].size() != ambient) throw std::invalid_argument("subspace vector has wrong length");
      m.col(static_cast<int>(v)) = vectors[v];
    }
    if (!vectors.empty()) {
      Eigen::JacobiSVD<Matrix> svd(m);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) <= tol * sv(0))
        throw std::invalid_argument("subspace basis vectors are linearly dependent");
    }
    return {ambient, std::move(m)};
  }
};

/// Cartan-Killing matrix K_ij = tr(ad_{x_i} ad_{x_j}); complex symmetric.
struct KillingMatrix {
  Matrix K;
};

inline Vector bracket(const StructureConstants& c, const Vector& x, const Vector& y) {
  const int n = c.dim;
  if (x.size() != n || y.size() != n) throw std::invalid_argument("bracket: vector length does not match algebra dimension");
  Vector out = Vector::Zero(n);
  for (int k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x(i) == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) s += c.c(k, i, j) * x(i) * y(j);
    }
    out(k) = s;
  }
  return out;
}

/// Max-norm residual of the Jacobi identity over all index quadruples.
inline double jacobi_residual(const StructureConstants& c) {
  const int n = c.dim;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex s = 0.0;
          for (int m = 0; m < n; ++m)
            s += c.c(m, i, j) * c.c(l, m, k) + c.c(m, j, k) * c.c(l, m, i) +
                 c.c(m, k, i) * c.c(l, m, j);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

/// Matrix of ad_x, i.e. M y = [x, y].
inline Matrix adjoint_matrix(const StructureConstants& c, const Vector& x) {
  const int n = c.dim;
  if (x.size() != n) throw std::invalid_argument("adjoint_matrix: vector length does not match algebra dimension");
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i) s += c.c(k, i, j) * x(i);
      m(k, j) = s;
    }
  return m;
}

inline KillingMatrix killing_form(const StructureConstants& c) {
  const int n = c.dim;
  Matrix k = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t) s += c.c(t, i, r) * c.c(r, j, t);
      k(i, j) = s;
    }
  k = 0.5 * (k + k.transpose()).eval();  // symmetric exactly
  return {std::move(k)};
}

/// Cartan's criterion: semi-simple iff the Killing form is nondegenerate.
/// Degeneracy is decided by the singular-value ratio of K.
inline bool is_semisimple(const StructureConstants& c, double tol = kDefaultTol) {
  if (jacobi_residual(c) > tol * std::max(1.0, c.c.max_abs()))
    throw std::invalid_argument("is_semisimple: structure constants violate the Jacobi identity");
  const Matrix K = killing_form(c).K;
  Eigen::JacobiSVD<Matrix> svd(K);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return false;
  return sv(sv.size() - 1) > tol * sv(0);
}

/// Center {x : [x, y] = 0 for all y}, as the nullspace of the stacked
/// linear map x -> ([x_i, x])_i.
inline Subspace center(const StructureConstants& c, double tol = kDefaultTol) {
  const int n = c.dim;
  Matrix m(n * n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(k * n + i, j) = c.c(k, i, j);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 && sv(0) > 0.0) ? tol * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  Subspace out;
  out.ambient_dim = n;
  out.basis = svd.matrixV().rightCols(n - rank);
  return out;
}

/// True iff [g, a] is contained in a and [a, a] = 0, both to `tol`.
inline bool is_abelian_ideal(const StructureConstants& c, const Subspace& a,
                             double tol = kDefaultTol) {
  const int n = c.dim;
  const int r = a.dim();
  if (a.ambient_dim != n) throw std::invalid_argument("is_abelian_ideal: subspace ambient dimension mismatch");
  if (r < 1 || r > n) throw std::invalid_argument("is_abelian_ideal: subspace dimension must be between 1 and n");
  Eigen::JacobiSVD<Matrix> svd(a.basis, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol * sv(0))
    throw std::invalid_argument("is_abelian_ideal: degenerate subspace basis");
  const Matrix q = svd.matrixU();  // orthonormal basis of a

  // [g, a] subset a: residual of projecting brackets back onto a.
  for (int i = 0; i < n; ++i) {
    Vector ei = Vector::Zero(n);
    ei(i) = 1.0;
    for (int col = 0; col < r; ++col) {
      Vector w = bracket(c, ei, q.col(col));
      Vector residual = w - q * (q.adjoint() * w);
      if (residual.norm() > tol * std::max(1.0, w.norm())) return false;
    }
  }
  // [a, a] = 0.
  for (int p = 0; p < r; ++p)
    for (int s = p + 1; s < r; ++s)
      if (bracket(c, q.col(p), q.col(s)).norm() > tol) return false;
  return true;
}

inline StructureConstants direct_sum(const StructureConstants& c1, const StructureConstants& c2) {
  const int n1 = c1.dim, n2 = c2.dim;
  StructureConstants out = StructureConstants::zero(n1 + n2);
  for (int k = 0; k < n1; ++k)
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) out.c(k, i, j) = c1.c(k, i, j);
  for (int k = 0; k < n2; ++k)
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) out.c(n1 + k, n1 + i, n1 + j) = c2.c(k, i, j);
  return out;
}

/// Recovers abstract structure constants from a matrix realization: each
/// pairwise commutator is expressed in the span of the generators by least
/// squares. Fails if the generators are dependent or the span is not closed
/// under the commutator.
inline StructureConstants from_matrix_generators(const std::vector<Matrix>& mats,
                                                 double tol = kDefaultTol) {
  const int n = static_cast<int>(mats.size());
  if (n == 0) throw std::invalid_argument("from_matrix_generators: no generators");
  const auto rows = mats[0].rows(), cols = mats[0].cols();
  Matrix g(rows * cols, n);
  for (int a = 0; a < n; ++a) {
    if (mats[a].rows() != rows || mats[a].cols() != cols)
      throw std::invalid_argument("from_matrix_generators: generators have mismatched shapes");
    g.col(a) = mats[a].reshaped();
  }
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol * sv(0))
    throw std::invalid_argument("from_matrix_generators: generators are linearly dependent");

  StructureConstants out = StructureConstants::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Matrix comm = mats[i] * mats[j] - mats[j] * mats[i];
      const Vector rhs = comm.reshaped();
      const Vector coeff = svd.solve(rhs);
      if ((g * coeff - rhs).norm() > tol * std::max(1.0, rhs.norm()))
        throw std::invalid_argument("from_matrix_generators: span is not closed under the commutator");
      for (int k = 0; k < n; ++k) out.set_bracket(i, j, k, coeff(k));
    }
  return out;
}

}  // namespace torsionlab
