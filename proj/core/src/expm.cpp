#include <unsupported/Eigen/MatrixFunctions>

#include "mlion/communicability.hpp"
#include "mlion/errors.hpp"

namespace mlion {

namespace {

void require_finite(const Matrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("expm needs a square matrix");
  if (!m.allFinite()) throw ArgumentError("expm input contains a non-finite entry");
}

}  // namespace

Matrix expm_symmetric(const Matrix& m) {
  require_finite(m);
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) throw ArgumentError("symmetric eigendecomposition failed");
  const Matrix& v = eig.eigenvectors();
  const Vector e = eig.eigenvalues().array().exp().matrix();
  Matrix g = v * e.asDiagonal() * v.transpose();
  return 0.5 * (g + g.transpose());
}

Matrix expm_general(const Matrix& m) {
  require_finite(m);
  if (m.size() == 0) return m;
  // Eigen's implementation is Higham's scaling and squaring with a degree-13
  // Pade approximant for double precision.
  return m.exp();
}

Matrix expm(const Matrix& m) {
  require_finite(m);
  return is_symmetric(m) ? expm_symmetric(m) : expm_general(m);
}

}  // namespace mlion
