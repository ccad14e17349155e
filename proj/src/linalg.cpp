#include "sdarray/linalg.hpp"

#include <cmath>
#include <sstream>

#include "sdarray/error.hpp"

namespace sdarray {

SpdSpectrum::SpdSpectrum(const RMatrix& a, double relative_floor, bool clamp) {
  require(a.rows() == a.cols() && a.rows() > 0, "SpdSpectrum: matrix must be square and non-empty");
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  const double scale = a.cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (max |A - A^T| = " << asym << ")";
    throw NumericalError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (a + a.transpose()));
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();

  const double floor = relative_floor * values_.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    const double ev = values_(k);
    if (ev > floor) continue;
    if (clamp && ev >= -floor) {
      values_(k) = floor;
      continue;
    }
    std::ostringstream msg;
    msg << "matrix is not positive definite: eigenvalue #" << k << " = " << ev
        << " (floor " << floor << ")";
    throw NumericalError(msg.str());
  }
}

RMatrix SpdSpectrum::power(double exponent) const {
  const RVector scaled = values_.array().pow(exponent);
  return vectors_ * scaled.asDiagonal() * vectors_.transpose();
}

CVector SpdSpectrum::solve(const CVector& b) const {
  const CVector projected = vectors_.transpose().cast<cdouble>() * b;
  const CVector scaled = projected.cwiseQuotient(values_.cast<cdouble>());
  return vectors_.cast<cdouble>() * scaled;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

cdouble hermitian_form(const CVector& x, const RMatrix& a, const CVector& y) {
  return x.dot(a.cast<cdouble>() * y);  // Eigen's dot conjugates the first argument
}

}  // namespace sdarray
