#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sdarray {

using cdouble = std::complex<double>;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cdouble kJ{0.0, 1.0};

/// Eigendecomposition of a real symmetric positive-definite matrix with the
/// functional calculus the array model needs (inverse, square root, inverse
/// square root). Construction throws NumericalError if the matrix is not
/// symmetric positive definite; the message names the offending eigenvalue.
class SpdSpectrum {
 public:
  /// `relative_floor` bounds the smallest admissible eigenvalue relative to the
  /// largest. Eigenvalues in [-floor, floor] are clamped to `floor` only when
  /// `clamp` is set (used by the matrix square root); otherwise they are errors.
  explicit SpdSpectrum(const RMatrix& a, double relative_floor = 1e-12, bool clamp = false);

  const RVector& eigenvalues() const { return values_; }
  const RMatrix& eigenvectors() const { return vectors_; }
  double min_eigenvalue() const { return values_.minCoeff(); }

  RMatrix power(double exponent) const;
  RMatrix inverse() const { return power(-1.0); }
  RMatrix sqrt() const { return power(0.5); }
  RMatrix inv_sqrt() const { return power(-0.5); }

  /// Solves A x = b.
  CVector solve(const CVector& b) const;

 private:
  RVector values_;
  RMatrix vectors_;
};

/// Kronecker product of two complex matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Hermitian form x^H A y for real symmetric A.
cdouble hermitian_form(const CVector& x, const RMatrix& a, const CVector& y);

}  // namespace sdarray
