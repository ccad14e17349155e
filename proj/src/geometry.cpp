#include "sdarray/geometry.hpp"

#include <cmath>

#include "sdarray/error.hpp"

namespace sdarray {

ArrayLayout::ArrayLayout(LayoutKind kind, int groups, int per_group, double intra, double inter)
    : kind_(kind), groups_(groups), per_group_(per_group), intra_(intra), inter_(inter) {
  positions_.reserve(static_cast<std::size_t>(groups) * per_group);
  for (int g = 0; g < groups; ++g)
    for (int n = 0; n < per_group; ++n) positions_.push_back(n * intra + g * group_period());
}

ArrayLayout ArrayLayout::ula(int elements, double spacing) {
  require(elements >= 1, "ULA needs at least one element");
  require(spacing > 0.0 || elements == 1, "ULA spacing must be positive");
  return ArrayLayout(LayoutKind::ula, elements, 1, spacing, spacing);
}

ArrayLayout ArrayLayout::nula(int groups, int per_group, double intra_spacing,
                              double inter_spacing) {
  require(groups >= 1 && per_group >= 1, "NULA needs at least one group of one element");
  require(intra_spacing > 0.0 || per_group == 1, "NULA intra-group spacing must be positive");
  require(inter_spacing > 0.0 || groups == 1, "NULA inter-group spacing must be positive");
  return ArrayLayout(LayoutKind::nula, groups, per_group, intra_spacing, inter_spacing);
}

CVector steering_vector(const ArrayLayout& layout, double wavenumber, double theta) {
  const double c = std::cos(theta);
  CVector a(layout.size());
  for (int n = 0; n < layout.size(); ++n) a(n) = std::polar(1.0, -wavenumber * layout.positions()[n] * c);
  return a;
}

CVector intra_group_steering(const ArrayLayout& layout, double wavenumber, double theta) {
  const double c = std::cos(theta);
  CVector a(layout.per_group());
  for (int n = 0; n < layout.per_group(); ++n)
    a(n) = std::polar(1.0, -wavenumber * n * layout.intra_spacing() * c);
  return a;
}

CVector inter_group_steering(const ArrayLayout& layout, double wavenumber, double theta) {
  const double c = std::cos(theta);
  CVector a(layout.groups());
  for (int g = 0; g < layout.groups(); ++g)
    a(g) = std::polar(1.0, -wavenumber * g * layout.group_period() * c);
  return a;
}

CMatrix assemble_block_impedance(const CMatrix& z0, int groups) {
  require(z0.rows() == z0.cols(), "assemble_block_impedance: Z_0 must be square");
  require(groups >= 1, "assemble_block_impedance: need at least one group");
  return kron(CMatrix::Identity(groups, groups), z0);
}

double array_length(const ArrayLayout& layout) {
  const int g = layout.groups();
  return g * (layout.per_group() - 1) * layout.intra_spacing() + (g - 1) * layout.inter_spacing();
}

double block_diag_error(const CMatrix& exact, const CMatrix& approx) {
  require(exact.rows() == approx.rows() && exact.cols() == approx.cols(),
          "block_diag_error: dimension mismatch");
  const double denom = exact.norm();
  require(denom > 0.0, "block_diag_error: exact matrix is zero");
  return (exact - approx).norm() / denom;
}

}  // namespace sdarray
