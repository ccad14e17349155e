#pragma once

#include <vector>

#include "sdarray/linalg.hpp"

namespace sdarray {

enum class LayoutKind { ula, nula };

/// Element placement on the z-axis. A ULA is stored as N groups of one
/// element, so the group accessors are meaningful for both kinds.
class ArrayLayout {
 public:
  static ArrayLayout ula(int elements, double spacing);
  static ArrayLayout nula(int groups, int per_group, double intra_spacing, double inter_spacing);

  LayoutKind kind() const { return kind_; }
  int size() const { return static_cast<int>(positions_.size()); }
  int groups() const { return groups_; }
  int per_group() const { return per_group_; }
  /// d for a ULA, d̄ for a NULA.
  double intra_spacing() const { return intra_; }
  /// d for a ULA, d_g for a NULA.
  double inter_spacing() const { return inter_; }
  /// Offset between corresponding elements of adjacent groups: d_g + (N̄−1)d̄.
  double group_period() const { return inter_ + (per_group_ - 1) * intra_; }
  const std::vector<double>& positions() const { return positions_; }

 private:
  ArrayLayout(LayoutKind kind, int groups, int per_group, double intra, double inter);

  LayoutKind kind_;
  int groups_;
  int per_group_;
  double intra_;
  double inter_;
  std::vector<double> positions_;
};

/// a(θ) with entries exp(−jκ z_n cosθ).
CVector steering_vector(const ArrayLayout& layout, double wavenumber, double theta);
/// a_0(θ): response of group 0 (length N̄).
CVector intra_group_steering(const ArrayLayout& layout, double wavenumber, double theta);
/// a_g(θ): inter-group phase progression (length N_g).
CVector inter_group_steering(const ArrayLayout& layout, double wavenumber, double theta);

/// I_{N_g} ⊗ Z_0.
CMatrix assemble_block_impedance(const CMatrix& z0, int groups);

/// Physical end-to-end length of the array in meters.
double array_length(const ArrayLayout& layout);

/// ‖Z_exact − Z_approx‖_F / ‖Z_exact‖_F.
double block_diag_error(const CMatrix& exact, const CMatrix& approx);

}  // namespace sdarray
