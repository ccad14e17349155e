#pragma once

#include <optional>

#include "sdarray/geometry.hpp"
#include "sdarray/linalg.hpp"

namespace sdarray {

/// Small-scale LoS channel h(θ) = Re{Z̄}^{-1/2} a(θ). Without a coupling
/// matrix Re{Z̄} = I and h(θ) = a(θ).
class ChannelModel {
 public:
  ChannelModel(ArrayLayout layout, double wavenumber);
  ChannelModel(ArrayLayout layout, double wavenumber, const RMatrix& re_normalized);

  const ArrayLayout& layout() const { return layout_; }
  int size() const { return layout_.size(); }
  double wavenumber() const { return wavenumber_; }
  bool coupled() const { return shaping_.has_value(); }
  /// Re{Z̄}, identity when uncoupled.
  RMatrix re_normalized() const;

  CVector channel(double theta) const;
  CVector shape(const CVector& a) const;

 private:
  ArrayLayout layout_;
  double wavenumber_;
  std::optional<RMatrix> re_;
  std::optional<RMatrix> shaping_;
};

}  // namespace sdarray
