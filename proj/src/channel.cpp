#include "sdarray/channel.hpp"

#include <utility>

#include "sdarray/error.hpp"

namespace sdarray {

ChannelModel::ChannelModel(ArrayLayout layout, double wavenumber)
    : layout_(std::move(layout)), wavenumber_(wavenumber) {}

ChannelModel::ChannelModel(ArrayLayout layout, double wavenumber, const RMatrix& re_normalized)
    : layout_(std::move(layout)), wavenumber_(wavenumber), re_(re_normalized) {
  require(re_normalized.rows() == layout_.size() && re_normalized.cols() == layout_.size(),
          "ChannelModel: impedance dimension does not match the layout");
  shaping_ = SpdSpectrum(re_normalized).inv_sqrt();
}

RMatrix ChannelModel::re_normalized() const {
  return re_ ? *re_ : RMatrix::Identity(size(), size());
}

CVector ChannelModel::channel(double theta) const {
  return shape(steering_vector(layout_, wavenumber_, theta));
}

CVector ChannelModel::shape(const CVector& a) const {
  if (!shaping_) return a;
  const RVector re = *shaping_ * a.real();
  const RVector im = *shaping_ * a.imag();
  CVector out(a.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

}  // namespace sdarray
