#pragma once

// Dipole physics: field pattern, ohmic loss, element gain, and self/mutual
// impedance of x-directed center-fed dipoles placed side by side on the z-axis.
// Two independent routes to the resistive coupling are provided: the
// radiated-power integral over the sphere, and the induced-EMF closed form.

#include <vector>

#include "sdarray/geometry.hpp"
#include "sdarray/linalg.hpp"

namespace sdarray {

struct DipoleSpec {
  double length = 0.0;        // m
  double radius = 0.0;        // m
  double conductivity = 0.0;  // S/m, +inf for a perfect conductor
  double frequency = 0.0;     // Hz

  static DipoleSpec from_wavelengths(double frequency, double length_wl, double radius_wl,
                                     double conductivity);
  /// Half-wave copper dipole of radius λ/500 at 300 GHz.
  static DipoleSpec reference();

  double wavelength() const;
  double wavenumber() const;
  /// κℓ/2
  double half_phase() const { return 0.5 * wavenumber() * length; }

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Components of F(θ, φ) along e_θ and e_φ. The pattern of a sinusoidal
/// current distribution is real-valued.
struct SphericalField {
  double f_theta = 0.0;
  double f_phi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double norm2() const { return f_theta * f_theta + f_phi * f_phi; }
};

SphericalField field_pattern(const DipoleSpec& dipole, double theta, double phi);

/// ‖F‖² written in terms of cosψ = cosφ·sinθ (ψ measured from the dipole axis)
/// with the numerator in a cancellation-free form. Returns 0 on the axis.
double pattern_norm2(const DipoleSpec& dipole, double cos_psi);

/// Ohmic loss resistance referred to the input current.
double loss_resistance(const DipoleSpec& dipole);

/// Lossless induced-EMF mutual impedance of two identical side-by-side
/// dipoles at distance d, referred to the input currents.
cdouble mutual_impedance(const DipoleSpec& dipole, double spacing);

/// Z_self = R_loss + Z_emf(ρ): the finite radius enters through the
/// self-coupling distance.
cdouble self_impedance(const DipoleSpec& dipole);

struct ElementImpedance {
  cdouble self_impedance;
  double loss_resistance = 0.0;
  double input_resistance = 0.0;  // R_i = Re{Z_self} − R_loss
  double self_resistance() const { return loss_resistance + input_resistance; }
};

ElementImpedance element_impedance(const DipoleSpec& dipole);

/// G_e(θ, φ) = η‖F‖² / (π(R_loss + R_i)).
double element_gain(const DipoleSpec& dipole, const ElementImpedance& element, double theta,
                    double phi);

struct QuadratureOptions {
  double relative_tolerance = 1e-6;  // relative to R_i
  int max_order = 1 << 15;
};

struct CouplingResistances {
  std::vector<double> values;  // Re{Z_ideal} at each requested spacing, ohms
  double error_estimate = 0.0;
  int order_u = 0;
  int order_phi = 0;
};

/// Radiated-power integral (η/4π²)∫∫ cos(κΔ cosθ)‖F‖² sinθ dθ dφ for each
/// spacing Δ ≥ 0, refined by doubling the Gauss-Legendre order until the
/// largest change falls below the tolerance.
CouplingResistances coupling_resistances(const DipoleSpec& dipole,
                                         const std::vector<double>& spacings,
                                         const QuadratureOptions& options = {});

struct RealImpedanceMatrix {
  RMatrix re_ideal;  // Re{Z_ideal}, ohms
  double error_estimate = 0.0;
  int order_u = 0;
  int order_phi = 0;
};

/// Re{Z_ideal} for a layout by quadrature. Fails if Re{Z_ideal} + R_loss·I is
/// not positive definite.
RealImpedanceMatrix impedance_real_quadrature(const ArrayLayout& layout, const DipoleSpec& dipole,
                                              const QuadratureOptions& options = {});

struct PowerBalance {
  double radiated = 0.0;
  double loss = 0.0;
  double input = 0.0;
};

PowerBalance radiated_and_input_power(const CVector& currents, const RMatrix& re_ideal,
                                      double r_loss);

enum class Coupling { exact, block, none };

/// Complex input impedance of the lossy array together with the
/// normalisation R_loss + R_i used for Z̄.
struct ImpedanceMatrix {
  CMatrix z;
  double normalization = 1.0;

  RMatrix re() const { return z.real(); }
  RMatrix re_normalized() const { return z.real() / normalization; }
};

/// exact: Re from quadrature, Im from induced EMF, full coupling.
/// block: same entries, inter-group blocks zeroed (I_{N_g} ⊗ Z_0).
/// none:  Z_self·I.
ImpedanceMatrix array_impedance(const ArrayLayout& layout, const DipoleSpec& dipole,
                                Coupling coupling, const QuadratureOptions& options = {});

/// Z_0 of a two-element pair at spacing d̄ from the induced-EMF method.
CMatrix pair_impedance_emf(const DipoleSpec& dipole, double spacing);

}  // namespace sdarray
