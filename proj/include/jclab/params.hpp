#pragma once

#include <complex>

namespace jclab {

using Complex = std::complex<double>;

/// Physical inputs of the model: coupling g, cavity decay rate k and the
/// Bloch angles (theta, phi) of the initial atomic pure state
/// cos(theta/2)|+> + e^{i phi} sin(theta/2)|->.
struct SystemParams {
  double g = 1.0;      ///< atom-field coupling rate, g > 0
  double k = 1.0;      ///< cavity decay rate, k >= 0
  double theta = 0.0;  ///< polar angle in [0, pi]
  double phi = 0.0;    ///< azimuthal angle in [0, 2*pi)

  /// Throws std::invalid_argument when a field is out of range or non-finite.
  void validate() const;
};

}  // namespace jclab
