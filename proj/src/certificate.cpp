#include "deckwalk/certificate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace deckwalk {

ResidualCertificate closed_loop_residual_check(const PdGains& gains, const SimTrace& trace,
                                               const SurfaceMotion& motion,
                                               const VerticalRegulation& vertical,
                                               const GaitSpec& spec, double tail_start) {
  ResidualCertificate cert;
  if (trace.samples.empty()) {
    cert.note = "empty trace";
    return cert;
  }
  const double horizon = trace.samples.back().t;
  const auto bounds = accel_bounds(motion, horizon);
  const double z_min = vertical.nominal_height - std::abs(vertical.wobble_amplitude);

  double xc_sup = 0.0;
  for (const auto& s : trace.samples) {
    if (s.t >= 5.0) xc_sup = std::max(xc_sup, std::abs(s.xc));
  }
  xc_sup = std::max(xc_sup, 0.5 * spec.stride());

  cert.lyapunov_norm = gains.lyapunov_norm();
  cert.threshold = 1.0 / (2.0 * cert.lyapunov_norm);
  cert.rho1 = bounds.vertical / z_min;
  cert.rho0 = bounds.horizontal + xc_sup * cert.rho1;

  for (const auto& s : trace.samples) {
    if (s.t > tail_start) {
      cert.max_tail_error = std::max(cert.max_tail_error, std::hypot(s.e, s.e_dot));
    }
  }

  if (!(cert.rho1 < cert.threshold)) {
    cert.note = fmt::format("certificate inapplicable: sup|z''/z| bound {:.4g} >= 1/(2|L|) = {:.4g}",
                            cert.rho1, cert.threshold);
    return cert;
  }
  cert.applicable = true;
  cert.radius = 2.0 * cert.lyapunov_norm * cert.rho0 / (1.0 - 2.0 * cert.rho1 * cert.lyapunov_norm);
  // Absolute slack for the zero-radius (undisturbed) case, where |e| sits at roundoff.
  cert.tail_inside = cert.max_tail_error <= cert.radius + 1e-9;
  cert.note = fmt::format("radius {:.4g}, max tail |e| {:.4g}", cert.radius, cert.max_tail_error);
  return cert;
}

}  // namespace deckwalk
