#include "deckwalk/ankle.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "deckwalk/errors.hpp"

namespace deckwalk {

double PdGains::lyapunov_norm() const {
  const Eigen::SelfAdjointEigenSolver<Mat2> solver(L, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Mat2 solve_lyapunov(const Mat2& a) {
  // Unknowns (l11, l12, l22); entries (1,1), (1,2), (2,2) of A^T L + L A = -I.
  Eigen::Matrix3d m;
  m << 2.0 * a(0, 0), 2.0 * a(1, 0), 0.0,
       a(0, 1), a(0, 0) + a(1, 1), a(1, 0),
       0.0, 2.0 * a(0, 1), 2.0 * a(1, 1);
  const Eigen::Vector3d rhs(-1.0, 0.0, -1.0);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) {
    throw NumericalFailure("Lyapunov equation is singular for the given matrix");
  }
  const Eigen::Vector3d l = lu.solve(rhs);
  Mat2 out;
  out << l(0), l(1), l(1), l(2);
  return out;
}

PdGains make_pd_gains(double kp, double kd) {
  if (!(kp > 0.0) || !(kd > 0.0) || !std::isfinite(kp) || !std::isfinite(kd)) {
    throw InvalidParameter("PD gains must be positive");
  }
  PdGains g;
  g.kp = kp;
  g.kd = kd;
  g.A << 0.0, 1.0, -kp, -kd;
  g.B << 0.0, kp;
  g.L = solve_lyapunov(g.A);
  return g;
}

double lyapunov_residual(const PdGains& gains) {
  return (gains.A.transpose() * gains.L + gains.L * gains.A + Mat2::Identity()).norm();
}

double ankle_torque(const PdGains& gains, const Vec2& error, const PendulumState& commanded,
                    double height, double adaptive_input, const GaitSpec& spec) {
  if (!(height > 0.0)) {
    throw SingularHeight("ankle torque requested at non-positive height " +
                         std::to_string(height));
  }
  const double g = spec.gravity;
  const double mismatch = g / spec.nominal_height - g / height;
  return spec.mass * height *
         ((-g / height - gains.kp) * error(0) - gains.kd * error(1) -
          mismatch * commanded.position + gains.kp * adaptive_input);
}

double input_disturbance(double t, const PendulumState& commanded, double height,
                         const SurfaceMotion& motion, const PdGains& gains) {
  const auto acc = surface_accel(motion, t);
  return -(acc.horizontal - commanded.position / height * acc.vertical) / gains.kp;
}

}  // namespace deckwalk
