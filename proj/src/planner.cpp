#include "deckwalk/planner.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "deckwalk/errors.hpp"

namespace deckwalk {

namespace {

Mat2 riccati_map(const Mat2& p, const Mat2& a, const Vec2& b, const Mat2& q, double r) {
  const Vec2 pb = p * b;
  const double denom = r + b.dot(pb);
  const Vec2 atpb = a.transpose() * pb;
  return a.transpose() * p * a + q - atpb * atpb.transpose() / denom;
}

}  // namespace

double PlannerGains::spectral_radius() const {
  const Eigen::EigenSolver<Mat2> solver(closed_loop(), false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

PlannerGains build_planner(const GaitSpec& spec, const Mat2& state_weight, double input_weight,
                           const DareOptions& options) {
  if (!(input_weight > 0.0) || !std::isfinite(input_weight)) {
    throw InvalidParameter("LQR input weight R must be positive");
  }
  if ((state_weight - state_weight.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidParameter("LQR state weight Q must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Mat2> qeig(state_weight);
  if (qeig.eigenvalues().minCoeff() < -1e-12) {
    throw InvalidParameter("LQR state weight Q must be positive semidefinite");
  }

  PlannerGains out;
  out.step_transition = step_transition(spec);
  out.input_map = (out.step_transition - Mat2::Identity()) * Vec2::UnitX();
  out.state_weight = state_weight;
  out.input_weight = input_weight;

  const Mat2& a = out.step_transition;
  const Vec2& b = out.input_map;
  Mat2 p = state_weight;
  bool converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Mat2 next = riccati_map(p, a, b, state_weight, input_weight);
    next = (0.5 * (next + next.transpose())).eval();
    if (!next.allFinite()) break;
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = next;
    out.iterations = it;
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalFailure("Riccati iteration did not converge in " +
                           std::to_string(options.max_iterations) + " iterations");
  }
  out.riccati = p;
  const Vec2 pb = p * b;
  out.gain = (pb.transpose() * a) / (input_weight + b.dot(pb));
  return out;
}

double dare_residual(const PlannerGains& planner) {
  const Mat2 rhs = riccati_map(planner.riccati, planner.step_transition, planner.input_map,
                               planner.state_weight, planner.input_weight);
  return (planner.riccati - rhs).norm();
}

double step_length(const PlannerGains& planner, const Vec2& error_after_touchdown,
                   const GaitSpec& spec) {
  const Mat2 shift = planner.step_transition - Mat2::Identity();
  return spec.stride() - planner.gain.dot(shift * error_after_touchdown);
}

std::vector<Vec2> planner_error_sequence(const PlannerGains& planner, const GaitSpec& spec,
                                         const Vec2& initial_error, int steps) {
  std::vector<Vec2> out;
  out.reserve(steps > 0 ? steps : 0);
  Vec2 after = initial_error;
  Mat2 flow = profile_transition(spec, 0.5 * spec.step_period);
  for (int k = 1; k <= steps; ++k) {
    const double u = step_length(planner, after, spec);
    Vec2 next = flow * after;
    next(0) += u - spec.stride();
    after = next;
    out.push_back(after);
    flow = planner.step_transition;
  }
  return out;
}

}  // namespace deckwalk
