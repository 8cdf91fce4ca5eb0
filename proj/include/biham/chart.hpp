#pragma once

#include <array>

namespace biham {

using Point2 = std::array<double, 2>;

// Nonlinear chart q = Q (1 + lambda R^2), p = P (1 + lambda R^2), R^2 = Q^2 + P^2,
// inverted by Q = q K(r), P = p K(r) with lambda r^2 K^3 + K - 1 = 0.
class NonlinearChart {
 public:
  explicit NonlinearChart(double lambda);

  double lambda() const { return lambda_; }
  // Root of lambda r^2 K^3 + K - 1 = 0 in (0, 1]; safeguarded Newton.
  double K(double r) const;
  double residual(double r, double k) const { return lambda_ * r * r * k * k * k + k - 1.0; }

  // (Q, P) -> (q, p)
  Point2 forward(const Point2& QP) const;
  // (q, p) -> (Q, P)
  Point2 backward(const Point2& qp) const;
  // u +_phi v = phi(phi^{-1} u + phi^{-1} v), with phi = forward.
  Point2 deformed_add(const Point2& u, const Point2& v) const;
  // dq/dQ on the Lagrangian axis P = 0.
  double jacobian(double Q) const { return 1.0 + 3.0 * lambda_ * Q * Q; }

 private:
  double lambda_;
};

}  // namespace biham
