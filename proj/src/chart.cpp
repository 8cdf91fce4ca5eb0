#include "biham/chart.hpp"

#include <cmath>

#include "biham/common.hpp"

namespace biham {

NonlinearChart::NonlinearChart(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0)) fail(ErrorKind::Domain, "chart parameter lambda must be >= 0");
}

double NonlinearChart::K(double r) const {
  const double a = lambda_ * r * r;
  if (a == 0.0) return 1.0;
  // f(K) = a K^3 + K - 1 is increasing with f(0) = -1 < 0 <= f(1) = a.
  double lo = 0.0, hi = 1.0, k = 1.0 / (1.0 + std::cbrt(a));
  for (int it = 0; it < 200; ++it) {
    const double f = a * k * k * k + k - 1.0;
    if (f == 0.0) return k;
    if (f < 0) lo = k;
    else hi = k;
    const double df = 3.0 * a * k * k + 1.0;
    double next = k - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - k) <= 1e-16 * std::max(1.0, k)) return next;
    k = next;
  }
  if (std::abs(a * k * k * k + k - 1.0) <= 1e-12) return k;
  fail(ErrorKind::RootFinding, "K(r) iteration did not converge");
}

Point2 NonlinearChart::forward(const Point2& QP) const {
  const double s = 1.0 + lambda_ * (QP[0] * QP[0] + QP[1] * QP[1]);
  return {QP[0] * s, QP[1] * s};
}

Point2 NonlinearChart::backward(const Point2& qp) const {
  const double k = K(std::hypot(qp[0], qp[1]));
  return {qp[0] * k, qp[1] * k};
}

Point2 NonlinearChart::deformed_add(const Point2& u, const Point2& v) const {
  const Point2 a = backward(u), b = backward(v);
  return forward({a[0] + b[0], a[1] + b[1]});
}

}  // namespace biham
