#pragma once

namespace pdm {

/// Antiderivative of (p y + q) / (a y^2 + b y + c), up to a constant.
/// Accepts y = ±inf; the result is then the limit (possibly ±inf).
double rational_antiderivative(double p, double q, double a, double b, double c, double y);

/// Antiderivative of (p y + q) / ((r y + s)(a y^2 + c)), up to a constant.
double rational_antiderivative_linear_quadratic(double p, double q, double r, double s,
                                                double a, double c, double y);

}  // namespace pdm
