#pragma once
// Small numerical helpers shared by the verification code.

#include <cstddef>
#include <functional>
#include <vector>

namespace anosov {

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

struct Derivative {
    double value = 0.0;
    double error = 0.0;  // Richardson-table error estimate
};

// Ridders' extrapolated central difference starting from step h.
Derivative ridders_derivative(const std::function<double(double)>& f, double x, double h);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace anosov
