#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cranjt {

/// Raised when an adaptive quadrature cannot meet its tolerance within the
/// evaluation budget; carries the best estimate and its residual.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double estimate_, double residual_)
        : std::runtime_error(what), estimate(estimate_), residual(residual_) {}
    double estimate;
    double residual;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

/// Adaptive Gauss-Kronrod 7-15 on [a, b]. Stops when the local error estimate
/// satisfies err <= max(abs_tol, rel_tol*|I|) on every subinterval; throws
/// QuadratureError if max_evals is exhausted first.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, long max_evals = 200000);

struct QuadResultC {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    long evals = 0;
};

QuadResultC integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                               double b, double rel_tol, double abs_tol, long max_evals = 200000);

/// Nodes and weights of an n-point Gauss-Legendre rule mapped to [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n, double a, double b);

}  // namespace cranjt
