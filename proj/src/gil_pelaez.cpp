#include "cranjt/gil_pelaez.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cranjt/quadrature.hpp"

namespace cranjt {

namespace {
constexpr double kPi = std::numbers::pi;
}

GilPelaezResult gil_pelaez(const std::function<std::complex<double>(double)>& cf,
                           double threshold_shift, const TruncationPolicy& policy) {
    GilPelaezResult out;
    const double shift = threshold_shift;
    const std::function<double(double)> h = [&](double t) {
        const std::complex<double> rot(std::cos(t * shift), -std::sin(t * shift));
        return (cf(t) * rot).imag() / t;
    };
    auto amp = [&](double t) {
        ++out.evals;
        return std::abs(cf(t));
    };

    // Locate the half-decay scale of |cf| by geometric search.
    double t1 = 1.0;
    if (amp(t1) > 0.5) {
        for (int i = 0; i < 60 && amp(t1 * 2.0) > 0.5; ++i) t1 *= 2.0;
        t1 *= 2.0;
    } else {
        for (int i = 0; i < 60 && t1 > 1e-15 && amp(t1 / 2.0) <= 0.5; ++i) t1 /= 2.0;
    }

    const double target_abs = std::max(1e-12, 0.25 * policy.quad_rel_tol);  // on probability
    const double panel_abs = target_abs * kPi / 8.0;

    double integral = 0.0;
    double quad_err = 0.0;
    long budget = 2000000;
    auto add_panel = [&](double a, double b) {
        const QuadResult q =
            integrate_adaptive(h, a, b, 0.25 * policy.quad_rel_tol, panel_abs, budget - out.evals);
        integral += q.value;
        quad_err += q.error;
        out.evals += q.evals;
    };

    add_panel(0.0, t1);

    double tail_bound = 1.0;
    double t_lo = t1;
    double amp_prev = amp(t1);
    for (int octave = 0; octave < 400; ++octave) {
        const double t_hi = 2.0 * t_lo;
        add_panel(t_lo, t_hi);
        const double a = amp(t_hi);
        const double p = std::clamp(std::log2(std::max(amp_prev, 1e-300) / std::max(a, 1e-300)),
                                    0.02, 60.0);
        amp_prev = a;
        t_lo = t_hi;
        if (a < policy.cf_tail_cut) {
            tail_bound = a;
            break;
        }
        // Remaining-tail bound: power-law decay of |cf| gives |cf(T)|/p; with
        // an external oscillation e^{-jt*shift}, integration by parts gives
        // ~3|cf(T)|/(T*shift). Both over pi.
        double b = a / std::max(p, 0.05);
        if (shift * t_hi > 2.0) b = std::min(b, 3.0 * a / (t_hi * shift));
        tail_bound = b / kPi;
        if (octave >= 1 && tail_bound < target_abs) break;
    }

    out.raw = 0.5 + integral / kPi;
    out.prob = std::clamp(out.raw, 0.0, 1.0);
    out.residual = tail_bound + quad_err / kPi;
    return out;
}

}  // namespace cranjt
