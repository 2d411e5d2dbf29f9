#pragma once

#include <complex>
#include <functional>

#include "cranjt/params.hpp"

namespace cranjt {

struct GilPelaezResult {
    double prob = 0.0;      ///< clamped to [0, 1]
    double raw = 0.0;       ///< 1/2 + integral/pi before clamping
    double residual = 0.0;  ///< bound on the neglected tail plus quadrature error
    long evals = 0;
};

/// Exceedance probability P[X > threshold_shift] from the characteristic
/// function of X: 1/2 + (1/pi) * int_0^inf Im[cf(t) e^{-j t shift}] / t dt.
/// The integral runs over octave panels with adaptive Gauss-Kronrod inside;
/// the upper limit extends until |cf| falls below policy.cf_tail_cut or an
/// oscillation/decay bound certifies the remaining tail. Throws
/// QuadratureError if the evaluation budget is exhausted first.
GilPelaezResult gil_pelaez(const std::function<std::complex<double>(double)>& cf,
                           double threshold_shift, const TruncationPolicy& policy);

}  // namespace cranjt
