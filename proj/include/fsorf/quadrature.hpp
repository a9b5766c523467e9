#pragma once

#include <functional>

namespace fsorf::quad {

using Integrand = std::function<double(double)>;

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// ∫_a^b f. Double-exponential rule; tolerates integrable endpoint singularities.
Estimate finite(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// ∫_a^∞ f for integrands with (at least) exponential decay.
Estimate semi_infinite(const Integrand& f, double a, double rel_tol = 1e-12);

/// ∫_0^∞ f split at `pivot`: finite rule on [0, pivot], semi-infinite rule beyond.
Estimate positive_axis(const Integrand& f, double pivot, double rel_tol = 1e-12);

/// Adaptive Gauss–Kronrod on [a, b]; smooth integrands only.
Estimate kronrod(const Integrand& f, double a, double b, double rel_tol = 1e-12);

}  // namespace fsorf::quad
