#pragma once

#include <random>

#include "fsorf/modulation.hpp"
#include "fsorf/random.hpp"

namespace fsorf {

/// Gamma-Gamma turbulence with pointing errors; `mu_r` is the average electrical SNR
/// (linear) and r = detection_order(detection).
struct FsoParams {
    double alpha = 2.064;
    double beta = 1.342;
    double xi = 1.0;
    Detection detection = Detection::IMDD;
    double mu_r = 100.0;

    int r() const noexcept { return detection_order(detection); }
    double h() const noexcept { return xi * xi / (xi * xi + 1.0); }

    /// Throws ValidationError unless alpha, beta, xi, mu_r are positive and finite.
    void validate() const;
};

struct Turbulence {
    double alpha;
    double beta;
};

inline constexpr Turbulence kWeakTurbulence{2.902, 2.51};
inline constexpr Turbulence kModerateTurbulence{2.296, 1.822};
inline constexpr Turbulence kStrongTurbulence{2.064, 1.342};

FsoParams make_fso(Turbulence t, double xi, Detection d, double mu_r);

double fso_pdf(const FsoParams& params, double gamma);
double fso_cdf(const FsoParams& params, double gamma);

/// 1 - F(γ), evaluated directly so that it keeps relative accuracy deep in the upper tail.
double fso_ccdf(const FsoParams& params, double gamma);

/// E[e^{sγ}] for s < 0.
double fso_mgf(const FsoParams& params, double s);

double fso_outage(const FsoParams& params, double gamma_th);

/// Average BER; throws ValidationError for a modulation not meant for the detection type.
double fso_avg_ber(const FsoParams& params, const ModulationSpec& mod);

/// Same closed form without the detection/modulation compatibility check.
double fso_avg_ber_unchecked(const FsoParams& params, const ModulationSpec& mod);

/// ∫_0^∞ γ^{a-1} e^{-Qγ} (1 - F(γ)) dγ in closed form (an H^{4,1}_{3,4}). Building block of
/// the single-branch and SC BER expressions.
double fso_ccdf_laplace_moment(const FsoParams& params, double a, double Q);

/// Reusable draw of γ = μ_r (h_p X Y / h)^r.
class FsoSampler {
public:
    explicit FsoSampler(const FsoParams& params);
    double operator()(RandomStream& rng);

private:
    FsoParams params_;
    std::gamma_distribution<double> large_;
    std::gamma_distribution<double> small_;
    double inv_xi2_;
    double inv_h_;
};

double fso_sample_snr(const FsoParams& params, RandomStream& rng);

}  // namespace fsorf
