#pragma once

#include <random>
#include <vector>

#include "fsorf/modulation.hpp"
#include "fsorf/random.hpp"

namespace fsorf {

/// κ-μ shadowed fading. μ and m are stored as reals so that non-integer input can be
/// reported; the closed forms and the sampler require integers.
struct RfParams {
    double kappa = 5.0;
    double mu = 1.0;
    double m = 2.0;
    double gamma_bar = 10.0;

    /// Throws ValidationError unless κ ≥ 0, γ̄ > 0 and μ, m are positive integers.
    void validate() const;
};

/// One Gamma term C · x^{m-1} e^{-x/Ω} / (Γ(m) Ω^m).
struct GammaComponent {
    double weight;
    int shape;
    double scale;
};

struct GammaMixture {
    std::vector<GammaComponent> components;

    double weight_sum() const noexcept;
};

/// Finite Gamma-mixture form of the κ-μ shadowed SNR distribution, obtained by partial
/// fractions of its rational MGF.
GammaMixture rf_mixture(const RfParams& params);

/// Direct hypergeometric PDF; accepts any positive real μ and m.
double rf_pdf_hypergeometric(const RfParams& params, double gamma);

double rf_pdf(const GammaMixture& mix, double gamma);
double rf_cdf(const GammaMixture& mix, double gamma);
double rf_mgf(const GammaMixture& mix, double s);

/// Same MGF assembled from G^{1,1}_{1,1} evaluations, for cross-checking the contour engine.
double rf_mgf_meijer(const GammaMixture& mix, double s);

double rf_outage(const GammaMixture& mix, double gamma_th);
double rf_avg_ber(const GammaMixture& mix, const ModulationSpec& mod);

/// Hierarchical draw: clusters of Gaussian scattering plus a Gamma-shadowed dominant part.
class RfSampler {
public:
    explicit RfSampler(const RfParams& params);
    double operator()(RandomStream& rng);

private:
    RfParams params_;
    int clusters_;
    double dominant_;
    std::normal_distribution<double> scatter_;
    std::gamma_distribution<double> shadow_;
};

double rf_sample_snr(const RfParams& params, RandomStream& rng);

}  // namespace fsorf
