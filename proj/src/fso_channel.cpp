#include "fsorf/fso_channel.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "fsorf/error.hpp"
#include "fsorf/special_functions.hpp"

namespace fsorf {
namespace {

double lgam(double x) { return boost::math::lgamma(x); }

// ξ² / (Γ(α)Γ(β)) in log form
double log_norm(const FsoParams& p) { return std::log(p.xi * p.xi) - lgam(p.alpha) - lgam(p.beta); }

// αβh(γ/μ)^{1/r}
double turbulence_argument(const FsoParams& p, double gamma) {
    return p.alpha * p.beta * p.h() * std::pow(gamma / p.mu_r, 1.0 / p.r());
}

}  // namespace

void FsoParams::validate() const {
    for (auto [v, name] : {std::pair{alpha, "fso.alpha"}, {beta, "fso.beta"}, {xi, "fso.xi"}, {mu_r, "fso.mu_r"}}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be positive and finite");
    }
    (void)detection_from_order(r());
}

FsoParams make_fso(Turbulence t, double xi, Detection d, double mu_r) {
    FsoParams p{t.alpha, t.beta, xi, d, mu_r};
    p.validate();
    return p;
}

double fso_pdf(const FsoParams& params, double gamma) {
    params.validate();
    if (!(gamma > 0.0)) throw DomainError("fso_pdf: gamma must be positive");
    const double x2 = params.xi * params.xi;
    const MeijerGParams g{3, 0, {x2 + 1.0}, {x2, params.alpha, params.beta}};
    const double value = meijer_g(g, turbulence_argument(params, gamma));
    return std::exp(log_norm(params) - std::log(params.r() * gamma)) * value;
}

double fso_ccdf(const FsoParams& params, double gamma) {
    params.validate();
    if (!(gamma >= 0.0)) throw DomainError("fso_ccdf: gamma must be non-negative");
    if (gamma == 0.0) return 1.0;
    const double x2 = params.xi * params.xi;
    const MeijerGParams g{4, 0, {1.0, x2 + 1.0}, {0.0, x2, params.alpha, params.beta}};
    return std::exp(log_norm(params)) * meijer_g(g, turbulence_argument(params, gamma));
}

double fso_cdf(const FsoParams& params, double gamma) {
    params.validate();
    if (!(gamma >= 0.0)) throw DomainError("fso_cdf: gamma must be non-negative");
    if (gamma == 0.0) return 0.0;
    const double upper = fso_ccdf(params, gamma);
    if (upper < 0.5) return std::min(1.0, 1.0 - upper);
    // lower tail: move the s = 0 pole across the contour instead of subtracting from 1
    const double x2 = params.xi * params.xi;
    const MeijerGParams g{3, 1, {1.0, x2 + 1.0}, {x2, params.alpha, params.beta, 0.0}};
    const double value = std::exp(log_norm(params)) * meijer_g(g, turbulence_argument(params, gamma));
    return std::clamp(value, 0.0, 1.0);
}

double fso_mgf(const FsoParams& params, double s) {
    params.validate();
    if (!(s < 0.0)) throw DomainError("fso_mgf: s must be negative");
    const double x2 = params.xi * params.xi;
    const double inv_r = 1.0 / params.r();
    FoxHParams h{3, 1, {{1.0, inv_r}, {x2 + 1.0, 1.0}}, {{x2, 1.0}, {params.alpha, 1.0}, {params.beta, 1.0}}};
    const double z = params.alpha * params.beta * params.h() * std::pow(-1.0 / (params.mu_r * s), inv_r);
    return std::exp(log_norm(params)) * inv_r * fox_h(h, z);
}

double fso_outage(const FsoParams& params, double gamma_th) {
    if (!(gamma_th > 0.0)) throw DomainError("fso_outage: threshold must be positive");
    return fso_cdf(params, gamma_th);
}

double fso_ccdf_laplace_moment(const FsoParams& params, double a, double Q) {
    params.validate();
    detail::require_positive(a, "moment order");
    detail::require_positive(Q, "Laplace variable");
    const double x2 = params.xi * params.xi;
    const double inv_r = 1.0 / params.r();
    FoxHParams h{4, 1,
                 {{1.0 - a, inv_r}, {1.0, 1.0}, {x2 + 1.0, 1.0}},
                 {{0.0, 1.0}, {x2, 1.0}, {params.alpha, 1.0}, {params.beta, 1.0}}};
    const double z = params.alpha * params.beta * params.h() * std::pow(Q * params.mu_r, -inv_r);
    return std::exp(log_norm(params) - a * std::log(Q)) * fox_h(h, z);
}

double fso_avg_ber_unchecked(const FsoParams& params, const ModulationSpec& mod) {
    // P = δn/2 - δ/(2Γ(p)) Σ_k q_k^p ∫ γ^{p-1} e^{-q_k γ} (1 - F(γ)) dγ
    double sum = 0.0;
    for (double q : mod.q) sum += std::pow(q, mod.p) * fso_ccdf_laplace_moment(params, mod.p, q);
    const double ber = mod.ceiling() - mod.delta / (2.0 * std::tgamma(mod.p)) * sum;
    if (!std::isfinite(ber)) throw ConvergenceError("fso_avg_ber: non-finite result");
    return std::clamp(ber, 0.0, mod.ceiling());
}

double fso_avg_ber(const FsoParams& params, const ModulationSpec& mod) {
    require_compatible(mod, params.detection);
    return fso_avg_ber_unchecked(params, mod);
}

FsoSampler::FsoSampler(const FsoParams& params)
    : params_(params),
      large_(params.alpha, 1.0 / params.alpha),
      small_(params.beta, 1.0 / params.beta),
      inv_xi2_(1.0 / (params.xi * params.xi)),
      inv_h_(1.0 / params.h()) {
    params.validate();
}

double FsoSampler::operator()(RandomStream& rng) {
    const double hp = std::pow(rng.uniform(), inv_xi2_);
    const double ha = large_(rng) * small_(rng);
    const double ratio = hp * ha * inv_h_;
    return params_.mu_r * (params_.r() == 1 ? ratio : ratio * ratio);
}

double fso_sample_snr(const FsoParams& params, RandomStream& rng) { return FsoSampler(params)(rng); }

}  // namespace fsorf
