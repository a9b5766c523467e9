#include "fsorf/rf_channel.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fsorf/error.hpp"
#include "fsorf/special_functions.hpp"

namespace fsorf {
namespace {

bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v) && v < 1e6; }

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k)); }

// log ₁F₁(a; b; z) for a, b > 0, z ≥ 0
double log_kummer(double a, double b, double z) {
    if (z == 0.0) return 0.0;
    const double d = a - b;
    if (d >= 0.0 && d == std::floor(d)) {
        // Kummer transformation: e^z ₁F₁(b-a; b; -z), a terminating sum with positive terms
        const int n = static_cast<int>(d);
        double sum = 0.0, term = 1.0;
        for (int k = 0; k <= n; ++k) {
            sum += term;
            term *= static_cast<double>(n - k) / (k + 1) * z / (b + k);
        }
        return z + std::log(sum);
    }
    // positive series, scaled by e^{-z} to stay in range
    double log_term = -z;
    double sum = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double term = std::exp(log_term);
        sum += term;
        if (k > z && term < 1e-17 * sum) return z + std::log(sum);
        log_term += std::log((a + k) / (b + k) * z / (k + 1));
    }
    throw ConvergenceError("confluent hypergeometric series did not converge");
}

}  // namespace

void RfParams::validate() const {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ValidationError("rf.kappa must be non-negative and finite");
    if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar)) throw ValidationError("rf.gamma_bar must be positive and finite");
    if (!is_positive_integer(mu)) throw ValidationError("rf.mu must be a positive integer");
    if (!is_positive_integer(m)) throw ValidationError("rf.m must be a positive integer");
}

double GammaMixture::weight_sum() const noexcept {
    double s = 0.0;
    for (const auto& c : components) s += c.weight;
    return s;
}

GammaMixture rf_mixture(const RfParams& params) {
    params.validate();
    const int mu = static_cast<int>(params.mu);
    const int m = static_cast<int>(params.m);
    const double k = params.kappa;
    // M(-s) = (1 + a s)^{m-μ} (1 + b s)^{-m}
    const double a = params.gamma_bar / (params.mu * (1.0 + k));
    const double b = params.gamma_bar * (params.mu * k + params.m) / (params.mu * params.m * (1.0 + k));

    GammaMixture mix;
    if (k == 0.0) {
        mix.components.push_back({1.0, mu, a});
        return mix;
    }
    if (m >= mu) {
        // (1+as)^{m-μ} = Σ_j C(m-μ, j) (a/b)^j (1 - a/b)^{m-μ-j} (1+bs)^j
        const int n = m - mu;
        const double ratio = a / b;
        for (int j = 0; j <= n; ++j) {
            const double w = binom(n, j) * std::pow(ratio, j) * std::pow(1.0 - ratio, n - j);
            mix.components.push_back({w, m - j, b});
        }
        return mix;
    }
    // m < μ: partial fractions of (1+as)^{-A} (1+bs)^{-B}
    const int A = mu - m;
    const int B = m;
    for (int l = 0; l < A; ++l) {
        const double w = std::pow((a - b) / a, -B) * ((l % 2) ? -1.0 : 1.0) * binom(B + l - 1, l) * std::pow(b / (a - b), l);
        mix.components.push_back({w, A - l, a});
    }
    for (int l = 0; l < B; ++l) {
        const double w = std::pow((b - a) / b, -A) * ((l % 2) ? -1.0 : 1.0) * binom(A + l - 1, l) * std::pow(a / (b - a), l);
        mix.components.push_back({w, B - l, b});
    }
    return mix;
}

double rf_pdf_hypergeometric(const RfParams& params, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("rf_pdf_hypergeometric: gamma must be positive");
    if (!(params.kappa >= 0.0) || !(params.gamma_bar > 0.0) || !(params.mu > 0.0) || !(params.m > 0.0)) {
        throw ValidationError("rf_pdf_hypergeometric: parameters out of range");
    }
    const double mu = params.mu, m = params.m, k = params.kappa, gb = params.gamma_bar;
    const double x = gamma / gb;
    const double log_pref = mu * std::log(mu) + m * std::log(m) + mu * std::log1p(k) - boost::math::lgamma(mu) -
                            std::log(gb) - m * std::log(mu * k + m) + (mu - 1.0) * std::log(x) - mu * (1.0 + k) * x;
    const double z = mu * mu * k * (1.0 + k) * x / (mu * k + m);
    return std::exp(log_pref + log_kummer(m, mu, z));
}

double rf_pdf(const GammaMixture& mix, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("rf_pdf: gamma must be non-negative");
    double sum = 0.0;
    for (const auto& c : mix.components) {
        if (gamma == 0.0) {
            if (c.shape == 1) sum += c.weight / c.scale;
            continue;
        }
        const double x = gamma / c.scale;
        sum += c.weight * std::exp((c.shape - 1) * std::log(x) - x - boost::math::lgamma(static_cast<double>(c.shape))) / c.scale;
    }
    return sum;
}

double rf_cdf(const GammaMixture& mix, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("rf_cdf: gamma must be non-negative");
    if (gamma == 0.0) return 0.0;
    // 1 - Σ C_i Q(m_i, γ/Ω_i) regrouped as Σ C_i P(m_i, γ/Ω_i) (Σ C_i = 1), which keeps
    // relative accuracy for small γ
    double sum = 0.0;
    for (const auto& c : mix.components) sum += c.weight * boost::math::gamma_p(c.shape, gamma / c.scale);
    return std::clamp(sum, 0.0, 1.0);
}

double rf_mgf(const GammaMixture& mix, double s) {
    if (!(s < 0.0)) throw DomainError("rf_mgf: s must be negative");
    double sum = 0.0;
    for (const auto& c : mix.components) sum += c.weight * std::pow(1.0 - s * c.scale, -c.shape);
    return sum;
}

double rf_mgf_meijer(const GammaMixture& mix, double s) {
    if (!(s < 0.0)) throw DomainError("rf_mgf_meijer: s must be negative");
    double sum = 0.0;
    for (const auto& c : mix.components) {
        const MeijerGParams g{1, 1, {1.0 - c.shape}, {0.0}};
        sum += c.weight / std::tgamma(c.shape) * meijer_g(g, -s * c.scale);
    }
    return sum;
}

double rf_outage(const GammaMixture& mix, double gamma_th) {
    if (!(gamma_th > 0.0)) throw DomainError("rf_outage: threshold must be positive");
    return rf_cdf(mix, gamma_th);
}

double rf_avg_ber(const GammaMixture& mix, const ModulationSpec& mod) {
    // δn/2 - δ/(2Γ(p)) Σ_k Σ_i Σ_r C_i Γ(p+r) q_k^p / (r! Ω_i^r (q_k + 1/Ω_i)^{p+r})
    double sum = 0.0;
    for (double q : mod.q) {
        for (const auto& c : mix.components) {
            const double rate = q + 1.0 / c.scale;
            // term_r = Γ(p+r)/(r! Ω^r rate^{p+r}), built by recurrence
            double term = std::tgamma(mod.p) * std::pow(rate, -mod.p);
            double inner = 0.0;
            for (int r = 0; r < c.shape; ++r) {
                inner += term;
                term *= (mod.p + r) / ((r + 1.0) * c.scale * rate);
            }
            sum += c.weight * std::pow(q, mod.p) * inner;
        }
    }
    const double ber = mod.ceiling() - mod.delta / (2.0 * std::tgamma(mod.p)) * sum;
    return std::clamp(ber, 0.0, mod.ceiling());
}

RfSampler::RfSampler(const RfParams& params)
    : params_(params),
      clusters_(static_cast<int>(params.mu)),
      dominant_(std::sqrt(params.kappa / ((1.0 + params.kappa) * params.mu))),
      scatter_(0.0, std::sqrt(1.0 / (2.0 * params.mu * (1.0 + params.kappa)))),
      shadow_(params.m, 1.0 / params.m) {
    params.validate();
}

double RfSampler::operator()(RandomStream& rng) {
    const double rho = std::sqrt(shadow_(rng));
    double w = 0.0;
    for (int i = 0; i < clusters_; ++i) {
        const double x = scatter_(rng) + rho * dominant_;
        const double y = scatter_(rng);
        w += x * x + y * y;
    }
    return params_.gamma_bar * w;
}

double rf_sample_snr(const RfParams& params, RandomStream& rng) { return RfSampler(params)(rng); }

}  // namespace fsorf
