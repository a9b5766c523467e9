#include "fsorf/combining.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/special_functions/gamma.hpp>

#include "fsorf/error.hpp"
#include "fsorf/quadrature.hpp"

namespace fsorf {
namespace {

double lgam(double x) { return boost::math::lgamma(x); }

// Memo for bivariate H values keyed on everything that determines them.
class BivariateCache {
public:
    using Key = std::array<double, 8>;

    template <class F>
    double get(const Key& key, F&& compute) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = values_.find(key); it != values_.end()) return it->second;
        }
        const double v = compute();
        std::lock_guard lock(mutex_);
        if (values_.size() >= kCapacity) values_.clear();
        values_.emplace(key, v);
        return v;
    }

    void clear() {
        std::lock_guard lock(mutex_);
        values_.clear();
    }

    std::size_t size() {
        std::lock_guard lock(mutex_);
        return values_.size();
    }

private:
    static constexpr std::size_t kCapacity = 1 << 16;
    std::mutex mutex_;
    std::map<Key, double> values_;
};

BivariateCache& cache() {
    static BivariateCache instance;
    return instance;
}

FoxHParams fso_second_kernel(const FsoParams& f) {
    const double x2 = f.xi * f.xi;
    return {3, 1, {{1.0, 1.0 / f.r()}, {x2 + 1.0, 1.0}}, {{x2, 1.0}, {f.alpha, 1.0}, {f.beta, 1.0}}};
}

// ξ²/(r Γ(α) Γ(β)) in log form
double log_mrc_norm(const FsoParams& f) {
    return std::log(f.xi * f.xi / f.r()) - lgam(f.alpha) - lgam(f.beta);
}

double cached_bivariate(const BivariateFoxHParams& kernel, const FsoParams& f, int shape, double p, double x,
                        double y) {
    const BivariateCache::Key key{f.alpha, f.beta, f.xi, static_cast<double>(f.r()), static_cast<double>(shape),
                                  p, x, y};
    return cache().get(key, [&] { return fox_h_bivariate(kernel, x, y); });
}

}  // namespace

Combiner parse_combiner(std::string_view text) {
    if (text == "sc" || text == "SC") return Combiner::SC;
    if (text == "mrc" || text == "MRC") return Combiner::MRC;
    throw ValidationError("unknown combiner '" + std::string(text) + "'");
}

std::string_view to_string(Combiner c) noexcept { return c == Combiner::SC ? "SC" : "MRC"; }

HybridLink::HybridLink(const FsoParams& fso, const RfParams& rf, Combiner combiner)
    : fso_(fso), rf_(rf), mixture_(rf_mixture(rf)), combiner_(combiner) {
    fso_.validate();
}

double sc_cdf(const HybridLink& link, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("sc_cdf: gamma must be non-negative");
    if (gamma == 0.0) return 0.0;
    return fso_cdf(link.fso(), gamma) * rf_cdf(link.mixture(), gamma);
}

double sc_cdf_expanded(const HybridLink& link, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("sc_cdf_expanded: gamma must be non-negative");
    if (gamma == 0.0) return 0.0;
    // F_FSO - Σ_i Σ_ρ C_i e^{-γ/Ω_i}(γ/Ω_i)^ρ/ρ! (1 - G-term)
    const double fso = fso_cdf(link.fso(), gamma);
    const double fso_upper = fso_ccdf(link.fso(), gamma);
    double rf_upper = 0.0;
    for (const auto& c : link.mixture().components) {
        const double x = gamma / c.scale;
        double term = std::exp(-x), inner = 0.0;
        for (int r = 0; r < c.shape; ++r) {
            inner += term;
            term *= x / (r + 1);
        }
        rf_upper += c.weight * inner;
    }
    return fso - rf_upper + rf_upper * fso_upper;
}

double sc_outage(const HybridLink& link, double gamma_th) {
    if (!(gamma_th > 0.0)) throw DomainError("sc_outage: threshold must be positive");
    return sc_cdf(link, gamma_th);
}

double sc_avg_ber_unchecked(const HybridLink& link, const ModulationSpec& mod) {
    // P1 - P2 + P3: FSO BER, RF mixture Laplace terms, and their product with the FSO complement
    const double p1 = fso_avg_ber_unchecked(link.fso(), mod);
    double p2 = 0.0, p3 = 0.0;
    for (double q : mod.q) {
        const double qp = std::pow(q, mod.p);
        for (const auto& c : link.mixture().components) {
            const double rate = q + 1.0 / c.scale;
            double coef = 1.0;  // 1/(ρ! Ω^ρ)
            for (int r = 0; r < c.shape; ++r) {
                const double a = mod.p + r;
                p2 += c.weight * qp * coef * std::exp(lgam(a) - a * std::log(rate));
                p3 += c.weight * qp * coef * fso_ccdf_laplace_moment(link.fso(), a, rate);
                coef /= (r + 1.0) * c.scale;
            }
        }
    }
    const double scale = mod.delta / (2.0 * std::tgamma(mod.p));
    const double ber = p1 - scale * p2 + scale * p3;
    if (!std::isfinite(ber)) throw ConvergenceError("sc_avg_ber: non-finite result");
    return std::clamp(ber, 0.0, mod.ceiling());
}

double sc_avg_ber(const HybridLink& link, const ModulationSpec& mod) {
    require_compatible(mod, link.fso().detection);
    return sc_avg_ber_unchecked(link, mod);
}

double mrc_mgf(const HybridLink& link, double s) { return fso_mgf(link.fso(), s) * rf_mgf(link.mixture(), s); }

BivariateFoxHParams mrc_cdf_kernel(const FsoParams& fso, int shape) {
    BivariateFoxHParams k;
    k.first = FoxHParams{1, 1, {{1.0, 1.0}}, {{static_cast<double>(shape), 1.0}}};
    k.second = fso_second_kernel(fso);
    k.joint_lower = {{0.0, 1.0, 1.0 / fso.r()}};
    return k;
}

BivariateFoxHParams mrc_ber_kernel(const FsoParams& fso, int shape, double p) {
    BivariateFoxHParams k = mrc_cdf_kernel(fso, shape);
    k.n0 = 1;
    k.joint_upper = {{1.0 - p, 1.0, 1.0 / fso.r()}};
    return k;
}

double mrc_cdf(const HybridLink& link, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("mrc_cdf: gamma must be non-negative");
    if (gamma == 0.0) return 0.0;
    const FsoParams& f = link.fso();
    const double y = f.alpha * f.beta * f.h() * std::pow(gamma / f.mu_r, 1.0 / f.r());
    double sum = 0.0;
    for (const auto& c : link.mixture().components) {
        const double x = gamma / c.scale;
        const double h = cached_bivariate(mrc_cdf_kernel(f, c.shape), f, c.shape, -1.0, x, y);
        sum += c.weight * std::exp(-lgam(c.shape)) * h;
    }
    return std::clamp(std::exp(log_mrc_norm(f)) * sum, 0.0, 1.0);
}

double mrc_cdf_oracle(const HybridLink& link, double gamma, double rel_tol) {
    if (!(gamma >= 0.0)) throw DomainError("mrc_cdf_oracle: gamma must be non-negative");
    if (gamma == 0.0) return 0.0;
    const GammaMixture& mix = link.mixture();
    // t = γ u keeps the rule on a unit-scale interval
    auto integrand = [&](double u) {
        const double rest = gamma * (1.0 - u);
        return rest > 0.0 ? gamma * fso_cdf(link.fso(), rest) * rf_pdf(mix, gamma * u) : 0.0;
    };
    // break points at growing multiples of the widest RF scale, so the density peak sits in
    // a short first panel
    double widest = 0.0;
    for (const auto& c : mix.components) widest = std::max(widest, c.scale);
    double value = 0.0, lo = 0.0;
    for (double mult = 2.0;; mult *= 4.0) {
        const double hi = std::min(1.0, mult * widest / gamma);
        value += quad::finite(integrand, lo, hi, rel_tol).value;
        if (hi >= 1.0) break;
        lo = hi;
    }
    return std::clamp(value, 0.0, 1.0);
}

double mrc_avg_ber_oracle(const HybridLink& link, const ModulationSpec& mod, double rel_tol) {
    // unified BER integral with F_MRC written as a convolution and the order of integration swapped:
    // Σ_k q^p ∫ f_FSO(v) ∫ (w+v)^{p-1} e^{-q(w+v)} F_RF(w) dw dv
    const GammaMixture& mix = link.mixture();
    const FsoParams& f = link.fso();
    double total = 0.0;
    for (double q : mod.q) {
        auto inner = [&](double v) {
            auto g = [&](double w) {
                return w > 0.0 ? std::pow(w + v, mod.p - 1.0) * std::exp(-q * (w + v)) * rf_cdf(mix, w) : 0.0;
            };
            return quad::positive_axis(g, 1.0 / q, rel_tol).value;
        };
        auto outer = [&](double v) { return v > 0.0 ? fso_pdf(f, v) * inner(v) : 0.0; };
        total += std::pow(q, mod.p) * quad::positive_axis(outer, std::min(f.mu_r, 1.0 / q), rel_tol).value;
    }
    return mod.delta / (2.0 * std::tgamma(mod.p)) * total;
}

double mrc_outage(const HybridLink& link, double gamma_th) {
    if (!(gamma_th > 0.0)) throw DomainError("mrc_outage: threshold must be positive");
    return mrc_cdf(link, gamma_th);
}

double mrc_avg_ber_unchecked(const HybridLink& link, const ModulationSpec& mod) {
    const FsoParams& f = link.fso();
    double sum = 0.0;
    for (double q : mod.q) {
        const double y = f.alpha * f.beta * f.h() * std::pow(f.mu_r * q, -1.0 / f.r());
        for (const auto& c : link.mixture().components) {
            const double x = 1.0 / (q * c.scale);
            const double h = cached_bivariate(mrc_ber_kernel(f, c.shape, mod.p), f, c.shape, mod.p, x, y);
            sum += c.weight * std::exp(-lgam(c.shape)) * h;
        }
    }
    const double ber = mod.delta / (2.0 * std::tgamma(mod.p)) * std::exp(log_mrc_norm(f)) * sum;
    if (!std::isfinite(ber)) throw ConvergenceError("mrc_avg_ber: non-finite result");
    return std::clamp(ber, 0.0, mod.ceiling());
}

double mrc_avg_ber(const HybridLink& link, const ModulationSpec& mod) {
    require_compatible(mod, link.fso().detection);
    return mrc_avg_ber_unchecked(link, mod);
}

double hybrid_outage(const HybridLink& link, double gamma_th) {
    return link.combiner() == Combiner::SC ? sc_outage(link, gamma_th) : mrc_outage(link, gamma_th);
}

double hybrid_avg_ber(const HybridLink& link, const ModulationSpec& mod) {
    return link.combiner() == Combiner::SC ? sc_avg_ber(link, mod) : mrc_avg_ber(link, mod);
}

void clear_bivariate_cache() { cache().clear(); }
std::size_t bivariate_cache_size() { return cache().size(); }

}  // namespace fsorf
