#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fsorf {

/// Optical detection technique. The enumerator value is the detection order r.
enum class Detection : int { HD = 1, IMDD = 2 };

constexpr int detection_order(Detection d) noexcept { return static_cast<int>(d); }

Detection detection_from_order(int r);
Detection parse_detection(std::string_view text);
std::string_view to_string(Detection d) noexcept;

enum class Scheme { OOK, MPSK, MQAM };

Scheme parse_scheme(std::string_view text);
std::string_view to_string(Scheme s) noexcept;

/// Unified BER parameterization (δ, p, {q_k}, n) of a modulation scheme.
struct ModulationSpec {
    Scheme scheme = Scheme::OOK;
    unsigned order = 2;  // M; unused for OOK
    double delta = 1.0;
    double p = 0.5;
    std::vector<double> q;
    unsigned n = 1;

    /// OOK is meant for IM/DD, PSK and QAM for heterodyne detection.
    bool allows(Detection d) const noexcept;

    /// BER of a link whose SNR is identically zero, δ n / 2.
    double ceiling() const noexcept { return 0.5 * delta * static_cast<double>(n); }

    std::string name() const;
};

/// Populates (δ, p, q_k, n) for the scheme. PSK needs M ≥ 2 a power of two; QAM needs a
/// square constellation (M a power of four). Throws ValidationError otherwise.
ModulationSpec make_modspec(Scheme scheme, unsigned order = 2);

/// Throws ValidationError when `mod` is not meant to be used with detection `d`.
void require_compatible(const ModulationSpec& mod, Detection d);

/// δ/(2Γ(p)) Σ_k q_k^p ∫_0^∞ γ^{p-1} e^{-q_k γ} F(γ) dγ by adaptive quadrature.
double avg_ber_from_cdf(const ModulationSpec& mod, const std::function<double(double)>& cdf,
                        double rel_tol = 1e-11);

/// Instantaneous BER at SNR γ: (δ/2) Σ_k Q(p, q_k γ).
double conditional_ber(const ModulationSpec& mod, double gamma);

}  // namespace fsorf
