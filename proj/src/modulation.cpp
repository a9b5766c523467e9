#include "fsorf/modulation.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>

#include "fsorf/error.hpp"
#include "fsorf/quadrature.hpp"
#include "fsorf/special_functions.hpp"

namespace fsorf {
namespace {

std::string lower_case(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

Detection detection_from_order(int r) {
    if (r == 1) return Detection::HD;
    if (r == 2) return Detection::IMDD;
    throw ValidationError("detection order r must be 1 (HD) or 2 (IM/DD)");
}

Detection parse_detection(std::string_view text) {
    const std::string t = lower_case(text);
    if (t == "hd" || t == "heterodyne" || t == "1") return Detection::HD;
    if (t == "imdd" || t == "im/dd" || t == "im-dd" || t == "2") return Detection::IMDD;
    throw ValidationError("unknown detection type '" + std::string(text) + "'");
}

std::string_view to_string(Detection d) noexcept { return d == Detection::HD ? "HD" : "IM/DD"; }

Scheme parse_scheme(std::string_view text) {
    const std::string t = lower_case(text);
    if (t == "ook") return Scheme::OOK;
    if (t == "psk" || t == "mpsk" || t == "m-psk") return Scheme::MPSK;
    if (t == "qam" || t == "mqam" || t == "m-qam") return Scheme::MQAM;
    throw ValidationError("unknown modulation scheme '" + std::string(text) + "'");
}

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
        case Scheme::OOK: return "OOK";
        case Scheme::MPSK: return "PSK";
        case Scheme::MQAM: return "QAM";
    }
    return "?";
}

bool ModulationSpec::allows(Detection d) const noexcept {
    return scheme == Scheme::OOK ? d == Detection::IMDD : d == Detection::HD;
}

std::string ModulationSpec::name() const {
    if (scheme == Scheme::OOK) return "OOK";
    if (scheme == Scheme::MPSK) {
        if (order == 2) return "BPSK";
        if (order == 4) return "QPSK";
    }
    return std::to_string(order) + "-" + std::string(to_string(scheme));
}

ModulationSpec make_modspec(Scheme scheme, unsigned order) {
    ModulationSpec spec;
    spec.scheme = scheme;
    spec.p = 0.5;
    switch (scheme) {
        case Scheme::OOK:
            spec.order = 2;
            spec.delta = 1.0;
            spec.q = {0.5};
            spec.n = 1;
            break;
        case Scheme::MPSK: {
            detail::require(order >= 2 && std::has_single_bit(order), "PSK order must be a power of two >= 2");
            const double bits = std::log2(static_cast<double>(order));
            spec.order = order;
            spec.delta = 2.0 / std::max(bits, 2.0);
            spec.n = std::max(order / 4u, 1u);
            for (unsigned k = 1; k <= spec.n; ++k) {
                const double s = std::sin((2.0 * k - 1.0) * std::numbers::pi / order);
                spec.q.push_back(s * s);
            }
            break;
        }
        case Scheme::MQAM: {
            // square constellations only: M = 4^j
            const bool square = order >= 4 && std::has_single_bit(order) && (std::countr_zero(order) % 2 == 0);
            detail::require(square, "QAM order must be a square constellation (4, 16, 64, ...)");
            const double bits = std::log2(static_cast<double>(order));
            const double root = std::sqrt(static_cast<double>(order));
            spec.order = order;
            spec.delta = 4.0 / bits * (1.0 - 1.0 / root);
            spec.n = static_cast<unsigned>(std::lround(root / 2.0));
            for (unsigned k = 1; k <= spec.n; ++k) {
                const double odd = 2.0 * k - 1.0;
                spec.q.push_back(3.0 * odd * odd / (2.0 * (order - 1.0)));
            }
            break;
        }
    }
    return spec;
}

void require_compatible(const ModulationSpec& mod, Detection d) {
    if (!mod.allows(d)) {
        throw ValidationError(mod.name() + " is not used with " + std::string(to_string(d)) +
                              " detection (OOK pairs with IM/DD, PSK/QAM with HD)");
    }
}

double avg_ber_from_cdf(const ModulationSpec& mod, const std::function<double(double)>& cdf, double rel_tol) {
    // γ = u² removes the γ^{p-1} endpoint singularity; the tail is integrated panel by
    // panel until a panel adds less than 1e-16 of the running total.
    double total = 0.0;
    for (double q : mod.q) {
        const double width = 1.0 / std::sqrt(q);
        auto integrand = [&](double u) {
            const double g = u * u;
            return 2.0 * std::pow(u, 2.0 * mod.p - 1.0) * std::exp(-q * g) * cdf(g);
        };
        // F ≤ 1 bounds the skipped piece by q^p u0^{2p}/p; u0 puts that below 1e-20
        const double u0 = std::min(std::pow(1e-20 * mod.p / std::pow(q, mod.p), 0.5 / mod.p), 0.5 * width);
        double acc = 0.0;
        for (int panel = 0;; ++panel) {
            const double lo = panel == 0 ? u0 : panel * width;
            const double part = quad::finite(integrand, lo, (panel + 1) * width, rel_tol).value;
            acc += part;
            if (std::abs(part) <= 1e-16 * std::abs(acc) || (acc == 0.0 && panel >= 40)) break;
            if (panel > 400) throw ConvergenceError("avg_ber_from_cdf: tail did not vanish");
        }
        total += std::pow(q, mod.p) * acc;
    }
    return mod.delta / (2.0 * std::tgamma(mod.p)) * total;
}

double conditional_ber(const ModulationSpec& mod, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("conditional_ber: SNR must be non-negative");
    double sum = 0.0;
    for (double q : mod.q) sum += upper_incomplete_gamma_reg(mod.p, q * gamma);
    return 0.5 * mod.delta * sum;
}

}  // namespace fsorf
