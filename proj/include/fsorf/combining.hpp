#pragma once

#include <cstddef>

#include "fsorf/fso_channel.hpp"
#include "fsorf/modulation.hpp"
#include "fsorf/rf_channel.hpp"
#include "fsorf/special_functions.hpp"

namespace fsorf {

enum class Combiner { SC, MRC };

Combiner parse_combiner(std::string_view text);
std::string_view to_string(Combiner c) noexcept;

/// One FSO branch and one RF branch, independent, combined by SC (max) or MRC (sum).
class HybridLink {
public:
    HybridLink(const FsoParams& fso, const RfParams& rf, Combiner combiner);

    const FsoParams& fso() const noexcept { return fso_; }
    const RfParams& rf() const noexcept { return rf_; }
    const GammaMixture& mixture() const noexcept { return mixture_; }
    Combiner combiner() const noexcept { return combiner_; }

private:
    FsoParams fso_;
    RfParams rf_;
    GammaMixture mixture_;
    Combiner combiner_;
};

double sc_cdf(const HybridLink& link, double gamma);

/// The SC CDF expanded over mixture components with the FSO complement as a G^{4,0}_{2,4}.
double sc_cdf_expanded(const HybridLink& link, double gamma);

double sc_outage(const HybridLink& link, double gamma_th);

double sc_avg_ber(const HybridLink& link, const ModulationSpec& mod);
double sc_avg_ber_unchecked(const HybridLink& link, const ModulationSpec& mod);

double mrc_mgf(const HybridLink& link, double s);

/// Bivariate Fox-H layout of one mixture component (Gamma shape `shape`) of the MRC CDF.
BivariateFoxHParams mrc_cdf_kernel(const FsoParams& fso, int shape);

/// Same for the MRC BER Laplace moment of order p.
BivariateFoxHParams mrc_ber_kernel(const FsoParams& fso, int shape, double p);

double mrc_cdf(const HybridLink& link, double gamma);

/// ∫_0^γ F_FSO(γ - t) f_RF(t) dt by adaptive quadrature.
double mrc_cdf_oracle(const HybridLink& link, double gamma, double rel_tol = 1e-10);

double mrc_outage(const HybridLink& link, double gamma_th);

double mrc_avg_ber(const HybridLink& link, const ModulationSpec& mod);

/// Quadrature reference for the MRC BER built from the FSO density and the RF CDF.
double mrc_avg_ber_oracle(const HybridLink& link, const ModulationSpec& mod, double rel_tol = 1e-9);
double mrc_avg_ber_unchecked(const HybridLink& link, const ModulationSpec& mod);

/// Outage / BER of whichever combiner the link carries.
double hybrid_outage(const HybridLink& link, double gamma_th);
double hybrid_avg_ber(const HybridLink& link, const ModulationSpec& mod);

/// Bivariate evaluations are memoised (mutex-protected, bounded).
void clear_bivariate_cache();
std::size_t bivariate_cache_size();

}  // namespace fsorf
