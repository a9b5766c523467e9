#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fsorf/combining.hpp"
#include "fsorf/fso_channel.hpp"
#include "fsorf/modulation.hpp"
#include "fsorf/random.hpp"
#include "fsorf/rf_channel.hpp"

namespace fsorf {

struct McConfig {
    std::uint64_t samples = 10'000'000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
    double ci_level = 0.9973;
    // block b always draws from RandomStream(master_seed, b); changing this changes results
    std::uint64_t block_size = 1 << 16;

    void validate() const;
};

struct McEstimate {
    double point = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t samples_used = 0;

    bool covers(double value) const noexcept { return ci_low <= value && value <= ci_high; }
};

/// Link whose SNR is identically `value`.
struct ConstantSnr {
    double value = 0.0;
};

using LinkModel = std::variant<FsoParams, RfParams, HybridLink, ConstantSnr>;

/// Draws the combined SNR of a link: max of the branches for SC, sum for MRC.
class SnrSampler {
public:
    explicit SnrSampler(const LinkModel& model);
    double operator()(RandomStream& rng);

private:
    std::function<double(double, double)> combine_;
    std::optional<FsoSampler> fso_;
    std::optional<RfSampler> rf_;
};

/// Branch SNRs at which a grid point is evaluated. Only the fields a model uses matter.
struct GridPoint {
    double fso_snr = 1.0;
    double rf_snr = 1.0;
    double gamma_th = 1.0;  // ignored by BER estimates
};

/// z quantile of a two-sided interval at `level`.
double ci_quantile(double level);

/// Wilson score interval for `hits` out of `n` trials.
McEstimate wilson_estimate(std::uint64_t hits, std::uint64_t n, double level);

McEstimate estimate_outage(const LinkModel& model, double gamma_th, const McConfig& cfg);
std::vector<McEstimate> estimate_outage(const LinkModel& model, const std::vector<double>& thresholds,
                                        const McConfig& cfg);

/// Sample mean of conditional_ber over SNR draws. Checks modulation/detection compatibility.
McEstimate estimate_ber(const LinkModel& model, const ModulationSpec& mod, const McConfig& cfg);
McEstimate estimate_ber_unchecked(const LinkModel& model, const ModulationSpec& mod, const McConfig& cfg);

/// Sample mean of g(γ) with a normal interval.
McEstimate estimate_expectation(const LinkModel& model, const std::function<double(double)>& g,
                                const McConfig& cfg);

/// One sampling pass shared by every point: branch draws at unit SNR are rescaled to each
/// point's SNRs. Each point equals what a dedicated run at that point would estimate.
std::vector<McEstimate> estimate_outage_grid(const LinkModel& model, const std::vector<GridPoint>& points,
                                             const McConfig& cfg);
std::vector<McEstimate> estimate_ber_grid(const LinkModel& model, const ModulationSpec& mod,
                                          const std::vector<GridPoint>& points, const McConfig& cfg);

}  // namespace fsorf
