#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsorf/fso_channel.hpp"
#include "fsorf/modulation.hpp"
#include "fsorf/montecarlo.hpp"
#include "fsorf/rf_channel.hpp"

namespace fsorf {

enum class LinkKind { Fso, Rf, Sc, Mrc };
enum class Task { Op, Ber };

LinkKind parse_link_kind(std::string_view text);
std::string_view to_string(LinkKind k) noexcept;
std::string_view to_string(Task t) noexcept;

/// An SNR entry in dB: a fixed value or an inclusive start/stop/step range.
struct SnrSetting {
    double fixed_db = 0.0;
    bool is_range = false;
    double start_db = 0.0;
    double stop_db = 0.0;
    double step_db = 1.0;

    std::vector<double> values_db() const;
};

struct SweepConfig {
    LinkKind link = LinkKind::Fso;
    Task task = Task::Op;
    std::optional<double> threshold_db;

    double alpha = kModerateTurbulence.alpha;
    double beta = kModerateTurbulence.beta;
    double xi = 1.0;
    Detection detection = Detection::HD;
    SnrSetting fso_snr;

    RfParams rf;  // gamma_bar ignored; rf_snr carries it
    SnrSetting rf_snr;

    std::optional<Scheme> scheme;
    unsigned order = 2;

    bool mc_enabled = false;
    McConfig mc;

    std::optional<std::string> plot_script;

    bool uses_fso() const noexcept { return link != LinkKind::Rf; }
    bool uses_rf() const noexcept { return link != LinkKind::Fso; }

    /// Cross-field checks. Throws ConfigError naming the offending key.
    void validate() const;

    /// Values of the range axis, in dB.
    std::vector<double> sweep_db() const;
};

/// Parses `key = value` lines with dotted section prefixes; '#' starts a comment.
/// `task`, when given, is imposed (a conflicting `task` key is an error).
SweepConfig parse_sweep_config(std::istream& in, std::optional<Task> task = std::nullopt);
SweepConfig load_sweep_config(const std::string& path, std::optional<Task> task = std::nullopt);

struct SweepRow {
    double sweep_snr_db = 0.0;
    std::optional<double> analytical;
    std::optional<McEstimate> mc;
    std::string status = "ok";
};

/// Analytical value at every sweep point plus, when enabled, one pooled Monte Carlo pass.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader = "sweep_snr_db,analytical,mc_point,mc_ci_low,mc_ci_high,status";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Standalone matplotlib script that plots `csv_path`.
std::string plot_script(const SweepConfig& cfg, const std::string& csv_path);

}  // namespace fsorf
