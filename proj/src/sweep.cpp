#include "fsorf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "fsorf/combining.hpp"
#include "fsorf/error.hpp"

namespace fsorf {
namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

class Fields {
public:
    explicit Fields(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::optional<std::string> text(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        used_.push_back(key);
        return it->second;
    }

    std::optional<double> number(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(*t, &used);
        } catch (const std::exception&) {
            throw ConfigError(key, "expected a number, got '" + *t + "'");
        }
        if (used != t->size() || !std::isfinite(v)) throw ConfigError(key, "expected a number, got '" + *t + "'");
        return v;
    }

    std::optional<std::uint64_t> count(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        if (t->empty() || t->find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError(key, "expected a non-negative integer, got '" + *t + "'");
        }
        try {
            return std::stoull(*t);
        } catch (const std::exception&) {
            throw ConfigError(key, "integer out of range");
        }
    }

    std::optional<bool> flag(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        const std::string v = lower(*t);
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        throw ConfigError(key, "expected true or false, got '" + *t + "'");
    }

    void reject_unused() const {
        for (const auto& [key, value] : kv_) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) throw ConfigError(key, "unknown key (or not used by this link)");
        }
    }

private:
    std::map<std::string, std::string> kv_;
    std::vector<std::string> used_;
};

SnrSetting read_snr(Fields& f, const std::string& prefix) {
    SnrSetting s;
    const auto fixed = f.number(prefix);
    const auto start = f.number(prefix + ".start");
    const auto stop = f.number(prefix + ".stop");
    const auto step = f.number(prefix + ".step");
    if (fixed && (start || stop || step)) throw ConfigError(prefix, "give either a fixed value or start/stop/step");
    if (fixed) {
        s.fixed_db = *fixed;
        return s;
    }
    if (!start && !stop && !step) throw ConfigError(prefix, "missing");
    if (!start) throw ConfigError(prefix + ".start", "missing");
    if (!stop) throw ConfigError(prefix + ".stop", "missing");
    s.is_range = true;
    s.start_db = *start;
    s.stop_db = *stop;
    s.step_db = step.value_or(1.0);
    if (!(s.step_db > 0.0)) throw ConfigError(prefix + ".step", "must be positive");
    if (s.stop_db < s.start_db) throw ConfigError(prefix + ".stop", "must not be below start");
    return s;
}

std::string number_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

FsoParams fso_at(const SweepConfig& c, double snr_db) {
    FsoParams f{c.alpha, c.beta, c.xi, c.detection, db_to_linear(snr_db)};
    return f;
}

RfParams rf_at(const SweepConfig& c, double snr_db) {
    RfParams r = c.rf;
    r.gamma_bar = db_to_linear(snr_db);
    return r;
}

// branch SNRs in dB for sweep value x
std::pair<double, double> branch_db(const SweepConfig& c, double x) {
    const double fso = c.fso_snr.is_range ? x : c.fso_snr.fixed_db;
    const double rf = c.rf_snr.is_range ? x : c.rf_snr.fixed_db;
    return {fso, rf};
}

LinkModel model_at(const SweepConfig& c, double x) {
    const auto [fdb, rdb] = branch_db(c, x);
    switch (c.link) {
        case LinkKind::Fso: return fso_at(c, fdb);
        case LinkKind::Rf: return rf_at(c, rdb);
        case LinkKind::Sc: return HybridLink(fso_at(c, fdb), rf_at(c, rdb), Combiner::SC);
        case LinkKind::Mrc: break;
    }
    return HybridLink(fso_at(c, fdb), rf_at(c, rdb), Combiner::MRC);
}

double analytical_at(const SweepConfig& c, double x) {
    const LinkModel model = model_at(c, x);
    if (c.task == Task::Op) {
        const double th = db_to_linear(*c.threshold_db);
        if (const auto* f = std::get_if<FsoParams>(&model)) return fso_outage(*f, th);
        if (const auto* r = std::get_if<RfParams>(&model)) return rf_outage(rf_mixture(*r), th);
        return hybrid_outage(std::get<HybridLink>(model), th);
    }
    const ModulationSpec mod = make_modspec(*c.scheme, c.order);
    if (const auto* f = std::get_if<FsoParams>(&model)) return fso_avg_ber(*f, mod);
    if (const auto* r = std::get_if<RfParams>(&model)) return rf_avg_ber(rf_mixture(*r), mod);
    return hybrid_avg_ber(std::get<HybridLink>(model), mod);
}

}  // namespace

LinkKind parse_link_kind(std::string_view text) {
    const std::string t = lower(std::string(text));
    if (t == "fso") return LinkKind::Fso;
    if (t == "rf") return LinkKind::Rf;
    if (t == "sc") return LinkKind::Sc;
    if (t == "mrc") return LinkKind::Mrc;
    throw ValidationError("unknown link '" + std::string(text) + "'");
}

std::string_view to_string(LinkKind k) noexcept {
    switch (k) {
        case LinkKind::Fso: return "fso";
        case LinkKind::Rf: return "rf";
        case LinkKind::Sc: return "sc";
        case LinkKind::Mrc: break;
    }
    return "mrc";
}

std::string_view to_string(Task t) noexcept { return t == Task::Op ? "op" : "ber"; }

std::vector<double> SnrSetting::values_db() const {
    if (!is_range) return {fixed_db};
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((stop_db - start_db) / step_db + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start_db + static_cast<double>(i) * step_db);
    return out;
}

std::vector<double> SweepConfig::sweep_db() const {
    return uses_fso() && fso_snr.is_range ? fso_snr.values_db() : rf_snr.values_db();
}

void SweepConfig::validate() const {
    const bool fso_range = uses_fso() && fso_snr.is_range;
    const bool rf_range = uses_rf() && rf_snr.is_range;
    if (fso_range == rf_range) {
        throw ConfigError(uses_fso() ? "fso.snr_db" : "rf.snr_db",
                          "exactly one branch SNR must be a start/stop/step range");
    }
    if (sweep_db().size() > 100000) throw ConfigError(fso_range ? "fso.snr_db" : "rf.snr_db", "too many sweep points");
    if (task == Task::Op && !threshold_db) throw ConfigError("threshold_db", "required for the op task");
    if (task == Task::Ber && !scheme) throw ConfigError("modulation.scheme", "required for the ber task");
    if (uses_fso()) {
        try {
            FsoParams{alpha, beta, xi, detection, 1.0}.validate();
        } catch (const ValidationError& e) {
            throw ConfigError("fso", e.what());
        }
    }
    if (uses_rf()) {
        RfParams r = rf;
        r.gamma_bar = 1.0;
        try {
            r.validate();
        } catch (const ValidationError& e) {
            throw ConfigError("rf", e.what());
        }
    }
    if (task == Task::Ber) {
        ModulationSpec mod;
        try {
            mod = make_modspec(*scheme, order);
        } catch (const ValidationError& e) {
            throw ConfigError("modulation.M", e.what());
        }
        if (uses_fso() && !mod.allows(detection)) {
            throw ConfigError("modulation.scheme", mod.name() + " is not meant for " +
                                                       std::string(to_string(detection)) + " detection");
        }
    }
    if (mc_enabled) {
        try {
            mc.validate();
        } catch (const ValidationError& e) {
            throw ConfigError("mc", e.what());
        }
    }
}

SweepConfig parse_sweep_config(std::istream& in, std::optional<Task> task) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
        if (!kv.emplace(key, value).second) throw ConfigError(key, "given twice");
    }

    Fields f(std::move(kv));
    SweepConfig c;
    const auto link = f.text("link");
    if (!link) throw ConfigError("link", "missing");
    try {
        c.link = parse_link_kind(*link);
    } catch (const ValidationError& e) {
        throw ConfigError("link", e.what());
    }
    if (const auto declared = f.text("task")) {
        const std::string t = lower(*declared);
        if (t == "op") {
            c.task = Task::Op;
        } else if (t == "ber") {
            c.task = Task::Ber;
        } else {
            throw ConfigError("task", "expected op or ber");
        }
        if (task && *task != c.task) {
            throw ConfigError("task", "config asks for " + std::string(to_string(c.task)) + " but " +
                                          std::string(to_string(*task)) + " was requested");
        }
    }
    if (task) c.task = *task;
    c.threshold_db = f.number("threshold_db");

    if (c.uses_fso()) {
        if (const auto preset = f.text("fso.turbulence")) {
            if (f.has("fso.alpha") || f.has("fso.beta")) {
                throw ConfigError("fso.turbulence", "give either a preset or alpha/beta");
            }
            const std::string p = lower(*preset);
            const Turbulence t = p == "weak"       ? kWeakTurbulence
                                 : p == "moderate" ? kModerateTurbulence
                                 : p == "strong"   ? kStrongTurbulence
                                                   : throw ConfigError("fso.turbulence", "expected weak, moderate or strong");
            c.alpha = t.alpha;
            c.beta = t.beta;
        } else {
            const auto a = f.number("fso.alpha");
            const auto b = f.number("fso.beta");
            if (!a) throw ConfigError("fso.alpha", "missing (or give fso.turbulence)");
            if (!b) throw ConfigError("fso.beta", "missing (or give fso.turbulence)");
            c.alpha = *a;
            c.beta = *b;
        }
        c.xi = f.number("fso.xi").value_or(1.0);
        if (const auto d = f.text("fso.detection")) {
            try {
                c.detection = parse_detection(*d);
            } catch (const ValidationError& e) {
                throw ConfigError("fso.detection", e.what());
            }
        }
        c.fso_snr = read_snr(f, "fso.snr_db");
    }
    if (c.uses_rf()) {
        const auto kappa = f.number("rf.kappa");
        const auto mu = f.number("rf.mu");
        const auto m = f.number("rf.m");
        if (!kappa) throw ConfigError("rf.kappa", "missing");
        if (!mu) throw ConfigError("rf.mu", "missing");
        if (!m) throw ConfigError("rf.m", "missing");
        c.rf = RfParams{*kappa, *mu, *m, 1.0};
        c.rf_snr = read_snr(f, "rf.snr_db");
    }
    if (const auto s = f.text("modulation.scheme")) {
        try {
            c.scheme = parse_scheme(*s);
        } catch (const ValidationError& e) {
            throw ConfigError("modulation.scheme", e.what());
        }
    }
    if (const auto order = f.count("modulation.M")) {
        if (*order > 1u << 20) throw ConfigError("modulation.M", "too large");
        c.order = static_cast<unsigned>(*order);
    }

    c.mc_enabled = f.flag("mc.enabled").value_or(false);
    if (const auto n = f.count("mc.samples")) c.mc.samples = *n;
    if (const auto s = f.count("mc.seed")) c.mc.master_seed = *s;
    if (const auto w = f.count("mc.workers")) {
        if (*w > 1024) throw ConfigError("mc.workers", "too many workers");
        c.mc.workers = static_cast<unsigned>(*w);
    }
    if (const auto l = f.number("mc.ci_level")) c.mc.ci_level = *l;
    c.plot_script = f.text("plot.script");

    f.reject_unused();
    c.validate();
    return c;
}

SweepConfig load_sweep_config(const std::string& path, std::optional<Task> task) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_sweep_config(in, task);
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::vector<double> xs = cfg.sweep_db();
    std::vector<SweepRow> rows(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        rows[k].sweep_snr_db = xs[k];
        try {
            const double v = analytical_at(cfg, xs[k]);
            if (!std::isfinite(v)) throw ConvergenceError("non-finite value");
            rows[k].analytical = v;
        } catch (const ConvergenceError& e) {
            rows[k].status = std::string("numerical_failure: ") + e.what();
        } catch (const DomainError& e) {
            rows[k].status = std::string("numerical_failure: ") + e.what();
        }
    }
    if (cfg.mc_enabled) {
        // one pass of draws shared across the sweep
        const LinkModel model = model_at(cfg, xs.front());
        std::vector<GridPoint> points;
        for (double x : xs) {
            const auto [fdb, rdb] = branch_db(cfg, x);
            points.push_back({db_to_linear(fdb), db_to_linear(rdb),
                              cfg.task == Task::Op ? db_to_linear(*cfg.threshold_db) : 1.0});
        }
        const std::vector<McEstimate> est =
            cfg.task == Task::Op ? estimate_outage_grid(model, points, cfg.mc)
                                 : estimate_ber_grid(model, make_modspec(*cfg.scheme, cfg.order), points, cfg.mc);
        for (std::size_t k = 0; k < xs.size(); ++k) rows[k].mc = est[k];
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        out << number_text(r.sweep_snr_db) << ',';
        if (r.analytical) out << number_text(*r.analytical);
        out << ',';
        if (r.mc) out << number_text(r.mc->point) << ',' << number_text(r.mc->ci_low) << ',' << number_text(r.mc->ci_high);
        else out << ",,";
        out << ',' << csv_field(r.status) << '\n';
    }
}

std::string plot_script(const SweepConfig& cfg, const std::string& csv_path) {
    std::ostringstream s;
    const std::string axis = cfg.uses_fso() && cfg.fso_snr.is_range ? "FSO" : "RF";
    s << "#!/usr/bin/env python3\n"
      << "# plots the sweep written to " << csv_path << "\n"
      << "import csv\nimport sys\n\nimport matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n"
      << "path = sys.argv[1] if len(sys.argv) > 1 else " << '"' << csv_path << "\"\n"
      << "rows = list(csv.DictReader(open(path)))\n"
      << "x = [float(r[\"sweep_snr_db\"]) for r in rows if r[\"analytical\"]]\n"
      << "y = [float(r[\"analytical\"]) for r in rows if r[\"analytical\"]]\n"
      << "plt.semilogy(x, y, \"-\", label=\"analytical\")\n"
      << "mc = [r for r in rows if r[\"mc_point\"] and float(r[\"mc_point\"]) > 0]\n"
      << "if mc:\n"
      << "    mx = [float(r[\"sweep_snr_db\"]) for r in mc]\n"
      << "    my = [float(r[\"mc_point\"]) for r in mc]\n"
      << "    lo = [m - float(r[\"mc_ci_low\"]) for m, r in zip(my, mc)]\n"
      << "    hi = [float(r[\"mc_ci_high\"]) - m for m, r in zip(my, mc)]\n"
      << "    plt.errorbar(mx, my, yerr=[lo, hi], fmt=\"o\", mfc=\"none\", label=\"Monte Carlo\")\n"
      << "plt.xlabel(\"average SNR of the " << axis << " link (dB)\")\n"
      << "plt.ylabel(\"" << (cfg.task == Task::Op ? "outage probability" : "average BER") << "\")\n"
      << "plt.title(\"" << to_string(cfg.link) << " " << to_string(cfg.task) << "\")\n"
      << "plt.grid(True, which=\"both\", alpha=0.3)\nplt.legend()\n"
      << "plt.savefig(path.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n";
    return s.str();
}

}  // namespace fsorf
