#include "fsorf/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "fsorf/error.hpp"

namespace fsorf {
namespace {

enum class Kind { Fso, Rf, Sc, Mrc, Constant };

// Link reduced to unit-SNR branches plus a rule for combining them at given branch SNRs.
struct UnitLink {
    Kind kind = Kind::Constant;
    std::optional<FsoParams> fso;
    std::optional<RfParams> rf;
    double constant = 0.0;
    GridPoint own;  // the model's own SNRs

    double combine(double z, double w, const GridPoint& at) const {
        switch (kind) {
            case Kind::Fso: return at.fso_snr * z;
            case Kind::Rf: return at.rf_snr * w;
            case Kind::Sc: return std::max(at.fso_snr * z, at.rf_snr * w);
            case Kind::Mrc: return at.fso_snr * z + at.rf_snr * w;
            case Kind::Constant: break;
        }
        return constant;
    }
};

UnitLink reduce(const LinkModel& model) {
    UnitLink u;
    auto unit_fso = [](FsoParams f) {
        f.validate();
        f.mu_r = 1.0;
        return f;
    };
    auto unit_rf = [](RfParams r) {
        r.validate();
        r.gamma_bar = 1.0;
        return r;
    };
    if (const auto* f = std::get_if<FsoParams>(&model)) {
        u.kind = Kind::Fso;
        u.fso = unit_fso(*f);
        u.own.fso_snr = f->mu_r;
    } else if (const auto* r = std::get_if<RfParams>(&model)) {
        u.kind = Kind::Rf;
        u.rf = unit_rf(*r);
        u.own.rf_snr = r->gamma_bar;
    } else if (const auto* h = std::get_if<HybridLink>(&model)) {
        u.kind = h->combiner() == Combiner::SC ? Kind::Sc : Kind::Mrc;
        u.fso = unit_fso(h->fso());
        u.rf = unit_rf(h->rf());
        u.own.fso_snr = h->fso().mu_r;
        u.own.rf_snr = h->rf().gamma_bar;
    } else {
        const double c = std::get<ConstantSnr>(model).value;
        if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("constant SNR must be finite and non-negative");
        u.constant = c;
    }
    return u;
}

// Running mean and second central moment, merged with Chan's update.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    static Moments merge(const Moments& a, const Moments& b) {
        if (a.n == 0.0) return b;
        if (b.n == 0.0) return a;
        Moments m;
        m.n = a.n + b.n;
        const double d = b.mean - a.mean;
        m.mean = a.mean + d * (b.n / m.n);
        m.m2 = a.m2 + b.m2 + d * d * (a.n * b.n / m.n);
        return m;
    }
};

struct Partial {
    std::vector<std::uint64_t> hits;
    std::vector<Moments> moments;

    static Partial merge(const Partial& a, const Partial& b) {
        Partial out;
        out.hits.resize(a.hits.size());
        for (std::size_t i = 0; i < a.hits.size(); ++i) out.hits[i] = a.hits[i] + b.hits[i];
        out.moments.resize(a.moments.size());
        for (std::size_t i = 0; i < a.moments.size(); ++i) out.moments[i] = Moments::merge(a.moments[i], b.moments[i]);
        return out;
    }
};

// in-order pairwise tree over the block partials; the shape depends only on the block count
Partial reduce_blocks(std::vector<Partial>& parts) {
    for (std::size_t stride = 1; stride < parts.size(); stride *= 2) {
        for (std::size_t i = 0; i + stride < parts.size(); i += 2 * stride) {
            parts[i] = Partial::merge(parts[i], parts[i + stride]);
        }
    }
    return std::move(parts.front());
}

// Runs `block_fn(stream, count)` over the fixed block decomposition on cfg.workers threads.
template <class BlockFn>
Partial run_blocks(const McConfig& cfg, BlockFn&& block_fn) {
    cfg.validate();
    const std::uint64_t blocks = (cfg.samples + cfg.block_size - 1) / cfg.block_size;
    std::vector<Partial> parts(blocks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            const std::uint64_t count = std::min(cfg.block_size, cfg.samples - b * cfg.block_size);
            RandomStream rng(cfg.master_seed, b);
            parts[b] = block_fn(rng, count);
        }
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, blocks));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                try {
                    work();
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = blocks;
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    return reduce_blocks(parts);
}

// Draws unit-SNR branch pairs for one block. Samplers are rebuilt per block since the
// standard distributions carry state between calls.
template <class Visit>
void draw_block(const UnitLink& link, RandomStream& rng, std::uint64_t count, Visit&& visit) {
    std::optional<FsoSampler> fso;
    std::optional<RfSampler> rf;
    if (link.fso) fso.emplace(*link.fso);
    if (link.rf) rf.emplace(*link.rf);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double z = fso ? (*fso)(rng) : 0.0;
        const double w = rf ? (*rf)(rng) : 0.0;
        visit(z, w);
    }
}

McEstimate normal_estimate(const Moments& m, double level) {
    McEstimate e;
    e.samples_used = static_cast<std::uint64_t>(m.n);
    e.point = m.mean;
    e.std_error = m.n > 1.0 ? std::sqrt(m.m2 / (m.n - 1.0) / m.n) : 0.0;
    const double half = ci_quantile(level) * e.std_error;
    e.ci_low = e.point - half;
    e.ci_high = e.point + half;
    return e;
}

std::vector<McEstimate> ber_grid(const LinkModel& model, const ModulationSpec& mod,
                                 const std::vector<GridPoint>& points, const McConfig& cfg) {
    const UnitLink link = reduce(model);
    Partial total = run_blocks(cfg, [&](RandomStream& rng, std::uint64_t count) {
        Partial p;
        p.moments.resize(points.size());
        draw_block(link, rng, count, [&](double z, double w) {
            for (std::size_t k = 0; k < points.size(); ++k) {
                p.moments[k].add(conditional_ber(mod, link.combine(z, w, points[k])));
            }
        });
        return p;
    });
    std::vector<McEstimate> out;
    for (const Moments& m : total.moments) out.push_back(normal_estimate(m, cfg.ci_level));
    return out;
}

}  // namespace

void McConfig::validate() const {
    detail::require(samples >= 1, "monte carlo: samples must be positive");
    detail::require(workers >= 1, "monte carlo: workers must be positive");
    detail::require(block_size >= 1, "monte carlo: block size must be positive");
    detail::require(ci_level > 0.0 && ci_level < 1.0, "monte carlo: ci level must lie in (0, 1)");
}

SnrSampler::SnrSampler(const LinkModel& model) {
    const UnitLink link = reduce(model);
    combine_ = [link](double z, double w) { return link.combine(z, w, link.own); };
    if (link.fso) fso_.emplace(*link.fso);
    if (link.rf) rf_.emplace(*link.rf);
}

double SnrSampler::operator()(RandomStream& rng) {
    const double z = fso_ ? (*fso_)(rng) : 0.0;
    const double w = rf_ ? (*rf_)(rng) : 0.0;
    return combine_(z, w);
}

double ci_quantile(double level) {
    detail::require(level > 0.0 && level < 1.0, "ci level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * level);
}

McEstimate wilson_estimate(std::uint64_t hits, std::uint64_t n, double level) {
    detail::require(n >= 1, "wilson interval needs at least one trial");
    const double z = ci_quantile(level);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    McEstimate e;
    e.point = p;
    e.std_error = std::sqrt(p * (1.0 - p) / nn);
    e.ci_low = std::clamp(std::min(centre - half, p), 0.0, 1.0);
    e.ci_high = std::clamp(std::max(centre + half, p), 0.0, 1.0);
    e.samples_used = n;
    return e;
}

std::vector<McEstimate> estimate_outage_grid(const LinkModel& model, const std::vector<GridPoint>& points,
                                             const McConfig& cfg) {
    const UnitLink link = reduce(model);
    for (const GridPoint& g : points) {
        if (!(g.gamma_th > 0.0)) throw DomainError("outage threshold must be positive");
    }
    Partial total = run_blocks(cfg, [&](RandomStream& rng, std::uint64_t count) {
        Partial p;
        p.hits.assign(points.size(), 0);
        draw_block(link, rng, count, [&](double z, double w) {
            for (std::size_t k = 0; k < points.size(); ++k) {
                p.hits[k] += link.combine(z, w, points[k]) <= points[k].gamma_th;
            }
        });
        return p;
    });
    std::vector<McEstimate> out;
    for (std::uint64_t h : total.hits) out.push_back(wilson_estimate(h, cfg.samples, cfg.ci_level));
    return out;
}

std::vector<McEstimate> estimate_outage(const LinkModel& model, const std::vector<double>& thresholds,
                                        const McConfig& cfg) {
    const GridPoint own = reduce(model).own;
    std::vector<GridPoint> points;
    for (double th : thresholds) points.push_back({own.fso_snr, own.rf_snr, th});
    return estimate_outage_grid(model, points, cfg);
}

McEstimate estimate_outage(const LinkModel& model, double gamma_th, const McConfig& cfg) {
    return estimate_outage(model, std::vector<double>{gamma_th}, cfg).front();
}

std::vector<McEstimate> estimate_ber_grid(const LinkModel& model, const ModulationSpec& mod,
                                          const std::vector<GridPoint>& points, const McConfig& cfg) {
    if (const auto* f = std::get_if<FsoParams>(&model)) require_compatible(mod, f->detection);
    if (const auto* h = std::get_if<HybridLink>(&model)) require_compatible(mod, h->fso().detection);
    return ber_grid(model, mod, points, cfg);
}

McEstimate estimate_ber_unchecked(const LinkModel& model, const ModulationSpec& mod, const McConfig& cfg) {
    return ber_grid(model, mod, {reduce(model).own}, cfg).front();
}

McEstimate estimate_ber(const LinkModel& model, const ModulationSpec& mod, const McConfig& cfg) {
    return estimate_ber_grid(model, mod, {reduce(model).own}, cfg).front();
}

McEstimate estimate_expectation(const LinkModel& model, const std::function<double(double)>& g,
                                const McConfig& cfg) {
    const UnitLink link = reduce(model);
    Partial total = run_blocks(cfg, [&](RandomStream& rng, std::uint64_t count) {
        Partial p;
        p.moments.resize(1);
        draw_block(link, rng, count, [&](double z, double w) { p.moments[0].add(g(link.combine(z, w, link.own))); });
        return p;
    });
    return normal_estimate(total.moments[0], cfg.ci_level);
}

}  // namespace fsorf
