#include "fsorf/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "fsorf/error.hpp"

namespace fsorf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStirlingRadius = 12.0;

// B_{2k} / (2k (2k - 1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,     1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

cplx stirling_log_gamma(cplx w) {
    const cplx inv = 1.0 / w;
    const cplx inv2 = inv * inv;
    cplx series = kStirling.back();
    for (auto it = kStirling.rbegin() + 1; it != kStirling.rend(); ++it) series = *it + inv2 * series;
    const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (w - 0.5) * std::log(w) - w + half_log_two_pi + inv * series;
}

cplx neg_inf_log() { return {-kInf, 0.0}; }

// log Γ(z) modulo 2πi, for kernels that are exponentiated anyway. The recurrence factors
// are multiplied together and a single log is taken, which is several times cheaper than
// the branch-tracking sum.
cplx kernel_log_gamma(cplx z) {
    if (is_gamma_pole(z)) throw DomainError("log-gamma: pole at a non-positive integer");
    cplx prod{1.0, 0.0};
    cplx shift{0.0, 0.0};
    cplx w = z;
    while (w.real() < 0.0 || std::norm(w) < kStirlingRadius * kStirlingRadius) {
        prod *= w;
        if (std::norm(prod) > 1e250) {
            shift += std::log(prod);
            prod = 1.0;
        }
        w += 1.0;
    }
    return stirling_log_gamma(w) - shift - std::log(prod);
}

// -log Γ(z), or -inf when Γ has a pole there (so that 1/Γ contributes an exact zero).
cplx log_reciprocal_gamma(cplx z) {
    if (is_gamma_pole(z)) return neg_inf_log();
    return -kernel_log_gamma(z);
}

// log|Γ(x)| for real x; +inf at poles
double real_log_abs_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return kInf;
    return boost::math::lgamma(x);
}

// Re log Θ(s) - s log z on the real axis, with real log|Γ| throughout
double real_log_kernel(const FoxHParams& params, double s, double log_z) {
    double acc = -s * log_z;
    for (std::size_t j = 0; j < params.q(); ++j) {
        const auto& t = params.lower[j];
        acc += j < params.m ? real_log_abs_gamma(t.value + t.coeff * s) : -real_log_abs_gamma(1.0 - t.value - t.coeff * s);
    }
    for (std::size_t j = 0; j < params.p(); ++j) {
        const auto& t = params.upper[j];
        acc += j < params.n ? real_log_abs_gamma(1.0 - t.value - t.coeff * s) : -real_log_abs_gamma(t.value + t.coeff * s);
    }
    return std::isnan(acc) ? kInf : acc;
}

// Abscissa minimising Re log Θ(c) - c log z over the strip. On that line the integrand
// magnitude is closest to the value itself, so cancellation along the line is smallest.
// Near a finite strip end the minimiser sits about 1/|log z| from the pole, hence the
// geometric candidate grid that starts very close to each bound.
// Candidate abscissas for a strip: geometric from each finite bound (the optimum can sit
// very close to a pole), plus the midpoint of a bounded strip.
std::vector<double> strip_candidates(const Strip& strip) {
    std::vector<double> candidates;
    auto add_from = [&](double bound, int direction, double reach) {
        for (double d = 1e-4; d < reach; d *= 1.5) candidates.push_back(bound + direction * d);
    };
    if (strip.bounded()) {
        const double width = strip.right - strip.left;
        add_from(strip.left, +1, 0.5 * width);
        add_from(strip.right, -1, 0.5 * width);
        candidates.push_back(0.5 * (strip.left + strip.right));
    } else if (std::isfinite(strip.left)) {
        add_from(strip.left, +1, 1e7);
    } else if (std::isfinite(strip.right)) {
        add_from(strip.right, -1, 1e7);
    } else {
        for (double d = 1e-4; d < 1e7; d *= 1.5) {
            candidates.push_back(d);
            candidates.push_back(-d);
        }
        candidates.push_back(0.0);
    }
    std::sort(candidates.begin(), candidates.end());
    return candidates;
}

double minimising_abscissa(const FoxHParams& params, const Strip& strip, double log_z) {
    const std::vector<double> candidates = strip_candidates(strip);

    std::vector<double> values(candidates.size());
    std::size_t best = 0;
    double best_v = kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double v = values[i] = real_log_kernel(params, candidates[i], log_z);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    if (!std::isfinite(best_v)) return candidates[candidates.size() / 2];

    // golden-section refinement between the neighbouring candidates
    double lo = candidates[best > 0 ? best - 1 : best];
    double hi = candidates[best + 1 < candidates.size() ? best + 1 : best];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = real_log_kernel(params, x1, log_z), f2 = real_log_kernel(params, x2, log_z);
    for (int it = 0; it < 80 && hi - lo > 1e-7 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = real_log_kernel(params, x1, log_z);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = real_log_kernel(params, x2, log_z);
        }
    }
    double c_min = 0.5 * (lo + hi);
    double v_min = real_log_kernel(params, c_min, log_z);
    if (!(v_min <= best_v)) {
        c_min = candidates[best];
        v_min = best_v;
    }

    // Trade a bounded amount of cancellation (e^8) for distance from the poles: the
    // trapezoid step needed on the line shrinks with that distance.
    constexpr double slack = 8.0;
    constexpr double enough = 1.0;
    auto clearance = [&](double c) { return std::min({c - strip.left, strip.right - c, enough}); };
    double chosen = c_min;
    double chosen_clear = clearance(c_min);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double c = candidates[i];
        if (!(values[i] <= v_min + slack)) continue;
        const double cl = clearance(c);
        if (cl > chosen_clear) {
            chosen = c;
            chosen_clear = cl;
        } else if (cl == chosen_clear && cl == enough && std::abs(c - c_min) < std::abs(chosen - c_min)) {
            chosen = c;
        }
    }
    return chosen;
}

double choose_abscissa(const FoxHParams& params, const Strip& strip, double log_z) {
    if (strip.empty()) {
        throw ValidationError("Fox H: left and right pole sets overlap (no separating vertical line)");
    }
    return minimising_abscissa(params, strip, log_z);
}

void check_abscissa(const Strip& strip, double c) {
    if (!(c > strip.left && c < strip.right)) {
        throw ValidationError("Fox H: requested abscissa " + std::to_string(c) +
                              " lies outside the admissible strip");
    }
}

}  // namespace

bool is_gamma_pole(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx log_gamma_complex(cplx z) {
    if (is_gamma_pole(z)) throw DomainError("log_gamma_complex: pole of Gamma at non-positive integer");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("log_gamma_complex: non-finite argument");
    }
    // Recurrence up to the Stirling region. Summing logs term by term keeps the principal
    // branch (each log(z + k) is continuous off the negative real axis).
    cplx shift{0.0, 0.0};
    cplx w = z;
    while (w.real() < 0.0 || std::norm(w) < kStirlingRadius * kStirlingRadius) {
        shift += std::log(w);
        w += 1.0;
    }
    return stirling_log_gamma(w) - shift;
}

double upper_incomplete_gamma_reg(double p, double x) {
    if (!(p > 0.0)) throw DomainError("upper_incomplete_gamma_reg: p must be positive");
    if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma_reg: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return boost::math::gamma_q(p, x);
}

void FoxHParams::validate() const {
    detail::require(n <= p(), "Fox H: n must not exceed p");
    detail::require(m <= q(), "Fox H: m must not exceed q");
    for (const auto& t : upper) {
        detail::require(std::isfinite(t.value), "Fox H: non-finite upper parameter");
        detail::require(t.coeff > 0.0, "Fox H: upper coefficients A_j must be positive");
    }
    for (const auto& t : lower) {
        detail::require(std::isfinite(t.value), "Fox H: non-finite lower parameter");
        detail::require(t.coeff > 0.0, "Fox H: lower coefficients B_j must be positive");
    }
}

FoxHParams MeijerGParams::as_fox_h() const {
    FoxHParams out;
    out.m = m;
    out.n = n;
    out.upper.reserve(upper.size());
    out.lower.reserve(lower.size());
    for (double a : upper) out.upper.push_back({a, 1.0});
    for (double b : lower) out.lower.push_back({b, 1.0});
    return out;
}

bool Strip::bounded() const noexcept { return std::isfinite(left) && std::isfinite(right); }

Strip admissible_strip(const FoxHParams& params) {
    Strip strip{-kInf, kInf};
    for (std::size_t j = 0; j < params.m; ++j) {
        strip.left = std::max(strip.left, -params.lower[j].value / params.lower[j].coeff);
    }
    for (std::size_t j = 0; j < params.n; ++j) {
        strip.right = std::min(strip.right, (1.0 - params.upper[j].value) / params.upper[j].coeff);
    }
    return strip;
}

cplx fox_h_log_kernel(const FoxHParams& params, cplx s) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < params.q(); ++j) {
        const auto& t = params.lower[j];
        if (j < params.m) {
            acc += kernel_log_gamma(t.value + t.coeff * s);
        } else {
            acc += log_reciprocal_gamma(1.0 - t.value - t.coeff * s);
        }
    }
    for (std::size_t j = 0; j < params.p(); ++j) {
        const auto& t = params.upper[j];
        if (j < params.n) {
            acc += kernel_log_gamma(1.0 - t.value - t.coeff * s);
        } else {
            acc += log_reciprocal_gamma(t.value + t.coeff * s);
        }
    }
    return acc;
}

ContourResult fox_h_contour(const FoxHParams& params, double z, const ContourPlan& plan) {
    params.validate();
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("Fox H: argument must be positive and finite");

    ContourResult result;
    if (params.m == 0 && params.n == 0) return result;  // no poles enclosed: identically zero

    const double log_z = std::log(z);
    const Strip strip = admissible_strip(params);
    const double c = plan.abscissa ? *plan.abscissa : choose_abscissa(params, strip, log_z);
    check_abscissa(strip, c);
    result.abscissa = c;
    auto where = [&] {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (z = %.6g, c = %.6g)", z, c);
        return std::string(buf);
    };

    // |H| <= e^{Re log Θ(c) - c log z} times an O(1) factor; below double range it is zero
    // |H| <= e^{log_scale} times an O(1) factor; below double range it is zero
    const double log_scale = real_log_kernel(params, c, log_z);
    if (log_scale < -760.0) {
        result.step = plan.initial_step;
        return result;
    }
    const double scale_factor = std::isfinite(log_scale) ? std::exp(log_scale) : 1.0;
    const double log_shift = std::isfinite(log_scale) ? log_scale : 0.0;

    // integrand divided by its modulus at t = 0, so neither tiny nor huge z under/overflows
    auto integrand = [&](double t) {
        const cplx s(c, t);
        const cplx log_value = fox_h_log_kernel(params, s) - s * log_z - log_shift;
        if (!std::isfinite(log_value.real())) return cplx{0.0, 0.0};
        return std::exp(log_value);
    };

    // Level 0: walk outward until the tail is negligible, fixing the truncation extent.
    double h = plan.initial_step;
    double max_mag = 0.0;
    double sum = 0.0;        // Σ' Re f(kh), half weight at k = 0
    double abs_sum = 0.0;    // Σ' |f(kh)|
    double imag_sum = 0.0;   // full-line imaginary residual
    std::size_t nodes = 0;

    auto accumulate = [&](double t, double weight) {
        const cplx f = integrand(t);
        const double mag = std::abs(f);
        max_mag = std::max(max_mag, mag);
        if (plan.full_line && t != 0.0) {
            const cplx g = integrand(-t);
            sum += weight * 0.5 * (f.real() + g.real());
            imag_sum += weight * (f.imag() + g.imag());
            ++nodes;
        } else {
            sum += weight * f.real();
            if (plan.full_line) imag_sum += weight * f.imag();
        }
        abs_sum += weight * mag;
        ++nodes;
        return mag;
    };

    accumulate(0.0, 0.5);
    double extent = 0.0;
    constexpr double min_extent = 2.0;
    for (std::size_t k = 1;; ++k) {
        const double t = static_cast<double>(k) * h;
        if (t > plan.max_extent) {
            throw ConvergenceError("Fox H: integrand tail did not decay within the contour extent" + where());
        }
        const double mag = accumulate(t, 1.0);
        if (t >= min_extent && mag < plan.tail_epsilon * max_mag) {
            extent = t;
            break;
        }
    }

    double estimate = h / std::numbers::pi * sum;
    for (int level = 1; level <= plan.max_levels; ++level) {
        h *= 0.5;
        for (std::size_t k = 1;; k += 2) {
            const double t = static_cast<double>(k) * h;
            const double mag = accumulate(t, 1.0);
            if (t >= extent && mag < plan.tail_epsilon * max_mag) {
                extent = std::max(extent, t);
                break;
            }
            if (t > plan.max_extent) {
                throw ConvergenceError("Fox H: integrand tail did not decay within the contour extent" + where());
            }
        }
        const double refined = h / std::numbers::pi * sum;
        const double scale = h / std::numbers::pi * abs_sum;
        const double diff = std::abs(refined - estimate);
        estimate = refined;
        if (level >= 1 && (diff <= plan.rel_tol * std::abs(refined) || diff <= 1e-15 * scale)) {
            result.value = refined * scale_factor;
            result.imag_residual = std::abs(h / (2.0 * std::numbers::pi) * imag_sum) * scale_factor;
            result.step = h;
            result.extent = extent;
            result.nodes = nodes;
            return result;
        }
    }
    throw ConvergenceError("Fox H: step halving did not converge within the node budget" + where());
}

double fox_h(const FoxHParams& params, double z, const ContourPlan& plan) {
    return fox_h_contour(params, z, plan).value;
}

double meijer_g(const MeijerGParams& params, double z, const ContourPlan& plan) {
    return fox_h(params.as_fox_h(), z, plan);
}

// ---------------------------------------------------------------------------
// Bivariate

void BivariateFoxHParams::validate() const {
    detail::require(n0 <= joint_upper.size(), "bivariate Fox H: n0 exceeds joint upper group");
    auto check = [](const JointGammaTerm& t) {
        detail::require(std::isfinite(t.value), "bivariate Fox H: non-finite joint parameter");
        detail::require(t.coeff_first > 0.0 && t.coeff_second > 0.0,
                        "bivariate Fox H: joint coefficients must be positive");
    };
    for (const auto& t : joint_upper) check(t);
    for (const auto& t : joint_lower) check(t);
    first.validate();
    second.validate();
}

namespace {

cplx joint_log_kernel(const BivariateFoxHParams& params, cplx s, cplx t) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < params.joint_upper.size(); ++j) {
        const auto& g = params.joint_upper[j];
        const cplx lin = g.coeff_first * s + g.coeff_second * t;
        if (j < params.n0) {
            acc += kernel_log_gamma(1.0 - g.value - lin);
        } else {
            acc += log_reciprocal_gamma(g.value + lin);
        }
    }
    for (const auto& g : params.joint_lower) {
        acc += log_reciprocal_gamma(1.0 - g.value - g.coeff_first * s - g.coeff_second * t);
    }
    return acc;
}

double real_joint_log_kernel(const BivariateFoxHParams& params, double c1, double c2) {
    double acc = 0.0;
    for (std::size_t j = 0; j < params.joint_upper.size(); ++j) {
        const auto& g = params.joint_upper[j];
        const double lin = g.coeff_first * c1 + g.coeff_second * c2;
        acc += j < params.n0 ? real_log_abs_gamma(1.0 - g.value - lin) : -real_log_abs_gamma(g.value + lin);
    }
    for (const auto& g : params.joint_lower) {
        acc -= real_log_abs_gamma(1.0 - g.value - g.coeff_first * c1 - g.coeff_second * c2);
    }
    return std::isnan(acc) ? kInf : acc;
}

// Smallest distance of the joint numerator arguments from their poles; must be positive.
double joint_clearance(const BivariateFoxHParams& params, double c1, double c2) {
    double clear = kInf;
    for (std::size_t j = 0; j < params.n0; ++j) {
        const auto& g = params.joint_upper[j];
        clear = std::min(clear, 1.0 - g.value - g.coeff_first * c1 - g.coeff_second * c2);
    }
    return clear;
}

// Pair of abscissas for the two contours, chosen like the univariate one: among grid
// pairs whose real log-integrand is within e^8 of the smallest, take the one furthest
// from every pole set.
std::pair<double, double> bivariate_abscissas(const BivariateFoxHParams& params, double log_x, double log_y,
                                              const BivariateContourPlan& plan) {
    const Strip s1 = admissible_strip(params.first);
    const Strip s2 = admissible_strip(params.second);
    if (s1.empty() || s2.empty()) throw ValidationError("bivariate Fox H: empty pole-separating strip");

    const std::vector<double> cand1 = plan.abscissa_first ? std::vector<double>{*plan.abscissa_first} : strip_candidates(s1);
    const std::vector<double> cand2 = plan.abscissa_second ? std::vector<double>{*plan.abscissa_second} : strip_candidates(s2);
    for (double c : cand1) check_abscissa(s1, c);
    for (double c : cand2) check_abscissa(s2, c);

    std::vector<double> v1(cand1.size()), v2(cand2.size());
    for (std::size_t i = 0; i < cand1.size(); ++i) v1[i] = real_log_kernel(params.first, cand1[i], log_x);
    for (std::size_t j = 0; j < cand2.size(); ++j) v2[j] = real_log_kernel(params.second, cand2[j], log_y);

    struct Pair {
        double c1, c2, value, clear;
    };
    std::vector<Pair> feasible;
    double best = kInf;
    constexpr double enough = 1.0;
    for (std::size_t i = 0; i < cand1.size(); ++i) {
        for (std::size_t j = 0; j < cand2.size(); ++j) {
            const double jc = joint_clearance(params, cand1[i], cand2[j]);
            if (!(jc > 0.0)) continue;
            const double v = v1[i] + v2[j] + real_joint_log_kernel(params, cand1[i], cand2[j]);
            if (!std::isfinite(v)) continue;
            const double clear = std::min({cand1[i] - s1.left, s1.right - cand1[i], cand2[j] - s2.left,
                                           s2.right - cand2[j], jc, enough});
            feasible.push_back({cand1[i], cand2[j], v, clear});
            best = std::min(best, v);
        }
    }
    if (feasible.empty()) throw ConvergenceError("bivariate Fox H: joint numerator poles cross the contours");

    constexpr double slack = 8.0;
    const Pair* chosen = nullptr;
    for (const auto& pr : feasible) {
        if (pr.value > best + slack) continue;
        if (!chosen || pr.clear > chosen->clear || (pr.clear == chosen->clear && pr.value < chosen->value)) chosen = &pr;
    }
    return {chosen->c1, chosen->c2};
}

// Lazily extended table of log Θ(c + i k h) - (c + i k h) log z for k >= 0.
class LineTable {
public:
    LineTable(const FoxHParams& params, double c, double h, double log_z)
        : params_(params), c_(c), h_(h), log_z_(log_z) {}

    cplx at(long k) {
        const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
        while (values_.size() <= idx) {
            const cplx s(c_, static_cast<double>(values_.size()) * h_);
            values_.push_back(fox_h_log_kernel(params_, s) - s * log_z_);
        }
        return k < 0 ? std::conj(values_[idx]) : values_[idx];
    }

private:
    const FoxHParams& params_;
    double c_, h_, log_z_;
    std::vector<cplx> values_;
};

}  // namespace

BivariateResult fox_h_bivariate_contour(const BivariateFoxHParams& params, double x, double y,
                                        const BivariateContourPlan& plan) {
    params.validate();
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("bivariate Fox H: arguments must be positive and finite");
    }

    BivariateResult result;
    const double log_x = std::log(x);
    const double log_y = std::log(y);
    const auto [c1, c2] = bivariate_abscissas(params, log_x, log_y, plan);
    result.abscissa_first = c1;
    result.abscissa_second = c2;

    // scale by the modulus at the origin of both lines; |H| is at most O(1) times it
    const double log_shift = real_log_kernel(params.first, c1, log_x) + real_log_kernel(params.second, c2, log_y) +
                             real_joint_log_kernel(params, c1, c2);
    if (log_shift < -760.0) return result;

    const double log_eps = std::log(plan.tail_epsilon);
    constexpr double min_span = 2.0;

    double h = plan.initial_step;
    double previous = 0.0;
    std::size_t total_nodes = 0;
    for (int level = 0; level <= plan.max_levels; ++level, h *= 0.5) {
        LineTable first(params.first, c1, h, log_x);
        LineTable second(params.second, c2, h, log_y);

        double log_max = -kInf;
        double total = 0.0;
        double abs_total = 0.0;
        std::size_t nodes = 0;

        // Each row τ1 = k h is walked outward in τ2 from zero in both directions.
        for (long k = 0;; ++k) {
            const double tau1 = static_cast<double>(k) * h;
            if (tau1 > plan.max_extent) {
                throw ConvergenceError("bivariate Fox H: tail did not decay in the first variable");
            }
            const cplx s(c1, tau1);
            const cplx l1 = first.at(k);
            double row = 0.0;
            double row_abs = 0.0;
            double row_log_max = -kInf;
            for (int dir : {+1, -1}) {
                for (long j = (dir > 0 ? 0 : -1);; j += dir) {
                    const double tau2 = static_cast<double>(j) * h;
                    if (std::abs(tau2) > plan.max_extent) {
                        throw ConvergenceError("bivariate Fox H: tail did not decay in the second variable");
                    }
                    const cplx t(c2, tau2);
                    const cplx lv = l1 + second.at(j) + joint_log_kernel(params, s, t) - log_shift;
                    ++nodes;
                    const double lm = lv.real();
                    if (std::isfinite(lm)) {
                        row_log_max = std::max(row_log_max, lm);
                        log_max = std::max(log_max, lm);
                        const cplx f = std::exp(lv);
                        row += f.real();
                        row_abs += std::abs(f);
                    }
                    if (std::abs(tau2) >= min_span && !(lm >= log_max + log_eps)) break;
                }
            }
            total += (k == 0 ? 1.0 : 2.0) * row;
            abs_total += (k == 0 ? 1.0 : 2.0) * row_abs;
            if (nodes > plan.max_nodes) {
                throw ConvergenceError("bivariate Fox H: node budget exhausted");
            }
            if (tau1 >= min_span && !(row_log_max >= log_max + log_eps)) break;
        }

        total_nodes += nodes;
        const double norm = h * h / (4.0 * std::numbers::pi * std::numbers::pi);
        const double estimate = norm * total;
        const double diff = std::abs(estimate - previous);
        if (level >= 1 && (diff <= plan.rel_tol * std::abs(estimate) || diff <= 1e-14 * norm * abs_total)) {
            result.value = estimate * std::exp(log_shift);
            result.step = h;
            result.nodes = total_nodes;
            return result;
        }
        previous = estimate;
    }
    throw ConvergenceError("bivariate Fox H: step halving did not converge");
}

double fox_h_bivariate(const BivariateFoxHParams& params, double x, double y,
                       const BivariateContourPlan& plan) {
    return fox_h_bivariate_contour(params, x, y, plan).value;
}

}  // namespace fsorf
