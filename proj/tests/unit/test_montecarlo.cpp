#include <doctest.h>

#include <cmath>
#include <vector>

#include "fsorf/error.hpp"
#include "fsorf/montecarlo.hpp"

using namespace fsorf;

namespace {

McConfig config(std::uint64_t samples, std::uint64_t seed, unsigned workers = 1) {
    McConfig cfg;
    cfg.samples = samples;
    cfg.master_seed = seed;
    cfg.workers = workers;
    cfg.block_size = 1 << 14;
    return cfg;
}

bool same(const McEstimate& a, const McEstimate& b) {
    return a.point == b.point && a.std_error == b.std_error && a.ci_low == b.ci_low && a.ci_high == b.ci_high &&
           a.samples_used == b.samples_used;
}

const RfParams kRayleigh{0.0, 1, 1, 4.0};

}  // namespace

TEST_CASE("streams are reproducible and independent of partitioning") {
    RandomStream a(42, 0), b(42, 0);
    for (int i = 0; i < 3; ++i) CHECK(a() == b());
    auto four = spawn_streams(42, 4);
    auto eight = spawn_streams(42, 8);
    for (int i = 0; i < 100; ++i) CHECK(four[2]() == eight[2]());
    CHECK_THROWS_AS(spawn_streams(42, 0), ValidationError);

    const int n = 1'000'000;
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    int outside = 0;
    for (int i = 0; i < n; ++i) {
        const double x = eight[0].uniform(), y = eight[5].uniform();
        outside += !(x > 0.0 && x < 1.0);
        sx += x, sy += y, sxy += x * y, sxx += x * x, syy += y * y;
    }
    CHECK(outside == 0);
    const double cov = sxy / n - sx / n * sy / n;
    const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK(std::abs(corr) < 3.0 / std::sqrt(n));
}

TEST_CASE("wilson interval") {
    const McEstimate zero = wilson_estimate(0, 1000, 0.9973);
    CHECK(zero.point == 0.0);
    CHECK(zero.ci_low == 0.0);
    CHECK(zero.ci_high > 0.0);
    const McEstimate half = wilson_estimate(500, 1000, 0.9973);
    CHECK(half.ci_low < 0.5);
    CHECK(half.ci_high > 0.5);
    CHECK(half.ci_high - 0.5 == doctest::Approx(0.5 - half.ci_low));
    CHECK(ci_quantile(0.9973) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("rayleigh outage is covered") {
    const McEstimate e = estimate_outage(kRayleigh, kRayleigh.gamma_bar, config(200'000, 3));
    CHECK(e.covers(1.0 - std::exp(-1.0)));
    CHECK(e.ci_low <= e.point);
    CHECK(e.point <= e.ci_high);
    CHECK(e.samples_used == 200'000);
}

TEST_CASE("estimates are bit identical across reruns and worker counts") {
    const HybridLink link(make_fso(kModerateTurbulence, 1.0, Detection::HD, 10.0), {5, 1, 2, 10.0}, Combiner::MRC);
    const ModulationSpec bpsk = make_modspec(Scheme::MPSK, 2);
    const McEstimate ref_op = estimate_outage(link, 8.0, config(100'000, 11, 1));
    const McEstimate ref_ber = estimate_ber(link, bpsk, config(100'000, 11, 1));
    for (unsigned w : {1u, 4u, 8u}) {
        CHECK(same(estimate_outage(link, 8.0, config(100'000, 11, w)), ref_op));
        CHECK(same(estimate_ber(link, bpsk, config(100'000, 11, w)), ref_ber));
    }
    CHECK_FALSE(same(estimate_outage(link, 8.0, config(100'000, 12, 1)), ref_op));
}

TEST_CASE("grid points equal dedicated runs") {
    const FsoParams fso = make_fso(kStrongTurbulence, 1.0, Detection::IMDD, 10.0);
    const RfParams rf{5, 1, 2, 10.0};
    const HybridLink sc(fso, rf, Combiner::SC);
    const McConfig cfg = config(50'000, 5);
    std::vector<GridPoint> points;
    for (double snr : {3.0, 10.0, 30.0}) points.push_back({snr, rf.gamma_bar, 2.0});
    const auto grid = estimate_outage_grid(sc, points, cfg);
    for (std::size_t k = 0; k < points.size(); ++k) {
        FsoParams f = fso;
        f.mu_r = points[k].fso_snr;
        CHECK(same(grid[k], estimate_outage(HybridLink(f, rf, Combiner::SC), 2.0, cfg)));
    }
}

TEST_CASE("fso outage inside the interval") {
    const FsoParams f = make_fso(kModerateTurbulence, 1.0, Detection::HD, 10.0);
    const std::vector<double> th{0.5, 2.0, 5.0, 10.0, 30.0};
    const auto est = estimate_outage(f, th, config(400'000, 21));
    for (std::size_t k = 0; k < th.size(); ++k) CHECK(est[k].covers(fso_outage(f, th[k])));
}

TEST_CASE("ber estimates") {
    const McEstimate zero = estimate_ber(ConstantSnr{0.0}, make_modspec(Scheme::MQAM, 16), config(1000, 1));
    CHECK(zero.point == make_modspec(Scheme::MQAM, 16).ceiling());
    CHECK(zero.std_error == 0.0);

    const RfParams ray{0.0, 1, 1, 10.0};
    const McEstimate bpsk = estimate_ber(ray, make_modspec(Scheme::MPSK, 2), config(400'000, 8));
    CHECK(bpsk.covers(0.5 * (1.0 - std::sqrt(10.0 / 11.0))));

    const FsoParams strong = make_fso(kStrongTurbulence, 1.0, Detection::IMDD, 100.0);
    const McEstimate ook = estimate_ber(strong, make_modspec(Scheme::OOK), config(1'000'000, 9));
    CHECK(ook.covers(fso_avg_ber(strong, make_modspec(Scheme::OOK))));
    CHECK(ook.point == doctest::Approx(7.48e-2).epsilon(0.02));

    CHECK_THROWS_AS(estimate_ber(strong, make_modspec(Scheme::MPSK, 2), config(10, 1)), ValidationError);
    CHECK_NOTHROW(estimate_ber_unchecked(strong, make_modspec(Scheme::MPSK, 2), config(10, 1)));
}

TEST_CASE("hybrid closed forms inside the interval") {
    const FsoParams fso = make_fso(kModerateTurbulence, 1.0, Detection::HD, 10.0);
    const HybridLink sc(fso, {5, 1, 2, 10.0}, Combiner::SC);
    const HybridLink mrc(fso, {5, 1, 2, 10.0}, Combiner::MRC);
    const McConfig cfg = config(400'000, 17);
    CHECK(estimate_outage(sc, 5.0, cfg).covers(sc_cdf(sc, 5.0)));
    const std::vector<double> th{1.0, 3.0, 8.0, 15.0, 40.0};
    const auto est = estimate_outage(sc, th, cfg);
    for (std::size_t k = 0; k < th.size(); ++k) CHECK(est[k].covers(sc_outage(sc, th[k])));
    CHECK(estimate_outage(mrc, 8.0, cfg).covers(mrc_cdf(mrc, 8.0)));
    CHECK(estimate_outage(mrc, 8.0, cfg).covers(mrc_cdf_oracle(mrc, 8.0)));

    for (double s : {-0.05, -0.5}) {
        const McEstimate m = estimate_expectation(mrc, [s](double g) { return std::exp(s * g); }, cfg);
        CHECK(std::abs(m.point - mrc_mgf(mrc, s)) <= 3.0 * m.std_error);
    }
    const ModulationSpec qpsk = make_modspec(Scheme::MPSK, 4);
    CHECK(estimate_ber(sc, qpsk, cfg).covers(sc_avg_ber(sc, qpsk)));
    CHECK(estimate_ber(mrc, qpsk, cfg).covers(mrc_avg_ber(mrc, qpsk)));
}

TEST_CASE("interval coverage over seeds") {
    const double truth = 1.0 - std::exp(-0.5);
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        covered += estimate_outage(kRayleigh, 0.5 * kRayleigh.gamma_bar, config(20'000, 1000 + seed)).covers(truth);
    }
    CHECK(covered >= 198);
}

TEST_CASE("monte carlo config validation") {
    McConfig cfg;
    cfg.samples = 0;
    CHECK_THROWS_AS(estimate_outage(kRayleigh, 1.0, cfg), ValidationError);
    cfg = McConfig{};
    cfg.ci_level = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK_THROWS_AS(estimate_ber(ConstantSnr{-1.0}, make_modspec(Scheme::OOK), config(10, 1)), ValidationError);
    CHECK_THROWS_AS(estimate_outage(kRayleigh, 0.0, config(10, 1)), DomainError);
}
