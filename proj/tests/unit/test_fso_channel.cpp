#include <doctest.h>

#include <cmath>
#include <vector>

#include "fsorf/error.hpp"
#include "fsorf/fso_channel.hpp"
#include "fsorf/quadrature.hpp"

using namespace fsorf;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }
double db(double x) { return std::pow(10.0, x / 10.0); }

const Turbulence kPresets[] = {kWeakTurbulence, kModerateTurbulence, kStrongTurbulence};

}  // namespace

TEST_CASE("fso pdf integrates to one") {
    for (Turbulence t : kPresets) {
        for (Detection d : {Detection::HD, Detection::IMDD}) {
            for (double xi : {0.65, 1.0, 2.15, 10.45}) {
                const FsoParams p = make_fso(t, xi, d, 10.0);
                // γ = e^u; mass below e^{-40} taken from the CDF's lower-tail route
                auto f = [&](double u) { const double g = std::exp(u); return g * fso_pdf(p, g); };
                const double total = quad::kronrod(f, -40.0, 14.0, 1e-11).value + fso_cdf(p, std::exp(-40.0));
                CHECK(std::abs(total - 1.0) < 1e-8);
            }
        }
    }
}

TEST_CASE("fso mean SNR under HD equals mu") {
    const FsoParams p = make_fso(kWeakTurbulence, 1.0, Detection::HD, 10.0);
    auto f = [&](double u) { const double g = std::exp(u); return g * g * fso_pdf(p, g); };
    CHECK(rel_err(quad::kronrod(f, -40.0, 10.0, 1e-11).value, 10.0) < 1e-8);
}

TEST_CASE("fso cdf limits and quadrature oracle") {
    const FsoParams p = make_fso(kModerateTurbulence, 1.0, Detection::HD, db(10.0));
    CHECK(fso_cdf(p, 0.0) == 0.0);
    const double want = quad::finite([&](double t) { return fso_pdf(p, t); }, 0.0, 10.0, 1e-12).value;
    CHECK(std::abs(fso_cdf(p, 10.0) - want) < 1e-8);
    CHECK(fso_cdf(p, 1e9) > 1.0 - 1e-9);
}

TEST_CASE("fso cdf derivative matches pdf") {
    for (Detection d : {Detection::HD, Detection::IMDD}) {
        const FsoParams p = make_fso(kStrongTurbulence, 1.3, d, 50.0);
        for (int i = 0; i < 10; ++i) {
            const double g = 50.0 * std::pow(10.0, -3.0 + 0.5 * i);
            const double step = 1e-4 * g;
            const double fd = (fso_cdf(p, g + step) - fso_cdf(p, g - step)) / (2.0 * step);
            CHECK(rel_err(fd, fso_pdf(p, g)) < 1e-5);
        }
    }
}

TEST_CASE("fso cdf lower and upper routes join continuously") {
    const FsoParams p = make_fso(kStrongTurbulence, 1.0, Detection::IMDD, 100.0);
    for (double g = 0.5; g < 200.0; g *= 1.3) {
        CHECK(std::abs(fso_cdf(p, g) + fso_ccdf(p, g) - 1.0) < 1e-10);
    }
}

TEST_CASE("fso mgf") {
    const FsoParams p = make_fso(kWeakTurbulence, 1.0, Detection::HD, 10.0);
    CHECK(std::abs(fso_mgf(p, -1e-9) - 1.0) < 1e-6);
    auto f = [&](double u) { const double g = std::exp(u); return g * std::exp(-g) * fso_pdf(p, g); };
    CHECK(std::abs(fso_mgf(p, -1.0) - quad::kronrod(f, -40.0, 6.0, 1e-12).value) < 1e-7);
    // HD is a scale family in mu
    FsoParams scaled = p;
    scaled.mu_r = 40.0;
    CHECK(rel_err(fso_mgf(p, -0.3), fso_mgf(scaled, -0.3 / 4.0)) < 1e-9);
    CHECK(fso_mgf(p, -2.0) < fso_mgf(p, -1.0));
}

TEST_CASE("fso outage is non-increasing in mu") {
    double prev = 1.0;
    for (double snr = 0.0; snr <= 40.0; snr += 2.5) {
        const double op = fso_outage(make_fso(kStrongTurbulence, 1.0, Detection::IMDD, db(snr)), 2.0);
        CHECK(op <= prev);
        prev = op;
    }
}

TEST_CASE("fso BER closed form matches quadrature of the CDF") {
    for (Turbulence t : {kWeakTurbulence, kStrongTurbulence}) {
        for (Detection d : {Detection::HD, Detection::IMDD}) {
            const FsoParams p = make_fso(t, 1.0, d, db(20.0));
            for (auto mod : {make_modspec(Scheme::OOK), make_modspec(Scheme::MPSK, 2), make_modspec(Scheme::MPSK, 8),
                             make_modspec(Scheme::MQAM, 16)}) {
                const double closed = fso_avg_ber_unchecked(p, mod);
                const double oracle = avg_ber_from_cdf(mod, [&](double g) { return fso_cdf(p, g); });
                CHECK(rel_err(closed, oracle) < 1e-7);
            }
        }
    }
}

TEST_CASE("fso BER reference values for strong turbulence at 20 dB") {
    const FsoParams imdd = make_fso(kStrongTurbulence, 1.0, Detection::IMDD, 100.0);
    const FsoParams hd = make_fso(kStrongTurbulence, 1.0, Detection::HD, 100.0);
    CHECK(rel_err(fso_avg_ber(imdd, make_modspec(Scheme::OOK)), 7.48e-2) < 0.02);
    CHECK(rel_err(fso_avg_ber(hd, make_modspec(Scheme::MPSK, 2)), 7.05e-3) < 0.02);
    CHECK(rel_err(fso_avg_ber(hd, make_modspec(Scheme::MPSK, 4)), 1.29e-2) < 0.02);
    CHECK(rel_err(fso_avg_ber(hd, make_modspec(Scheme::MQAM, 16)), 4.09e-2) < 0.02);
    CHECK_THROWS_AS(fso_avg_ber(hd, make_modspec(Scheme::OOK)), ValidationError);
    CHECK_THROWS_AS(fso_avg_ber(imdd, make_modspec(Scheme::MPSK, 2)), ValidationError);
}

TEST_CASE("fso parameter validation") {
    CHECK_THROWS_AS(make_fso({-1.0, 2.0}, 1.0, Detection::HD, 1.0), ValidationError);
    CHECK_THROWS_AS(make_fso(kWeakTurbulence, 0.0, Detection::HD, 1.0), ValidationError);
    CHECK_THROWS_AS(fso_pdf(make_fso(kWeakTurbulence, 1.0, Detection::HD, 1.0), 0.0), DomainError);
}

TEST_CASE("fso sampler moments") {
    RandomStream rng(7, 0);
    for (Detection d : {Detection::HD, Detection::IMDD}) {
        const FsoParams p = make_fso(kModerateTurbulence, 1.2, d, 3.0);
        FsoSampler draw(p);
        const int n = 400000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = draw(rng);
            sum += g;
            sum2 += g * g;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        const double x2 = p.xi * p.xi;
        const double want = d == Detection::HD
                                ? p.mu_r
                                : p.mu_r * (x2 + 1) * (x2 + 1) * (p.alpha + 1) * (p.beta + 1) /
                                      (x2 * (x2 + 2) * p.alpha * p.beta);
        CHECK(std::abs(mean - want) < 4.0 * se);
    }
}
