#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "fsorf/error.hpp"
#include "fsorf/quadrature.hpp"
#include "fsorf/special_functions.hpp"

using namespace fsorf;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("log-gamma matches lgamma on the positive axis") {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 25.0, 170.0}) {
        CHECK(std::abs(log_gamma_complex({x, 0.0}).real() - std::lgamma(x)) < 1e-13 * std::max(1.0, std::lgamma(x)));
    }
}

TEST_CASE("log-gamma satisfies the recurrence and reflection off the axis") {
    for (cplx z : {cplx{0.3, 1.7}, cplx{-2.6, 0.4}, cplx{5.0, -40.0}, cplx{0.5, 300.0}}) {
        const cplx lhs = log_gamma_complex(z + 1.0);
        const cplx rhs = log_gamma_complex(z) + std::log(z);
        // equal modulo 2πi
        CHECK(std::abs(lhs.real() - rhs.real()) < 1e-12 * std::max(1.0, std::abs(lhs.real())));
        CHECK(std::abs(std::exp(cplx(0.0, lhs.imag() - rhs.imag())) - 1.0) < 1e-10);
    }
    // Γ(z)Γ(1-z) = π / sin(πz)
    const cplx z{0.25, 0.8};
    const cplx prod = std::exp(log_gamma_complex(z) + log_gamma_complex(1.0 - z));
    CHECK(std::abs(prod - std::numbers::pi / std::sin(std::numbers::pi * z)) < 1e-12 * std::abs(prod));
}

TEST_CASE("log-gamma rejects poles") {
    CHECK(is_gamma_pole({-3.0, 0.0}));
    CHECK_FALSE(is_gamma_pole({-3.0, 1e-3}));
    CHECK_THROWS_AS(log_gamma_complex({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(log_gamma_complex({-2.0, 0.0}), DomainError);
}

TEST_CASE("incomplete gamma agrees with the finite sum for integer order") {
    for (int p = 1; p <= 5; ++p) {
        for (double x : {0.01, 1.0, 4.0, 30.0}) {
            double sum = 0.0, term = 1.0;
            for (int k = 0; k < p; ++k) {
                sum += term;
                term *= x / (k + 1);
            }
            CHECK(rel_err(upper_incomplete_gamma_reg(p, x), std::exp(-x) * sum) < 1e-13);
        }
    }
    CHECK(upper_incomplete_gamma_reg(0.5, 0.0) == 1.0);
}

TEST_CASE("G^{1,0}_{0,1} is the exponential") {
    MeijerGParams g{1, 0, {}, {0.0}};
    for (double z : {1e-3, 0.2, 1.0, 5.0, 20.0}) CHECK(rel_err(meijer_g(g, z), std::exp(-z)) < 1e-9);
}

TEST_CASE("G^{1,1}_{1,1} is a binomial power") {
    // G^{1,1}_{1,1}(z | 1-a; 0) = Γ(a) (1+z)^{-a}
    for (double a : {0.5, 1.0, 3.0}) {
        MeijerGParams g{1, 1, {1.0 - a}, {0.0}};
        for (double z : {0.05, 1.0, 9.0, 200.0}) {
            CHECK(rel_err(meijer_g(g, z), std::tgamma(a) * std::pow(1.0 + z, -a)) < 1e-9);
        }
    }
}

TEST_CASE("G^{2,0}_{0,2} is a Bessel K") {
    // G^{2,0}_{0,2}(z | a, b) = 2 z^{(a+b)/2} K_{a-b}(2 sqrt z)
    MeijerGParams g{2, 0, {}, {1.3, 0.4}};
    for (double z : {0.01, 0.7, 6.0}) {
        const double want = 2.0 * std::pow(z, 0.85) * std::cyl_bessel_k(0.9, 2.0 * std::sqrt(z));
        CHECK(rel_err(meijer_g(g, z), want) < 1e-9);
    }
}

TEST_CASE("G^{1,0}_{1,2} gives the lower incomplete gamma route") {
    // G^{1,1}_{1,2}(z | 1; a, 0) = γ(a, z)
    MeijerGParams g{1, 1, {1.0}, {2.5, 0.0}};
    for (double z : {0.1, 2.0, 10.0}) {
        const double want = boost::math::tgamma_lower(2.5, z);
        CHECK(rel_err(meijer_g(g, z), want) < 1e-9);
    }
}

TEST_CASE("Fox H with scaled coefficients reduces to Meijer G") {
    // H^{1,0}_{0,1}(z | (b, B)) = z^{b/B} exp(-z^{1/B}) / B
    FoxHParams h{1, 0, {}, {{0.7, 0.5}}};
    for (double z : {0.3, 1.0, 2.0}) {
        const double want = std::pow(z, 0.7 / 0.5) * std::exp(-std::pow(z, 2.0)) / 0.5;
        CHECK(rel_err(fox_h(h, z), want) < 1e-9);
    }
}

TEST_CASE("contour abscissa anywhere in the strip gives the same value") {
    MeijerGParams g{2, 1, {0.3}, {0.5, 1.2, 0.0}};
    const FoxHParams h = g.as_fox_h();
    const Strip strip = admissible_strip(h);
    CHECK(strip.left == doctest::Approx(-0.5));
    CHECK(strip.right == doctest::Approx(0.7));
    ContourPlan a, b;
    a.abscissa = -0.4;
    b.abscissa = 0.6;
    const double va = fox_h(h, 1.7, a), vb = fox_h(h, 1.7, b);
    CHECK(rel_err(va, vb) < 1e-9);
}

TEST_CASE("full-line evaluation has negligible imaginary part") {
    ContourPlan plan;
    plan.full_line = true;
    MeijerGParams g{3, 1, {1.0, 3.0}, {2.0, 2.5, 3.1, 0.0}};
    const ContourResult r = fox_h_contour(g.as_fox_h(), 4.0, plan);
    CHECK(r.imag_residual < 1e-10 * std::max(1.0, std::abs(r.value)));
}

TEST_CASE("empty strip is rejected") {
    // pole of Γ(b+s) at -0.5 lies right of pole of Γ(1-a-s) at -1
    MeijerGParams g{1, 1, {2.0}, {0.5}};
    CHECK_THROWS_AS(meijer_g(g, 1.0), ValidationError);
}

TEST_CASE("bivariate H factorises when the joint group is empty") {
    BivariateFoxHParams p;
    p.first = MeijerGParams{1, 0, {}, {0.0}}.as_fox_h();
    p.second = MeijerGParams{1, 1, {0.0}, {0.0}}.as_fox_h();
    // second: G^{1,1}_{1,1}(y | 0; 0) = Γ(1)(1+y)^{-1}
    const double x = 0.8, y = 2.0;
    CHECK(rel_err(fox_h_bivariate(p, x, y), std::exp(-x) / (1.0 + y)) < 1e-7);
}

TEST_CASE("bivariate H with a joint numerator sums to a binomial power") {
    // Γ(s)Γ(t)Γ(c-s-t): residues at s=-j, t=-k give Γ(c)(1+x+y)^{-c}
    const double c = 2.0;
    BivariateFoxHParams p;
    p.n0 = 1;
    p.joint_upper = {{1.0 - c, 1.0, 1.0}};
    p.first = MeijerGParams{1, 0, {}, {0.0}}.as_fox_h();
    p.second = MeijerGParams{1, 0, {}, {0.0}}.as_fox_h();
    BivariateContourPlan plan;
    plan.abscissa_first = 0.5;
    plan.abscissa_second = 0.5;
    for (auto [x, y] : {std::pair{0.4, 0.9}, std::pair{3.0, 0.05}}) {
        const double want = std::tgamma(c) * std::pow(1.0 + x + y, -c);
        CHECK(rel_err(fox_h_bivariate(p, x, y, plan), want) < 1e-7);
    }
}

TEST_CASE("bivariate H rejects an infeasible joint numerator") {
    BivariateFoxHParams p;
    p.n0 = 1;
    p.joint_upper = {{1.0, 1.0, 1.0}};
    p.first = MeijerGParams{1, 0, {}, {0.0}}.as_fox_h();
    p.second = MeijerGParams{1, 0, {}, {0.0}}.as_fox_h();
    CHECK_THROWS(fox_h_bivariate(p, 1.0, 1.0));
}
