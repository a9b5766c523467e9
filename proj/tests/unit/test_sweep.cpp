#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fsorf/error.hpp"
#include "fsorf/sweep.hpp"
#include "fsorf/validate.hpp"

using namespace fsorf;

namespace {

SweepConfig parse(const std::string& text, std::optional<Task> task = std::nullopt) {
    std::istringstream in(text);
    return parse_sweep_config(in, task);
}

std::string field_of(const std::string& text, std::optional<Task> task = std::nullopt) {
    try {
        parse(text, task);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

const std::string kMrcOok = R"(# strong turbulence, OOK over IM/DD
link = mrc
task = ber
fso.turbulence = strong
fso.detection = imdd
fso.snr_db.start = 0
fso.snr_db.stop = 40
fso.snr_db.step = 10
rf.kappa = 5
rf.mu = 1
rf.m = 2
rf.snr_db = 15
modulation.scheme = ook
)";

}  // namespace

TEST_CASE("config parsing") {
    const SweepConfig c = parse(kMrcOok);
    CHECK(c.link == LinkKind::Mrc);
    CHECK(c.task == Task::Ber);
    CHECK(c.alpha == kStrongTurbulence.alpha);
    CHECK(c.detection == Detection::IMDD);
    CHECK(c.sweep_db() == std::vector<double>{0, 10, 20, 30, 40});
    CHECK(c.rf_snr.fixed_db == 15.0);
    CHECK_FALSE(c.mc_enabled);
    CHECK(parse(kMrcOok, Task::Ber).task == Task::Ber);
}

TEST_CASE("config errors name the field") {
    CHECK(field_of("task = op\n") == "link");
    CHECK(field_of(kMrcOok + "fso.colour = red\n") == "fso.colour");
    CHECK(field_of(kMrcOok + "link = sc\n") == "link");
    CHECK(field_of(kMrcOok, Task::Op) == "task");
    CHECK(field_of("link = fso\nthreshold_db = 3\nfso.alpha = 2\nfso.beta = x\nfso.snr_db = 1\n") == "fso.beta");
    CHECK(field_of("link = fso\nfso.turbulence = weak\nfso.snr_db.start = 0\nfso.snr_db.stop = 9\n") == "threshold_db");
    CHECK(field_of("link = fso\nthreshold_db = 0\nfso.turbulence = weak\nfso.snr_db = 3\n") == "fso.snr_db");
    CHECK(field_of("link = rf\nthreshold_db = 0\nrf.kappa = 1\nrf.mu = 1.5\nrf.m = 1\nrf.snr_db.start = 0\n"
                   "rf.snr_db.stop = 3\n") == "rf");
    CHECK(field_of("link = fso\nthreshold_db = 0\nfso.turbulence = weak\nfso.snr_db.start = 5\n"
                   "fso.snr_db.stop = 0\n") == "fso.snr_db.stop");
    std::string hd = kMrcOok;
    hd.replace(hd.find("imdd"), 4, "hd");
    CHECK(field_of(hd) == "modulation.scheme");
    CHECK(field_of("link = fso\nthis line is wrong\n") == "line 2");
    CHECK(field_of(kMrcOok + "mc.enabled = maybe\n") == "mc.enabled");
}

TEST_CASE("sweep rows and csv") {
    SweepConfig c = parse(kMrcOok);
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(r.status == "ok");
        CHECK(r.analytical.has_value());
        CHECK_FALSE(r.mc.has_value());
    }
    CHECK(*rows[2].analytical == doctest::Approx(mrc_avg_ber(HybridLink(make_fso(kStrongTurbulence, 1.0,
                                                                                 Detection::IMDD, 100.0),
                                                                        {5, 1, 2, std::pow(10.0, 1.5)},
                                                                        Combiner::MRC),
                                                             make_modspec(Scheme::OOK)))
                                        .epsilon(1e-12));
    std::ostringstream csv;
    write_csv(csv, rows);
    const std::string text = csv.str();
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(text.find("2.0000000000000000e+01,") != std::string::npos);
    CHECK(text.find(",,,,ok\n") != std::string::npos);
}

TEST_CASE("sweep with monte carlo is deterministic") {
    const std::string text = "link = sc\nthreshold_db = 3\nfso.turbulence = moderate\nfso.snr_db.start = 0\n"
                             "fso.snr_db.stop = 20\nfso.snr_db.step = 10\nrf.kappa = 5\nrf.mu = 1\nrf.m = 2\n"
                             "rf.snr_db = 10\nmc.enabled = true\nmc.samples = 50000\nmc.seed = 9\n";
    std::ostringstream a, b;
    write_csv(a, run_sweep(parse(text)));
    write_csv(b, run_sweep(parse(text)));
    CHECK(a.str() == b.str());
    const auto rows = run_sweep(parse(text));
    for (const auto& r : rows) {
        REQUIRE(r.mc.has_value());
        CHECK(r.mc->covers(*r.analytical));
    }
}

TEST_CASE("threshold far above the sweep gives certain outage") {
    const auto rows = run_sweep(parse("link = rf\nthreshold_db = 60\nrf.kappa = 5\nrf.mu = 1\nrf.m = 2\n"
                                      "rf.snr_db.start = 0\nrf.snr_db.stop = 30\nrf.snr_db.step = 10\n"));
    for (const auto& r : rows) CHECK(*r.analytical == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plot script mentions the csv") {
    const std::string s = plot_script(parse(kMrcOok), "out.csv");
    CHECK(s.find("out.csv") != std::string::npos);
    CHECK(s.find("matplotlib") != std::string::npos);
}

TEST_CASE("validation suites") {
    CHECK_THROWS_AS(run_validate("bogus"), ValidationError);
    for (const char* suite : {"identities", "mixtures"}) {
        const auto checks = run_validate(suite);
        CHECK_FALSE(checks.empty());
        for (const auto& c : checks) CHECK_MESSAGE(c.passed, c.name);
    }
    std::ostringstream out;
    write_report(out, run_validate("mixtures"));
    CHECK(out.str().rfind("name,expected,got,tolerance,status\n", 0) == 0);
}
