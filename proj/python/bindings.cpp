#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fsorf/combining.hpp"
#include "fsorf/error.hpp"
#include "fsorf/montecarlo.hpp"
#include "fsorf/special_functions.hpp"
#include "fsorf/sweep.hpp"
#include "fsorf/validate.hpp"

namespace py = pybind11;
using namespace fsorf;

namespace {

std::vector<GammaTerm> terms(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<GammaTerm> out;
    for (const auto& [a, A] : pairs) out.push_back({a, A});
    return out;
}

GammaMixture mixture_of(const RfParams& p) { return rf_mixture(p); }

py::dict estimate_dict(const McEstimate& e) {
    py::dict d;
    d["point"] = e.point;
    d["std_error"] = e.std_error;
    d["ci_low"] = e.ci_low;
    d["ci_high"] = e.ci_high;
    d["samples_used"] = e.samples_used;
    return d;
}

McConfig mc_config(std::uint64_t samples, std::uint64_t seed, unsigned workers, double ci_level) {
    McConfig cfg;
    cfg.samples = samples;
    cfg.master_seed = seed;
    cfg.workers = workers;
    cfg.ci_level = ci_level;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "outage and BER of FSO, RF and hybrid FSO/RF links";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::enum_<Detection>(m, "Detection").value("HD", Detection::HD).value("IMDD", Detection::IMDD);
    py::enum_<Scheme>(m, "Scheme").value("OOK", Scheme::OOK).value("MPSK", Scheme::MPSK).value("MQAM", Scheme::MQAM);
    py::enum_<Combiner>(m, "Combiner").value("SC", Combiner::SC).value("MRC", Combiner::MRC);

    py::class_<FsoParams>(m, "FsoParams")
        .def(py::init([](double alpha, double beta, double xi, Detection det, double mu_r) {
                 FsoParams p{alpha, beta, xi, det, mu_r};
                 p.validate();
                 return p;
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("xi") = 1.0, py::arg("detection") = Detection::HD,
             py::arg("mu_r") = 10.0)
        .def_readwrite("alpha", &FsoParams::alpha)
        .def_readwrite("beta", &FsoParams::beta)
        .def_readwrite("xi", &FsoParams::xi)
        .def_readwrite("detection", &FsoParams::detection)
        .def_readwrite("mu_r", &FsoParams::mu_r)
        .def("__repr__", [](const FsoParams& p) {
            std::ostringstream s;
            s << "FsoParams(alpha=" << p.alpha << ", beta=" << p.beta << ", xi=" << p.xi
              << ", detection=" << to_string(p.detection) << ", mu_r=" << p.mu_r << ")";
            return s.str();
        });

    m.def("make_fso", [](const std::string& turbulence, double xi, Detection det, double mu_r) {
        const Turbulence t = turbulence == "weak"     ? kWeakTurbulence
                             : turbulence == "strong" ? kStrongTurbulence
                             : turbulence == "moderate"
                                 ? kModerateTurbulence
                                 : throw ValidationError("turbulence must be weak, moderate or strong");
        return make_fso(t, xi, det, mu_r);
    }, py::arg("turbulence"), py::arg("xi") = 1.0, py::arg("detection") = Detection::HD, py::arg("mu_r") = 10.0);

    py::class_<RfParams>(m, "RfParams")
        .def(py::init([](double kappa, double mu, double mm, double gamma_bar) {
                 RfParams p{kappa, mu, mm, gamma_bar};
                 p.validate();
                 return p;
             }),
             py::arg("kappa"), py::arg("mu"), py::arg("m"), py::arg("gamma_bar"))
        .def_readwrite("kappa", &RfParams::kappa)
        .def_readwrite("mu", &RfParams::mu)
        .def_readwrite("m", &RfParams::m)
        .def_readwrite("gamma_bar", &RfParams::gamma_bar)
        .def("mixture", [](const RfParams& p) {
            std::vector<std::tuple<double, int, double>> out;
            for (const auto& c : rf_mixture(p).components) out.emplace_back(c.weight, c.shape, c.scale);
            return out;
        }, "mixture components as (weight, shape, scale)");

    py::class_<ModulationSpec>(m, "ModulationSpec")
        .def(py::init([](Scheme s, unsigned order) { return make_modspec(s, order); }), py::arg("scheme"),
             py::arg("order") = 2)
        .def_readonly("delta", &ModulationSpec::delta)
        .def_readonly("p", &ModulationSpec::p)
        .def_readonly("q", &ModulationSpec::q)
        .def_readonly("n", &ModulationSpec::n)
        .def_property_readonly("name", &ModulationSpec::name);

    py::class_<HybridLink>(m, "HybridLink")
        .def(py::init<const FsoParams&, const RfParams&, Combiner>(), py::arg("fso"), py::arg("rf"),
             py::arg("combiner"))
        .def_property_readonly("fso", &HybridLink::fso)
        .def_property_readonly("rf", &HybridLink::rf)
        .def_property_readonly("combiner", &HybridLink::combiner);

    // special functions
    m.def("meijer_g", [](std::size_t mm, std::size_t n, std::vector<double> a, std::vector<double> b, double z) {
        return meijer_g(MeijerGParams{mm, n, std::move(a), std::move(b)}, z);
    }, py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("z"));
    m.def("fox_h", [](std::size_t mm, std::size_t n, const std::vector<std::pair<double, double>>& a,
                      const std::vector<std::pair<double, double>>& b, double z) {
        return fox_h(FoxHParams{mm, n, terms(a), terms(b)}, z);
    }, py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("z"),
          "a and b are lists of (value, coefficient) pairs");

    // FSO branch
    m.def("fso_pdf", &fso_pdf, py::arg("params"), py::arg("gamma"));
    m.def("fso_cdf", &fso_cdf, py::arg("params"), py::arg("gamma"));
    m.def("fso_outage", &fso_outage, py::arg("params"), py::arg("gamma_th"));
    m.def("fso_mgf", &fso_mgf, py::arg("params"), py::arg("s"));
    m.def("fso_avg_ber", &fso_avg_ber, py::arg("params"), py::arg("mod"));

    // RF branch
    m.def("rf_pdf", [](const RfParams& p, double g) { return rf_pdf(mixture_of(p), g); }, py::arg("params"),
          py::arg("gamma"));
    m.def("rf_pdf_hypergeometric", &rf_pdf_hypergeometric, py::arg("params"), py::arg("gamma"));
    m.def("rf_cdf", [](const RfParams& p, double g) { return rf_cdf(mixture_of(p), g); }, py::arg("params"),
          py::arg("gamma"));
    m.def("rf_outage", [](const RfParams& p, double th) { return rf_outage(mixture_of(p), th); },
          py::arg("params"), py::arg("gamma_th"));
    m.def("rf_mgf", [](const RfParams& p, double s) { return rf_mgf(mixture_of(p), s); }, py::arg("params"),
          py::arg("s"));
    m.def("rf_avg_ber", [](const RfParams& p, const ModulationSpec& mod) { return rf_avg_ber(mixture_of(p), mod); },
          py::arg("params"), py::arg("mod"));

    // combining
    m.def("sc_cdf", &sc_cdf, py::arg("link"), py::arg("gamma"));
    m.def("mrc_cdf", &mrc_cdf, py::arg("link"), py::arg("gamma"));
    m.def("mrc_cdf_oracle", &mrc_cdf_oracle, py::arg("link"), py::arg("gamma"), py::arg("rel_tol") = 1e-10,
          py::call_guard<py::gil_scoped_release>());
    m.def("mrc_mgf", &mrc_mgf, py::arg("link"), py::arg("s"));
    m.def("clear_bivariate_cache", &clear_bivariate_cache);
    m.def("bivariate_cache_size", &bivariate_cache_size);
    m.def("outage", &hybrid_outage, py::arg("link"), py::arg("gamma_th"));
    m.def("avg_ber", &hybrid_avg_ber, py::arg("link"), py::arg("mod"));

    // Monte Carlo
    m.def("mc_outage", [](const LinkModel& model, double th, std::uint64_t n, std::uint64_t seed, unsigned w,
                          double level) {
        McEstimate e;
        {
            py::gil_scoped_release release;
            e = estimate_outage(model, th, mc_config(n, seed, w, level));
        }
        return estimate_dict(e);
    }, py::arg("link"), py::arg("gamma_th"), py::arg("samples") = 1'000'000, py::arg("seed") = 1,
          py::arg("workers") = 1, py::arg("ci_level") = 0.9973);
    m.def("mc_ber", [](const LinkModel& model, const ModulationSpec& mod, std::uint64_t n, std::uint64_t seed,
                       unsigned w, double level) {
        McEstimate e;
        {
            py::gil_scoped_release release;
            e = estimate_ber(model, mod, mc_config(n, seed, w, level));
        }
        return estimate_dict(e);
    }, py::arg("link"), py::arg("mod"), py::arg("samples") = 1'000'000, py::arg("seed") = 1,
          py::arg("workers") = 1, py::arg("ci_level") = 0.9973);

    // sweeps and validation
    m.def("run_sweep_csv", [](const std::string& config_text, std::optional<std::string> task) {
        std::optional<Task> t;
        if (task) {
            if (*task == "op") t = Task::Op;
            else if (*task == "ber") t = Task::Ber;
            else throw ConfigError("task", "expected op or ber");
        }
        std::istringstream in(config_text);
        const SweepConfig cfg = parse_sweep_config(in, t);
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release release;
            rows = run_sweep(cfg);
        }
        std::ostringstream out;
        write_csv(out, rows);
        return out.str();
    }, py::arg("config_text"), py::arg("task") = py::none(), "runs a sweep config and returns the CSV text");
    m.def("validate", [](const std::string& suite) {
        std::vector<CheckResult> checks;
        {
            py::gil_scoped_release release;
            checks = run_validate(suite);
        }
        py::list out;
        for (const auto& c : checks) {
            py::dict d;
            d["name"] = c.name;
            d["expected"] = c.expected;
            d["got"] = c.got;
            d["tolerance"] = c.tolerance;
            d["passed"] = c.passed;
            d["note"] = c.note;
            out.append(d);
        }
        return out;
    }, py::arg("suite") = "all");
}
