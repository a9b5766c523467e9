import math

import pytest

import fsorf


def test_meijer_g_exponential():
    assert fsorf.meijer_g(1, 0, [], [0.0], 1.0) == pytest.approx(math.exp(-1.0), rel=1e-10)


def test_fox_h_matches_meijer_g():
    g = fsorf.meijer_g(1, 1, [0.5], [0.0], 0.7)
    h = fsorf.fox_h(1, 1, [(0.5, 1.0)], [(0.0, 1.0)], 0.7)
    assert h == pytest.approx(g, rel=1e-9)


def test_fso_ber_reference():
    fso = fsorf.make_fso("strong", xi=1.0, detection=fsorf.Detection.HD,
                         mu_r=fsorf.db_to_linear(20.0))
    bpsk = fsorf.ModulationSpec(fsorf.Scheme.MPSK, 2)
    assert fsorf.fso_avg_ber(fso, bpsk) == pytest.approx(7.05e-3, rel=0.01)


def test_rf_mixture_weights_sum_to_one():
    rf = fsorf.RfParams(kappa=5.0, mu=1.0, m=2.0, gamma_bar=10.0)
    assert sum(w for w, _, _ in rf.mixture()) == pytest.approx(1.0, abs=1e-12)


def test_hybrid_ordering():
    fso = fsorf.make_fso("moderate", mu_r=fsorf.db_to_linear(15.0))
    rf = fsorf.RfParams(kappa=5.0, mu=1.0, m=2.0, gamma_bar=fsorf.db_to_linear(10.0))
    th = 2.0
    sc = fsorf.outage(fsorf.HybridLink(fso, rf, fsorf.Combiner.SC), th)
    mrc = fsorf.outage(fsorf.HybridLink(fso, rf, fsorf.Combiner.MRC), th)
    assert mrc <= sc <= min(fsorf.fso_outage(fso, th), fsorf.rf_outage(rf, th))


def test_mrc_cdf_against_oracle():
    fso = fsorf.make_fso("weak", detection=fsorf.Detection.IMDD, mu_r=10.0)
    rf = fsorf.RfParams(kappa=10.0, mu=2.0, m=1.0, gamma_bar=5.0)
    link = fsorf.HybridLink(fso, rf, fsorf.Combiner.MRC)
    assert fsorf.mrc_cdf(link, 3.0) == pytest.approx(fsorf.mrc_cdf_oracle(link, 3.0), rel=1e-6)


def test_monte_carlo_covers_analytical():
    rf = fsorf.RfParams(kappa=5.0, mu=1.0, m=2.0, gamma_bar=10.0)
    est = fsorf.mc_outage(rf, 3.0, samples=200_000, seed=7, workers=2)
    assert est["ci_low"] <= fsorf.rf_outage(rf, 3.0) <= est["ci_high"]
    again = fsorf.mc_outage(rf, 3.0, samples=200_000, seed=7, workers=1)
    assert again["point"] == est["point"]


def test_errors_are_typed():
    with pytest.raises(fsorf.ValidationError):
        fsorf.FsoParams(alpha=-1.0, beta=1.0)
    with pytest.raises(fsorf.ConfigError):
        fsorf.run_sweep_csv("link = nonsense\n", "op")


def test_sweep_csv_header():
    cfg = "\n".join([
        "link = fso",
        "threshold_db = 0",
        "fso.turbulence = weak",
        "fso.detection = HD",
        "fso.snr_db.start = 10",
        "fso.snr_db.stop = 20",
        "fso.snr_db.step = 10",
        "mc.enabled = false",
    ])
    text = fsorf.run_sweep_csv(cfg, "op")
    lines = text.strip().splitlines()
    assert lines[0] == "sweep_snr_db,analytical,mc_point,mc_ci_low,mc_ci_high,status"
    assert len(lines) == 3
    assert all(line.endswith(",ok") for line in lines[1:])


def test_validate_identities():
    checks = fsorf.validate("identities")
    assert checks and all(c["passed"] for c in checks)
