"""Outage probability and average BER of FSO, RF and hybrid FSO/RF links."""

from ._core import (
    Combiner,
    ConfigError,
    ConvergenceError,
    Detection,
    DomainError,
    Error,
    FsoParams,
    HybridLink,
    ModulationSpec,
    RfParams,
    Scheme,
    ValidationError,
    avg_ber,
    bivariate_cache_size,
    clear_bivariate_cache,
    fox_h,
    fso_avg_ber,
    fso_cdf,
    fso_mgf,
    fso_outage,
    fso_pdf,
    make_fso,
    mc_ber,
    mc_outage,
    meijer_g,
    mrc_cdf,
    mrc_cdf_oracle,
    mrc_mgf,
    outage,
    rf_avg_ber,
    rf_cdf,
    rf_mgf,
    rf_outage,
    rf_pdf,
    rf_pdf_hypergeometric,
    run_sweep_csv,
    sc_cdf,
    validate,
)


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


__all__ = [name for name in dir() if not name.startswith("_")]
