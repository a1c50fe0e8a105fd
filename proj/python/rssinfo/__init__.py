"""Shannon, Renyi and Kullback-Leibler measures of ranked set samples."""

from ._core import (
    DivergentIntegral,
    NonFiniteIntegrand,
    ParseError,
    a_n,
    d_n,
    design_spec,
    distribution_spec,
    errata,
    eta,
    k,
    k_recursive,
    kl,
    kl_two_sample,
    kld,
    mc_entropy,
    mc_renyi,
    pdf,
    psi_bound,
    quantile,
    renyi,
    shannon,
    table_dn,
    table_k,
)

__all__ = [
    "DivergentIntegral",
    "NonFiniteIntegrand",
    "ParseError",
    "a_n",
    "d_n",
    "design_spec",
    "distribution_spec",
    "errata",
    "eta",
    "k",
    "k_recursive",
    "kl",
    "kl_two_sample",
    "kld",
    "mc_entropy",
    "mc_renyi",
    "pdf",
    "psi_bound",
    "quantile",
    "renyi",
    "shannon",
    "table_dn",
    "table_k",
]
