"""L0-penalized nodewise regression for sparse precision matrix estimation."""

from loreg._loreg import (
    __version__,
    auto_t_max,
    bh_fdr,
    cholesky,
    desparsify,
    estimate,
    gen_band,
    gen_cluster,
    gen_hub,
    gen_random,
    hbic,
    kkt_residual,
    lasso_cd,
    lda_classify,
    lda_scores,
    min_symmetrize,
    norm_losses,
    normal_cdf,
    normal_quantile,
    sample_covariance,
    sample_gaussian,
    sample_subgaussian,
    sdar_fit,
    spd_inverse,
    spd_inverse_sqrt,
    spectral_norm,
    support_metrics,
    symmetric_eigen_extremes,
    var_desp_gaussian,
    var_undesp_gaussian,
)

__all__ = [
    "__version__",
    "auto_t_max",
    "bh_fdr",
    "cholesky",
    "desparsify",
    "estimate",
    "gen_band",
    "gen_cluster",
    "gen_hub",
    "gen_random",
    "hbic",
    "kkt_residual",
    "lasso_cd",
    "lda_classify",
    "lda_scores",
    "min_symmetrize",
    "norm_losses",
    "normal_cdf",
    "normal_quantile",
    "sample_covariance",
    "sample_gaussian",
    "sample_subgaussian",
    "sdar_fit",
    "spd_inverse",
    "spd_inverse_sqrt",
    "spectral_norm",
    "support_metrics",
    "symmetric_eigen_extremes",
    "var_desp_gaussian",
    "var_undesp_gaussian",
]
