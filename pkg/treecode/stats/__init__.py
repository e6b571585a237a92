from treecode.stats.distribution import (
    TrnDistribution,
    dirichlet_convolve,
    exhaustive_distribution,
    expected_log_trn,
    kth_moment,
    log_max_trn,
    log_mean_trn,
    mean,
    null_curves,
    second_moment,
    trn_distribution,
    uniform_pmf,
    variance,
)
from treecode.stats.sampling import (
    BarcodeSampler,
    SamplerScheme,
    chi_square_statistic,
    empirical_log_trn,
    pushforward_histogram,
    sample_barcode,
    sample_barcodes,
)

__all__ = [
    "BarcodeSampler",
    "SamplerScheme",
    "TrnDistribution",
    "chi_square_statistic",
    "dirichlet_convolve",
    "empirical_log_trn",
    "exhaustive_distribution",
    "expected_log_trn",
    "kth_moment",
    "log_max_trn",
    "log_mean_trn",
    "mean",
    "null_curves",
    "pushforward_histogram",
    "sample_barcode",
    "sample_barcodes",
    "second_moment",
    "trn_distribution",
    "uniform_pmf",
    "variance",
]
