from typing import Mapping, Optional, TextIO

import pandas as pd

from treecode.permkit import Permutation
from treecode.stats.distribution import TrnDistribution


def distribution_frame(distribution: TrnDistribution) -> pd.DataFrame:
    return distribution.to_frame()


def histogram_frame(histogram: Mapping[Permutation, int]) -> pd.DataFrame:
    trials = sum(histogram.values())
    return pd.DataFrame(
        {
            "perm": [str(sigma) for sigma in histogram],
            "count": list(histogram.values()),
            "frequency": [count / trials for count in histogram.values()],
        }
    )


def curves_frame(curves: pd.DataFrame, empirical: Optional[Mapping[int, float]] = None) -> pd.DataFrame:
    """Adds the ``empirical_log_trn`` column (blank where not sampled) when given."""
    if empirical is None:
        return curves
    result = curves.copy()
    result["empirical_log_trn"] = result["n"].map(empirical)
    return result


def write_frame(frame: pd.DataFrame, stream: TextIO):
    frame.to_csv(stream, index=False, float_format="%.12g")
