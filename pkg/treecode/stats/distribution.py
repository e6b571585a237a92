"""
Exact distribution of the realization number of a uniformly random permutation of S_n.

The distribution is the Dirichlet convolution ``U_n * U_{n-1} * ... * U_1`` of uniform laws, as
the left inversion vector of a uniform permutation has independent uniform entries. Arithmetic is
carried out on integer multiplicities and turned into ``Fraction`` at the end.
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping

import numpy as np
import pandas as pd

from treecode.constants import MAX_DISTRIBUTION_N
from treecode.permkit import all_permutations
from treecode.realization import trn
from treecode.utils import SizeGuardError

logger = logging.getLogger(__name__)

Pmf = Dict[int, Fraction]


@dataclass(frozen=True)
class TrnDistribution:
    n: int
    pmf: Mapping[int, Fraction]

    def multiplicities(self) -> Dict[int, int]:
        """``m_n(x) = n! * pmf(x)``, the number of permutations with realization number x."""
        total = math.factorial(self.n)
        return {x: int(p * total) for x, p in self.pmf.items()}

    def multiset(self) -> List[int]:
        return [x for x, m in self.multiplicities().items() for _ in range(m)]

    def moment(self, k: int) -> Fraction:
        return sum((p * x**k for x, p in self.pmf.items()), Fraction(0))

    def mean(self) -> Fraction:
        return self.moment(1)

    def total_mass(self) -> Fraction:
        return sum(self.pmf.values(), Fraction(0))

    def to_frame(self) -> pd.DataFrame:
        multiplicities = self.multiplicities()
        return pd.DataFrame(
            {
                "x": list(self.pmf),
                "multiplicity": [multiplicities[x] for x in self.pmf],
                "probability_num": [p.numerator for p in self.pmf.values()],
                "probability_den": [p.denominator for p in self.pmf.values()],
            }
        )


def uniform_pmf(k: int) -> Pmf:
    if k < 1:
        raise ValueError(f"Uniform law needs k >= 1, got {k}")
    return {a: Fraction(1, k) for a in range(1, k + 1)}


def dirichlet_convolve(f: Mapping[int, Fraction], g: Mapping[int, Fraction]) -> Pmf:
    """``(f * g)(c) = sum over a*b = c of f(a) g(b)``."""
    out: Dict[int, Fraction] = defaultdict(Fraction)
    for a, fa in f.items():
        for b, gb in g.items():
            out[a * b] += fa * gb
    return dict(sorted(out.items()))


def trn_distribution(n: int, max_n: int = MAX_DISTRIBUTION_N) -> TrnDistribution:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > max_n:
        raise SizeGuardError(
            f"Exact distribution is limited to n <= {max_n}, the support grows too fast", max_n
        )
    counts: Dict[int, int] = {1: 1}
    for k in range(2, n + 1):
        grown: Dict[int, int] = defaultdict(int)
        for x, c in counts.items():
            for a in range(1, k + 1):
                grown[x * a] += c
        counts = grown
        logger.debug("Support size after U_%d: %d", k, len(counts))
    total = math.factorial(n)
    logger.info("Distribution for n=%d has %d support points", n, len(counts))
    return TrnDistribution(n, {x: Fraction(c, total) for x, c in sorted(counts.items())})


def exhaustive_distribution(n: int) -> TrnDistribution:
    """Pushforward of the uniform measure on S_n by brute force."""
    counts: Dict[int, int] = defaultdict(int)
    for sigma in all_permutations(n):
        counts[trn(sigma)] += 1
    total = math.factorial(n)
    return TrnDistribution(n, {x: Fraction(c, total) for x, c in sorted(counts.items())})


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")


def mean(n: int) -> Fraction:
    _check_n(n)
    return Fraction(math.factorial(n + 1), 2**n)


def second_moment(n: int) -> Fraction:
    _check_n(n)
    return Fraction(
        math.factorial(n + 1) * math.factorial(2 * n + 1), 12**n * math.factorial(n)
    )


def variance(n: int) -> Fraction:
    return second_moment(n) - mean(n) ** 2


def kth_moment(n: int, k: int) -> Fraction:
    """
    ``n! E[R^k] = (1^k + ... + n^k) (n-1)! E[R_{n-1}^k]``, unrolled into a product of power sums.
    """
    _check_n(n)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    total = 1
    power_sum = 0
    for a in range(1, n + 1):
        power_sum += a**k
        total *= power_sum
    return Fraction(total, math.factorial(n))


def expected_log_trn(n: int) -> float:
    """``sum_{i<=n} log(i!) / i``, the mean of log R over S_n."""
    _check_n(n)
    log_factorial = 0.0
    result = 0.0
    for i in range(1, n + 1):
        log_factorial += math.log(i)
        result += log_factorial / i
    return result


def log_mean_trn(n: int) -> float:
    """``log E[R] = log((n+1)! / 2^n)``, an upper bound for the expected log by concavity."""
    _check_n(n)
    return math.lgamma(n + 2) - n * math.log(2)


def log_max_trn(n: int) -> float:
    _check_n(n)
    return math.lgamma(n + 1)


def null_curves(max_n: int) -> pd.DataFrame:
    """Expected log, log of the mean and log of the maximum realization number for n = 1..max_n."""
    if max_n < 1:
        raise ValueError(f"max_n must be positive, got {max_n}")
    ns = np.arange(1, max_n + 1)
    log_factorial = np.cumsum(np.log(ns))
    return pd.DataFrame(
        {
            "n": ns,
            "expected_log_trn": np.cumsum(log_factorial / ns),
            "log_mean_trn": log_factorial + np.log(ns + 1) - ns * np.log(2),
            "log_max_trn": log_factorial,
        }
    )
