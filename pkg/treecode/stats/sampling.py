"""
Random strict barcodes and the distribution they induce on S_n.

Two generators are provided. ``conditioned`` draws births uniformly and then each death uniformly
between its birth and the upper bound; ``separated`` draws births and deaths from disjoint
intervals and pairs the i-th death drawn with the i-th smallest birth, which makes the induced
permutation uniform.

Trials are split into chunks of ``chunk_size``; chunk ``c`` draws from a PCG64 generator seeded
with the ``c``-th child of ``SeedSequence(seed)``, so results do not depend on how chunks are
spread over worker processes.
"""
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, root_validator, validator

from treecode.barcode import StrictBarcode
from treecode.config import SamplingConfig
from treecode.permkit import Permutation, all_permutations
from treecode.realization import trn

logger = logging.getLogger(__name__)


class SamplerScheme(str, Enum):
    CONDITIONED = "conditioned"
    SEPARATED = "separated"


SCHEME_DEFAULTS = {
    SamplerScheme.CONDITIONED: dict(birth_low=0.0, birth_high=100.0, death_high=100.0),
    SamplerScheme.SEPARATED: dict(
        birth_low=0.0, birth_high=49.0, death_low=50.0, death_high=100.0
    ),
}


class BarcodeSampler(BaseModel):
    scheme: SamplerScheme = SamplerScheme.CONDITIONED
    seed: int = 0
    chunk_size: int = 10000
    birth_low: Optional[float] = None
    birth_high: Optional[float] = None
    death_low: Optional[float] = None
    death_high: Optional[float] = None

    class Config:
        allow_mutation = False

    @root_validator(pre=True)
    def _fill_scheme_defaults(cls, values):
        scheme = SamplerScheme(values.get("scheme") or SamplerScheme.CONDITIONED)
        for key, default in SCHEME_DEFAULTS[scheme].items():
            if values.get(key) is None:
                values[key] = default
        return values

    @validator("chunk_size")
    def _validate_chunk_size(cls, value):
        if value < 1:
            raise ValueError("chunk_size must be a positive integer")
        return value

    @root_validator
    def _validate_intervals(cls, values):
        required = ["scheme", "birth_low", "birth_high", "death_high"]
        if any(values.get(key) is None for key in required):
            return values
        if not values["birth_low"] < values["birth_high"]:
            raise ValueError("birth_low must be below birth_high")
        if values["scheme"] == SamplerScheme.SEPARATED:
            if not values["birth_high"] <= values["death_low"] < values["death_high"]:
                raise ValueError(
                    "separated scheme needs birth_high <= death_low < death_high"
                )
        elif not values["birth_high"] <= values["death_high"]:
            raise ValueError("conditioned scheme needs birth_high <= death_high")
        return values

    @classmethod
    def from_config(
        cls, config: SamplingConfig, scheme: SamplerScheme, **overrides
    ) -> "BarcodeSampler":
        """Scheme intervals come from ``config.schemes[scheme]``, explicit overrides win."""
        scheme = SamplerScheme(scheme)
        values = dict(seed=config.seed, chunk_size=config.chunk_size)
        # a missing entry is filled with the shared default on lookup
        own = dict.get(config.schemes, scheme.value)
        inherited = own is None or own is config.schemes.default_factory()
        explicit = {} if inherited else own.dict(exclude_none=True)
        configured = config.schemes[scheme.value].dict(exclude_none=True)
        # the __default__ entry describes the conditioned scheme, its bounds do not fit here
        if scheme == SamplerScheme.SEPARATED and "death_low" not in configured:
            for key, default in SCHEME_DEFAULTS[scheme].items():
                configured[key] = explicit.get(key, default)
        values.update(configured)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(scheme=scheme, **values)

    def generator(self, chunk: int) -> np.random.Generator:
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(chunk,)))
        )

    def _draw_rows(
        self, rng: np.random.Generator, n: int, size: int
    ) -> Tuple[np.ndarray, np.ndarray]:
        # one row of 2n+1 uniforms per barcode keeps shorter draws a prefix of longer ones
        u = rng.random((size, 2 * n + 1))
        births = np.sort(self.birth_low + u[:, : n + 1] * (self.birth_high - self.birth_low), axis=1)
        if self.scheme == SamplerScheme.SEPARATED:
            deaths = self.death_low + u[:, n + 1 :] * (self.death_high - self.death_low)
        else:
            deaths = births[:, 1:] + u[:, n + 1 :] * (self.death_high - births[:, 1:])
        return births, deaths

    def draw(self, rng: np.random.Generator, n: int, size: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        ``size`` strict barcodes as arrays: births of shape ``(size, n + 1)`` sorted per row, column
        0 being the essential bar, and deaths of shape ``(size, n)`` matching columns ``1..n``.
        """
        births, deaths = self._draw_rows(rng, n, size)
        while True:
            bad = _non_strict_rows(births, deaths)
            if not bad.any():
                return births, deaths
            logger.warning("Resampling %d barcodes with tied endpoints", int(bad.sum()))
            births[bad], deaths[bad] = self._draw_rows(rng, n, int(bad.sum()))

    def chunks(self, trials: int) -> List[Tuple[int, int]]:
        return [
            (c, min(self.chunk_size, trials - c * self.chunk_size))
            for c in range(math.ceil(trials / self.chunk_size))
        ]


def _non_strict_rows(births: np.ndarray, deaths: np.ndarray) -> np.ndarray:
    bad = (np.diff(births, axis=1) <= 0).any(axis=1)
    bad |= (np.diff(np.sort(deaths, axis=1), axis=1) <= 0).any(axis=1)
    bad |= (deaths <= births[:, 1:]).any(axis=1)
    return bad


def permutation_types(deaths: np.ndarray) -> np.ndarray:
    """Row-wise permutation types: rank (1-based) of each death within its row."""
    return deaths.argsort(axis=1).argsort(axis=1) + 1


def _to_barcode(births: np.ndarray, deaths: np.ndarray) -> StrictBarcode:
    return StrictBarcode(float(births[0]), tuple(zip(births[1:].tolist(), deaths.tolist())))


def sample_barcode(sampler: BarcodeSampler, n: int) -> StrictBarcode:
    """First barcode of the sampler's stream; the same on every call for a fixed seed."""
    return next(sample_barcodes(sampler, n, 1))


def _draw_chunk(
    sampler: BarcodeSampler, n: int, chunk: int, size: int
) -> Tuple[np.ndarray, np.ndarray]:
    return sampler.draw(sampler.generator(chunk), n, size)


def _histogram_chunk(sampler: BarcodeSampler, n: int, chunk: int, size: int) -> Counter:
    _, deaths = _draw_chunk(sampler, n, chunk, size)
    return Counter(tuple(row) for row in permutation_types(deaths).tolist())


def _map_chunks(
    func: Callable, sampler: BarcodeSampler, n: int, trials: int, jobs: int
) -> Iterator:
    """Applies ``func`` to every chunk, in chunk order, on ``jobs`` worker processes."""
    chunks = sampler.chunks(trials)
    logger.info(
        "Sampling %d barcodes with the %s scheme in %d chunks on %d jobs",
        trials,
        sampler.scheme.value,
        len(chunks),
        jobs,
    )
    indices = [c for c, _ in chunks]
    sizes = [s for _, s in chunks]
    args = ([sampler] * len(chunks), [n] * len(chunks), indices, sizes)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(func, *args)
    else:
        yield from map(func, *args)


def sample_barcodes(
    sampler: BarcodeSampler, n: int, count: int, jobs: int = 1
) -> Iterator[StrictBarcode]:
    """``count`` barcodes in stream order; the output does not depend on ``jobs``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    for births, deaths in _map_chunks(_draw_chunk, sampler, n, count, jobs):
        for row in range(len(births)):
            yield _to_barcode(births[row], deaths[row])


def pushforward_histogram(
    sampler: BarcodeSampler, n: int, trials: int, jobs: int = 1
) -> Dict[Permutation, int]:
    """Counts of the permutation types of ``trials`` sampled barcodes, sorted by permutation."""
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    total: Counter = Counter()
    for partial in _map_chunks(_histogram_chunk, sampler, n, trials, jobs):
        total.update(partial)
    return {Permutation(images): total[images] for images in sorted(total)}


def chi_square_statistic(histogram: Dict[Permutation, int], n: int) -> float:
    """Pearson statistic of the histogram against the uniform law on S_n, unseen classes included."""
    observed = sum(histogram.values())
    expected = observed / math.factorial(n)
    return sum(
        (histogram.get(sigma, 0) - expected) ** 2 / expected for sigma in all_permutations(n)
    )


def empirical_log_trn(sampler: BarcodeSampler, n: int, trials: int, jobs: int = 1) -> float:
    """Mean log realization number of sampled barcodes."""
    histogram = pushforward_histogram(sampler, n, trials, jobs)
    return sum(count * math.log(trn(sigma)) for sigma, count in histogram.items()) / trials
