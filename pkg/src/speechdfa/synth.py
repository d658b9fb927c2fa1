"""Seeded generators for signals with known scaling exponents.

Random numbers come from numpy's ``PCG64`` bit generator seeded directly with
the 64-bit ``seed``; normals are drawn with ``Generator.standard_normal`` and
phases with ``Generator.uniform``. The same seed therefore yields the same
samples on every platform for a given numpy release.

Expected DFA exponents: white noise 0.5, random walk 1.5, 1/f noise 1.0,
fractional Gaussian noise ``H``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .exceptions import GenerationError, PreconditionError
from .timeseries import TimeSeries

__all__ = ["KINDS", "GeneratorSpec", "generate", "fgn_autocovariance", "rng_for"]

KINDS = ("white", "random_walk", "one_over_f", "fgn")
TARGET_ALPHA = {"white": 0.5, "random_walk": 1.5, "one_over_f": 1.0}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    length: int
    seed: int = 0
    hurst: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if int(self.length) < 1:
            raise PreconditionError("length must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise PreconditionError("seed must be an unsigned 64-bit integer")
        if self.kind == "fgn":
            if self.hurst is None or not 0 < self.hurst < 1:
                raise PreconditionError("fgn needs a hurst parameter in (0, 1)")
        elif self.hurst is not None:
            raise PreconditionError(f"hurst is only meaningful for fgn, not {self.kind}")

    @property
    def target_alpha(self):
        return self.hurst if self.kind == "fgn" else TARGET_ALPHA[self.kind]


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(int(seed)))


def fgn_autocovariance(hurst, lags):
    """Unit-variance fGn autocovariance ``0.5(|k+1|^2H - 2|k|^2H + |k-1|^2H)``."""
    k = np.abs(np.asarray(lags, dtype=np.float64))
    h2 = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** h2 - 2.0 * k ** h2 + np.abs(k - 1) ** h2)


@lru_cache(maxsize=16)
def _circulant_eigenvalues(length, hurst):
    gamma = fgn_autocovariance(hurst, np.arange(length + 1))
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eig = np.fft.fft(row).real
    if eig.min() < -1e-10 * eig.max():
        raise GenerationError(
            f"circulant embedding for H={hurst} at N={length} has a negative eigenvalue "
            f"({eig.min():.3g}); retry with a longer series"
        )
    eig = np.clip(eig, 0.0, None)
    eig.setflags(write=False)
    return eig


def _white(rng, n):
    return rng.standard_normal(n)


def _one_over_f(rng, n):
    freqs = np.fft.rfftfreq(n)
    amplitude = np.zeros_like(freqs)
    amplitude[1:] = freqs[1:] ** -0.5
    phases = rng.uniform(0.0, 2.0 * np.pi, freqs.size)
    spectrum = amplitude * np.exp(1j * phases)
    if n % 2 == 0:
        # Nyquist bin must be real for a real inverse transform
        spectrum[-1] = amplitude[-1] * np.cos(phases[-1])
    x = np.fft.irfft(spectrum, n)
    std = x.std()
    return x / std if std > 0 else x


def _fgn(rng, n, hurst):
    eig = _circulant_eigenvalues(n, float(hurst))
    m = eig.size
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    w = np.fft.fft(np.sqrt(eig / m) * z)
    return w.real[:n]


def generate(spec):
    """Produce the series described by `spec` (sample rate 1 Hz)."""
    rng = rng_for(spec.seed)
    n = int(spec.length)
    if spec.kind == "white":
        x = _white(rng, n)
    elif spec.kind == "random_walk":
        x = np.cumsum(_white(rng, n))
    elif spec.kind == "one_over_f":
        x = _one_over_f(rng, n)
    else:
        x = _fgn(rng, n, spec.hurst)
    origin = f"{spec.kind}:seed={spec.seed}"
    if spec.hurst is not None:
        origin += f":H={spec.hurst}"
    return TimeSeries(x, 1.0, origin)
