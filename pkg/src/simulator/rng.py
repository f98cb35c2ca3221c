"""
Counter-based random streams and streaming estimators for the Monte Carlo engine
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngSpec:
    """Master seed; trial i always draws from the Philox stream keyed by (seed, i)"""
    seed: int

    def generator(self, trial):
        sequence = np.random.SeedSequence(self.seed, spawn_key=(int(trial),))
        return np.random.Generator(np.random.Philox(sequence))


@dataclass(frozen=True)
class Estimate:
    value: object
    stderr: object
    trials: int
    empty_windows: int = 0


class RunningStats:
    """Welford mean and variance over scalar or fixed-shape array samples"""

    def __init__(self):
        self.count = 0
        self.mean = None
        self.m2 = None

    def push(self, sample):
        sample = np.asarray(sample, dtype=float)
        self.count += 1
        if self.mean is None:
            self.mean = sample.copy()
            self.m2 = np.zeros_like(sample)
            return
        delta = sample - self.mean
        self.mean = self.mean + delta / self.count
        self.m2 = self.m2 + delta * (sample - self.mean)

    def merge(self, other):
        """Combined statistics of two disjoint sample sets; neither operand is modified"""
        merged = RunningStats()
        if self.count == 0 or other.count == 0:
            source = self if other.count == 0 else other
            merged.count = source.count
            merged.mean = None if source.mean is None else source.mean.copy()
            merged.m2 = None if source.m2 is None else source.m2.copy()
            return merged
        merged.count = self.count + other.count
        delta = other.mean - self.mean
        merged.mean = self.mean + delta * other.count / merged.count
        merged.m2 = self.m2 + other.m2 + delta ** 2 * self.count * other.count / merged.count
        return merged

    @property
    def variance(self):
        if self.count < 2:
            return np.zeros_like(self.mean) if self.mean is not None else 0.0
        return self.m2 / (self.count - 1)

    @property
    def stderr(self):
        if self.count == 0:
            return np.nan
        return np.sqrt(self.variance / self.count)

    def estimate(self, empty_windows=0):
        value = np.nan if self.mean is None else self.mean[()]
        stderr = self.stderr
        stderr = stderr[()] if isinstance(stderr, np.ndarray) else stderr
        return Estimate(value, stderr, self.count, empty_windows)
