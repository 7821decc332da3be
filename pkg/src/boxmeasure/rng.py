"""Counter-based uniform random stream (SplitMix64).

Draw number k of the stream with seed s is

    mix64((s + (k + 1) * GAMMA) mod 2**64)

where GAMMA = 0x9E3779B97F4A7C15 and mix64 is the SplitMix64 finalizer
(Steele/Lea/Vigna): two xor-shift-multiply rounds with the constants
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB followed by a final xor-shift.
Every draw is a pure function of (seed, counter), so any slice of the
stream can be produced independently, out of order, or on another worker,
and always yields the same bits.
"""

from __future__ import annotations

import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO53 = float(2 ** 53)


def mix64(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= _M1
    z ^= z >> np.uint64(27)
    z *= _M2
    z ^= z >> np.uint64(31)
    return z


def raw64(seed: int, counters: np.ndarray) -> np.ndarray:
    s = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
    c = counters.astype(np.uint64, copy=False)
    return mix64(s + (c + np.uint64(1)) * GAMMA)


def uniforms(seed: int, counters: np.ndarray) -> np.ndarray:
    """float64 in [0, 1), 53 significant bits."""
    return (raw64(seed, counters) >> np.uint64(11)).astype(np.float64) / _TWO53


def uniforms_open(seed: int, counters: np.ndarray) -> np.ndarray:
    """float64 in (0, 1); safe as a log() argument."""
    bits = (raw64(seed, counters) >> np.uint64(11)).astype(np.float64)
    return (bits + 0.5) / _TWO53
