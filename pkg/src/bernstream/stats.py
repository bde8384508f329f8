"""Randomness test battery: six bit-sequence tests with P-values.

Frequency, block frequency, runs, cumulative sums (forward and reverse)
and the spectral (FFT) test. Each returns a TestReport; a sequence
passes a test when its P-value is at least the 0.01 significance level.
Bits derive from bytes most-significant-bit first.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import erfc, floor, log, sqrt

import numpy as np

from .special import igamc, normal_cdf

ALPHA = 0.01
RECOMMENDED_MIN_BITS = 100
DEFAULT_BLOCK_SIZE = 128
MIN_SUITE_BYTES = 13

SUITE_TESTS = ("frequency", "block_frequency", "runs",
               "cumulative_sums_forward", "cumulative_sums_reverse", "fft")


@dataclass(frozen=True)
class TestReport:
    """Outcome of one randomness test."""

    test: str
    statistic: float
    p_value: float
    passed: bool
    params: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"test": self.test, "statistic": self.statistic,
                "p_value": self.p_value, "pass": self.passed,
                "params": self.params}


def _report(test: str, statistic: float, p_value: float, params: dict) -> TestReport:
    p = min(max(float(p_value), 0.0), 1.0)
    return TestReport(test=test, statistic=float(statistic), p_value=p,
                      passed=p >= ALPHA, params=params)


def as_bits(bits) -> np.ndarray:
    """Coerce a 0/1 sequence (or a '0101...' string) to a uint8 array."""
    if isinstance(bits, str):
        bits = [int(c) for c in bits]
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("bit sequence must be one-dimensional and non-empty")
    if arr.max(initial=0) > 1:
        raise ValueError("bit sequence may contain only 0 and 1")
    return arr


def bits_from_bytes(data) -> np.ndarray:
    """Expand bytes into bits, most significant bit of each byte first."""
    buf = bytes(data)
    if not buf:
        raise ValueError("cannot derive bits from empty input")
    return np.unpackbits(np.frombuffer(buf, dtype=np.uint8))


def _warn_short(n: int, test: str) -> None:
    if n < RECOMMENDED_MIN_BITS:
        warnings.warn(
            f"{test}: sequence of {n} bits is below the recommended "
            f"{RECOMMENDED_MIN_BITS}; result is indicative only",
            stacklevel=3)


def frequency_test(bits) -> TestReport:
    """Monobit balance: P = erfc(|sum(2e-1)| / sqrt(2n))."""
    arr = as_bits(bits)
    n = arr.size
    _warn_short(n, "frequency")
    s_n = 2 * int(arr.sum()) - n
    s_obs = abs(s_n) / sqrt(n)
    p = erfc(s_obs / sqrt(2.0))
    return _report("frequency", s_obs, p, {"n": n, "partial_sum": s_n})


def block_frequency_test(bits, block_size: int = DEFAULT_BLOCK_SIZE) -> TestReport:
    """Per-block balance: chi2 = 4M * sum((pi_i - 1/2)^2), P = igamc(N/2, chi2/2).

    Uses N = floor(n / block_size) full blocks; the trailing remainder is
    discarded.
    """
    arr = as_bits(bits)
    n = arr.size
    if block_size < 1:
        raise ValueError(f"block size must be >= 1: {block_size!r}")
    if block_size > n:
        raise ValueError(
            f"block size {block_size} exceeds sequence length {n}")
    n_blocks = n // block_size
    pis = arr[:n_blocks * block_size].reshape(n_blocks, block_size).mean(axis=1)
    chi2 = 4.0 * block_size * float(np.sum((pis - 0.5) ** 2))
    p = igamc(n_blocks / 2.0, chi2 / 2.0)
    return _report("block_frequency", chi2, p,
                   {"n": n, "block_size": block_size, "blocks": n_blocks})


def runs_test(bits) -> TestReport:
    """Oscillation rate: count of maximal runs against its expectation.

    Prerequisite |pi - 1/2| < 2/sqrt(n) must hold, otherwise the monobit
    failure dominates and P is reported as 0 with the reason recorded.
    """
    arr = as_bits(bits)
    n = arr.size
    _warn_short(n, "runs")
    pi = float(arr.sum()) / n
    if abs(pi - 0.5) >= 2.0 / sqrt(n):
        return _report("runs", 0.0, 0.0,
                       {"n": n, "proportion": pi,
                        "prerequisite": "failed: |pi - 1/2| >= 2/sqrt(n)"})
    v_obs = 1 + int(np.count_nonzero(arr[1:] != arr[:-1]))
    denom = 2.0 * sqrt(2.0 * n) * pi * (1.0 - pi)
    if denom == 0.0:
        # constant sequence short enough to slip past the prerequisite
        return _report("runs", float(v_obs), 0.0,
                       {"n": n, "proportion": pi,
                        "prerequisite": "failed: constant sequence"})
    p = erfc(abs(v_obs - 2.0 * n * pi * (1.0 - pi)) / denom)
    return _report("runs", v_obs, p, {"n": n, "proportion": pi, "runs": v_obs})


def cusum_test(bits, mode: str = "forward") -> TestReport:
    """Maximal excursion of the +-1 partial-sum walk.

    z = max_k |S_k|; in reverse mode the sequence is reversed first. The
    P-value is the two standard-normal-CDF sums over
    k in [floor((-n/z+1)/4), floor((n/z-1)/4)] and
    k in [floor((-n/z-3)/4), floor((n/z-1)/4)].
    """
    if mode not in ("forward", "reverse"):
        raise ValueError(f"mode must be 'forward' or 'reverse': {mode!r}")
    arr = as_bits(bits)
    n = arr.size
    _warn_short(n, "cumulative sums")
    steps = arr.astype(np.int64) * 2 - 1
    if mode == "reverse":
        steps = steps[::-1]
    z = int(np.abs(np.cumsum(steps)).max())
    sqrt_n = sqrt(n)
    hi = floor((n / z - 1) / 4)
    total1 = sum(normal_cdf((4 * k + 1) * z / sqrt_n)
                 - normal_cdf((4 * k - 1) * z / sqrt_n)
                 for k in range(floor((-n / z + 1) / 4), hi + 1))
    total2 = sum(normal_cdf((4 * k + 3) * z / sqrt_n)
                 - normal_cdf((4 * k + 1) * z / sqrt_n)
                 for k in range(floor((-n / z - 3) / 4), hi + 1))
    p = 1.0 - total1 + total2
    return _report(f"cumulative_sums_{mode}", z, p,
                   {"n": n, "mode": mode, "max_excursion": z})


def fft_test(bits) -> TestReport:
    """Spectral peak count against the 95% threshold T = sqrt(n*ln(1/0.05)).

    Uses the moduli of the first n/2 Fourier coefficients of the +-1
    sequence; an odd trailing bit is truncated and recorded.
    """
    arr = as_bits(bits)
    truncated = arr.size % 2
    n = arr.size - truncated
    if n == 0:
        raise ValueError("need at least 2 bits for the spectral test")
    _warn_short(n, "fft")
    x = arr[:n].astype(np.float64) * 2.0 - 1.0
    moduli = np.abs(np.fft.rfft(x)[: n // 2])
    threshold = sqrt(n * log(1.0 / 0.05))
    n_expected = 0.95 * n / 2.0
    n_below = int(np.count_nonzero(moduli < threshold))
    d = (n_below - n_expected) / sqrt(n * 0.95 * 0.05 / 4.0)
    p = erfc(abs(d) / sqrt(2.0))
    params = {"n": n, "threshold": threshold, "below_threshold": n_below,
              "expected_below": n_expected}
    if truncated:
        params["truncated_bits"] = 1
    return _report("fft", d, p, params)


def run_suite(data, block_size: int = DEFAULT_BLOCK_SIZE) -> list[TestReport]:
    """Run all six tests on a byte sequence, in fixed order.

    Requires at least 13 bytes (>= 104 bits). If the requested block size
    exceeds the bit length it is clamped so short samples stay testable.
    """
    buf = bytes(data)
    if len(buf) < MIN_SUITE_BYTES:
        raise ValueError(
            f"need at least {MIN_SUITE_BYTES} bytes, got {len(buf)}")
    bits = bits_from_bytes(buf)
    m = min(block_size, bits.size)
    return [
        frequency_test(bits),
        block_frequency_test(bits, m),
        runs_test(bits),
        cusum_test(bits, "forward"),
        cusum_test(bits, "reverse"),
        fft_test(bits),
    ]
