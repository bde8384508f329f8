"""Orbit diagnostics: bifurcation data, byte-section coverage, cycle lengths.

Bifurcation scans sample the asymptotic orbit per feedback factor so the
banded most-significant section and the space-filling lower sections can
be plotted or measured. Cycle detection quantifies the finite-precision
degradation: every orbit on the 32-bit state space is eventually
periodic, usually with a short tail and period.
"""

from __future__ import annotations

from dataclasses import dataclass

from .prng import BernoulliGenerator, _check_mu, _check_word

DEFAULT_TRANSIENT = 1000
DEFAULT_SAMPLES = 200
DEFAULT_MAX_STEPS = 10_000_000

CSV_HEADER = "mu,section,value"


@dataclass(frozen=True)
class BifurcationRecord:
    """One asymptotic orbit sample: byte `value` of `section` at `mu`."""

    mu: int
    section: int
    value: int


@dataclass(frozen=True)
class CycleResult:
    """Eventually-periodic structure of one orbit.

    When the step budget runs out before the cycle is confirmed, `tail`
    and `period` are None and `steps_examined` reports the work done;
    that is an outcome, not an error.
    """

    tail: int | None
    period: int | None
    steps_examined: int

    @property
    def found(self) -> bool:
        return self.period is not None


def _section_shift(section: int) -> int:
    if section not in (1, 2, 3, 4):
        raise ValueError(f"section must be 1..4 (1 = most significant): {section!r}")
    return 8 * (4 - section)


def byte_section(x: int, section: int) -> int:
    """Byte `section` of a 32-bit word; section 1 is the most significant."""
    return (x >> _section_shift(section)) & 0xFF


def bifurcation_scan(mu_min: int, mu_max: int, x0: int,
                     transient: int = DEFAULT_TRANSIENT,
                     samples: int = DEFAULT_SAMPLES,
                     section: int = 1) -> list[BifurcationRecord]:
    """Asymptotic orbit samples for every mu in [mu_min, mu_max].

    Each mu starts a fresh orbit at x0, discards `transient` outputs,
    then records the chosen byte section of the next `samples` outputs.
    Deterministic: identical parameters give identical record lists.
    """
    _check_mu(mu_min)
    _check_mu(mu_max)
    if mu_min > mu_max:
        raise ValueError(f"empty mu range: [{mu_min}, {mu_max}]")
    if transient < 0:
        raise ValueError(f"transient must be >= 0: {transient!r}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1: {samples!r}")
    shift = _section_shift(section)
    records = []
    for mu in range(mu_min, mu_max + 1):
        gen = BernoulliGenerator(x0, mu)
        gen.iterate(transient)
        records.extend(
            BifurcationRecord(mu, section, (w >> shift) & 0xFF)
            for w in gen.iterate(samples))
    return records


def coverage(seed: int, mu: int, section: int, n: int) -> float:
    """Fraction of the 256 byte values the section visits in n outputs."""
    if n < 1:
        raise ValueError(f"need at least one output: {n!r}")
    shift = _section_shift(section)
    gen = BernoulliGenerator(seed, mu)
    seen = set()
    for w in gen.iterate(n):
        seen.add((w >> shift) & 0xFF)
    return len(seen) / 256.0


def cycle_length(seed: int, mu: int,
                 max_steps: int = DEFAULT_MAX_STEPS) -> CycleResult:
    """Tail and minimal period of the orbit from `seed`, by Brent's method.

    Constant memory; every map evaluation counts against `max_steps`.
    The step arithmetic is inlined because orbits routinely run for
    hundreds of thousands of steps.
    """
    _check_word(seed)
    _check_mu(mu)
    if max_steps < 1:
        raise ValueError(f"step budget must be >= 1: {max_steps!r}")
    gf = (256 - mu) << 23
    # Phase 1: window-doubling race for the period.
    power = 1
    period = 1
    tortoise = seed
    hare = ((seed & 0x7FFFFFFF) * mu >> 7) + gf
    steps = 1
    while tortoise != hare:
        if steps >= max_steps:
            return CycleResult(None, None, steps)
        if power == period:
            tortoise = hare
            power <<= 1
            period = 0
        hare = ((hare & 0x7FFFFFFF) * mu >> 7) + gf
        steps += 1
        period += 1
    # Phase 2: hare runs `period` ahead of a fresh tortoise; they meet at
    # the cycle entry, giving the minimal tail.
    hare = seed
    for _ in range(period):
        if steps >= max_steps:
            return CycleResult(None, None, steps)
        hare = ((hare & 0x7FFFFFFF) * mu >> 7) + gf
        steps += 1
    tortoise = seed
    tail = 0
    while tortoise != hare:
        if steps + 2 > max_steps:
            return CycleResult(None, None, steps)
        tortoise = ((tortoise & 0x7FFFFFFF) * mu >> 7) + gf
        hare = ((hare & 0x7FFFFFFF) * mu >> 7) + gf
        steps += 2
        tail += 1
    return CycleResult(tail, period, steps)


def write_bifurcation_csv(records, stream) -> None:
    """Write records as CSV rows `mu,section,value`, decimal fields."""
    stream.write(CSV_HEADER + "\n")
    for r in records:
        stream.write(f"{r.mu},{r.section},{r.value}\n")
