"""Fixed-point Bernoulli-map generator core.

State words are 32-bit unsigned integers read as binary fractions
value/2**32 in [0, 1). One step doubles the word modulo 2**32 (the
chaotic shift-out of the top bit), scales the result by an 8-bit
feedback factor mu/256 keeping only the top 32 of the 40 product bits,
and adds a constant offset that re-centers the orbit inside the word
range. The arithmetic mirrors a hardware datapath: 33-bit overflow
discarded after the doubler, 8 low product bits dropped after the
multiplier.
"""

from __future__ import annotations

WORD_BITS = 32
WORD_MASK = (1 << WORD_BITS) - 1
MU_MAX = 255


def _check_word(x: int) -> None:
    if not 0 <= x <= WORD_MASK:
        raise ValueError(f"state word out of range [0, 2**32): {x!r}")


def _check_mu(mu: int) -> None:
    if not 0 <= mu <= MU_MAX:
        raise ValueError(f"feedback factor out of range [0, 255]: {mu!r}")


def generalization_factor(mu: int) -> int:
    """Constant offset added every step: 2**23 * (256 - mu).

    This is the fixed-point form of 2**32 * (1 - mu/256) / 2, which pins
    the bottom of the reachable band; the orbit can never fall below it.
    """
    _check_mu(mu)
    return (256 - mu) << 23


def step(x: int, mu: int) -> int:
    """Advance one map step, bit-exact to the 32-bit datapath.

    t = (2*x) mod 2**32, p = t * mu (exact 40-bit product),
    result = floor(p / 256) + generalization_factor(mu).
    Total on its domain; the result always fits in 32 bits.
    """
    _check_word(x)
    _check_mu(mu)
    t = (x << 1) & WORD_MASK
    return ((t * mu) >> 8) + ((256 - mu) << 23)


def step_reference(x: int, mu: int) -> int:
    """Plain-arithmetic restatement of step().

    Written with unbounded-precision *, //, % only (no shifts or masks)
    so the two implementations share no tricks and can cross-check each
    other. Intended for tests and acceptance runs, not hot loops.
    """
    _check_word(x)
    _check_mu(mu)
    t = (2 * x) % 2**32
    return (t * mu) // 2**8 + 2**23 * (256 - mu)


def max_step_value(mu: int) -> int:
    """Largest value step(x, mu) can take over all x.

    The doubler output is even and at most 2**32 - 2, so the band is
    [generalization_factor(mu), generalization_factor(mu) + (2**32-2)*mu//256].
    """
    _check_mu(mu)
    return generalization_factor(mu) + ((1 << WORD_BITS) - 2) * mu // 256


class BernoulliGenerator:
    """One generator: a state register, its feedback factor, and the
    seed-injection flag.

    `started` models the hardware's run flip-flop: False until the first
    step consumes the seed, then permanently True. The seed itself is
    never emitted -- the register captures adder outputs only, so the
    output sequence begins at step(seed).

    Instances are sequential state machines: never step one instance
    from two threads. Distinct instances are fully independent.
    """

    __slots__ = ("x", "mu", "started")

    def __init__(self, seed: int, mu: int):
        _check_word(seed)
        _check_mu(mu)
        self.x = seed
        self.mu = mu
        self.started = False

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(x={self.x:#010x}, mu={self.mu}, "
                f"started={self.started})")

    def next_word(self) -> int:
        """Advance one step and return the new register contents."""
        self.x = step(self.x, self.mu)
        self.started = True
        return self.x

    def iterate(self, n: int) -> list[int]:
        """Return the next n output words; equivalent to n next_word() calls.

        n = 0 returns an empty list and leaves the generator untouched.
        """
        if n < 0:
            raise ValueError(f"word count must be >= 0: {n!r}")
        if n == 0:
            return []
        # (2x mod 2**32)*mu >> 8 == (x mod 2**31)*mu >> 7; one op fewer
        # per step. This loop is the hot path for scans and keystreams.
        x = self.x
        mu = self.mu
        gf = (256 - mu) << 23
        out = [0] * n
        for i in range(n):
            x = ((x & 0x7FFFFFFF) * mu >> 7) + gf
            out[i] = x
        self.x = x
        self.started = True
        return out
