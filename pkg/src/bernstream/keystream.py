"""Word splitting and the two-generator XOR combiner.

Each 32-bit generator word is split into four byte sections (section 1
is the most significant). The keystream byte is the bitwise XOR of all
eight sections coming from two generators advanced in lockstep -- the
software equivalent of a 56-gate XOR array, 7 gates per output bit.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .prng import BernoulliGenerator


class ByteQuad(NamedTuple):
    """The four byte sections of a 32-bit word, most significant first."""

    b3: int
    b2: int
    b1: int
    b0: int


def split_half(x: int, width: int) -> tuple[int, int]:
    """Split a width-bit value into (high, low) halves.

    high = floor(x / 2**(width/2)), low = x mod 2**(width/2).
    """
    if width <= 0 or width % 2:
        raise ValueError(f"width must be a positive even bit count: {width!r}")
    if not 0 <= x < 1 << width:
        raise ValueError(f"value out of range for {width} bits: {x!r}")
    half = width // 2
    return x >> half, x & ((1 << half) - 1)


def split_word(x: int) -> ByteQuad:
    """Split a 32-bit word into four bytes via two halving stages (32 -> 16 -> 8)."""
    hi, lo = split_half(x, 32)
    b3, b2 = split_half(hi, 16)
    b1, b0 = split_half(lo, 16)
    return ByteQuad(b3, b2, b1, b0)


def reassemble(quad: ByteQuad) -> int:
    """Inverse of split_word."""
    return (quad.b3 << 24) | (quad.b2 << 16) | (quad.b1 << 8) | quad.b0


def combine(a: ByteQuad, b: ByteQuad) -> int:
    """XOR all eight byte sections into one keystream byte.

    Each output bit is the parity of the corresponding bit of the eight
    inputs. Identical quads cancel to 0x00 -- the degenerate-key hazard.
    """
    return a.b3 ^ a.b2 ^ a.b1 ^ a.b0 ^ b.b3 ^ b.b2 ^ b.b1 ^ b.b0


class KeystreamGenerator:
    """Two generators advanced in lockstep, one keystream byte per dual step."""

    __slots__ = ("gen_a", "gen_b")

    def __init__(self, gen_a: BernoulliGenerator, gen_b: BernoulliGenerator):
        self.gen_a = gen_a
        self.gen_b = gen_b

    @classmethod
    def from_key(cls, key, allow_weak_mu: bool = False) -> "KeystreamGenerator":
        """Build fresh generators from a key carrying seed1/mu1/seed2/mu2.

        The key is validated first (its validate() method is called), so
        a degenerate key never produces any output. Works with
        bernstream.cipher.CipherKey or anything shaped like it.
        """
        key.validate(allow_weak_mu=allow_weak_mu)
        return cls(BernoulliGenerator(key.seed1, key.mu1),
                   BernoulliGenerator(key.seed2, key.mu2))

    def next_byte(self) -> int:
        """Advance both generators one step and combine their words."""
        word_a = self.gen_a.next_word()
        word_b = self.gen_b.next_word()
        return combine(split_word(word_a), split_word(word_b))

    def read(self, n: int) -> bytes:
        """Produce n keystream bytes, identical to n next_byte() calls.

        Bulk path: the two orbits are advanced in one inline loop and the
        eight-section XOR is folded vectorized, because per-byte calls are
        too slow for file encryption.
        """
        if n < 0:
            raise ValueError(f"byte count must be >= 0: {n!r}")
        if n == 0:
            return b""
        gen_a, gen_b = self.gen_a, self.gen_b
        xa, ma = gen_a.x, gen_a.mu
        xb, mb = gen_b.x, gen_b.mu
        ka = (256 - ma) << 23
        kb = (256 - mb) << 23
        mixed = [0] * n
        for i in range(n):
            xa = ((xa & 0x7FFFFFFF) * ma >> 7) + ka
            xb = ((xb & 0x7FFFFFFF) * mb >> 7) + kb
            mixed[i] = xa ^ xb
        gen_a.x, gen_b.x = xa, xb
        gen_a.started = gen_b.started = True
        # XOR of the four bytes of each mixed word; XOR commutes, so
        # fold8(wa) ^ fold8(wb) == fold8(wa ^ wb).
        w = np.array(mixed, dtype=np.uint32)
        w ^= w >> np.uint32(16)
        w ^= w >> np.uint32(8)
        return w.astype(np.uint8).tobytes()


def keystream_bytes(key, n: int, allow_weak_mu: bool = False) -> bytes:
    """First n keystream bytes for a key, from fresh generators."""
    return KeystreamGenerator.from_key(key, allow_weak_mu=allow_weak_mu).read(n)
