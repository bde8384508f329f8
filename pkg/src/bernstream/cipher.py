"""Stream encryption and key handling.

The cipher XORs plaintext bytes with the keystream; decryption is the
same operation. A key is 80 bits: two 32-bit seeds and two 8-bit
feedback factors, written as 20 hex characters
seed1(8) || mu1(2) || seed2(8) || mu2(2), big-endian fields.

There is no nonce, authentication, or key schedule: reusing a key across
messages leaks the XOR of the plaintexts. Treat every key as single-use.
"""

from __future__ import annotations

import secrets
import string
from dataclasses import dataclass

import numpy as np

from .keystream import KeystreamGenerator
from .prng import MU_MAX, WORD_MASK

# mu/256 > 1/2 keeps the map expansive; below that orbits contract onto
# short cycles and the keystream degrades.
MU_MIN_STRONG = 129

KEY_HEX_LEN = 20
DEFAULT_CHUNK_SIZE = 64 * 1024


class KeyFormatError(ValueError):
    """Key text is not exactly 20 hex characters."""


class DegenerateKeyError(ValueError):
    """Key would produce a cryptographically useless keystream."""


class WeakMuError(DegenerateKeyError):
    """A feedback factor is below the expansive-regime minimum."""


class CipherIOError(OSError):
    """Read or write failed mid-stream; message carries the byte offset."""


@dataclass(frozen=True)
class CipherKey:
    """The full 80-bit secret: (seed1, mu1, seed2, mu2)."""

    seed1: int
    mu1: int
    seed2: int
    mu2: int

    def __post_init__(self):
        for name in ("seed1", "seed2"):
            v = getattr(self, name)
            if not 0 <= v <= WORD_MASK:
                raise ValueError(f"{name} out of range [0, 2**32): {v!r}")
        for name in ("mu1", "mu2"):
            v = getattr(self, name)
            if not 0 <= v <= MU_MAX:
                raise ValueError(f"{name} out of range [0, 255]: {v!r}")

    def validate(self, allow_weak_mu: bool = False) -> None:
        """Reject keys that cannot produce a usable keystream.

        Identical generators XOR-cancel to an all-zero keystream; that
        check can never be lifted. The mu >= 129 guard is a conservative
        strength floor and may be lifted for research use.
        """
        if self.seed1 == self.seed2 and self.mu1 == self.mu2:
            raise DegenerateKeyError(
                "degenerate key: identical generators cancel to an all-zero keystream")
        if not allow_weak_mu and min(self.mu1, self.mu2) < MU_MIN_STRONG:
            raise WeakMuError(
                f"weak key: feedback factors must be >= {MU_MIN_STRONG} "
                f"(mu/256 > 1/2); got mu1={self.mu1}, mu2={self.mu2}")

    def to_hex(self) -> str:
        return f"{self.seed1:08X}{self.mu1:02X}{self.seed2:08X}{self.mu2:02X}"


def parse_key(text: str, allow_weak_mu: bool = False) -> CipherKey:
    """Parse and validate a 20-hex-character key string.

    Raises KeyFormatError for malformed text and DegenerateKeyError (or
    its WeakMuError subclass) for well-formed but unusable keys, so
    callers can explain which problem occurred.
    """
    s = text.strip()
    if len(s) != KEY_HEX_LEN:
        raise KeyFormatError(
            f"key must be exactly {KEY_HEX_LEN} hex characters, got {len(s)}")
    if any(c not in string.hexdigits for c in s):
        raise KeyFormatError("key must contain only hex characters")
    key = CipherKey(seed1=int(s[0:8], 16), mu1=int(s[8:10], 16),
                    seed2=int(s[10:18], 16), mu2=int(s[18:20], 16))
    key.validate(allow_weak_mu=allow_weak_mu)
    return key


def generate_key() -> CipherKey:
    """Draw a key from OS randomness, re-drawing until validation passes."""
    while True:
        raw = secrets.token_bytes(10)
        key = CipherKey(seed1=int.from_bytes(raw[0:4], "big"), mu1=raw[4],
                        seed2=int.from_bytes(raw[5:9], "big"), mu2=raw[9])
        try:
            key.validate()
        except DegenerateKeyError:
            continue
        return key


def _xor_bytes(data: bytes, ks: bytes) -> bytes:
    if not data:
        return b""
    a = np.frombuffer(data, dtype=np.uint8)
    b = np.frombuffer(ks, dtype=np.uint8)
    return (a ^ b).tobytes()


def encrypt_bytes(key: CipherKey, data: bytes, allow_weak_mu: bool = False) -> bytes:
    """XOR data with the key's keystream. Output length equals input length."""
    gen = KeystreamGenerator.from_key(key, allow_weak_mu=allow_weak_mu)
    return _xor_bytes(data, gen.read(len(data)))


def encrypt_stream(key: CipherKey, src, dst, allow_weak_mu: bool = False,
                   chunk_size: int = DEFAULT_CHUNK_SIZE) -> int:
    """XOR src into dst in chunks; returns the byte count processed.

    Memory use is constant in the input size. The key is validated before
    anything is read or written. I/O failures are re-raised as
    CipherIOError carrying the stream position.
    """
    if chunk_size < 1:
        raise ValueError(f"chunk size must be >= 1: {chunk_size!r}")
    gen = KeystreamGenerator.from_key(key, allow_weak_mu=allow_weak_mu)
    done = 0
    while True:
        try:
            chunk = src.read(chunk_size)
        except OSError as exc:
            raise CipherIOError(f"read failed at byte {done}: {exc}") from exc
        if not chunk:
            return done
        out = _xor_bytes(chunk, gen.read(len(chunk)))
        try:
            dst.write(out)
        except OSError as exc:
            raise CipherIOError(f"write failed at byte {done}: {exc}") from exc
        done += len(chunk)


# XOR is an involution: decryption is the identical operation.
decrypt_bytes = encrypt_bytes
decrypt_stream = encrypt_stream
