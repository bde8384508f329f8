import random

import pytest

from bernstream.cipher import CipherKey, DegenerateKeyError
from bernstream.keystream import (ByteQuad, KeystreamGenerator, combine,
                                  keystream_bytes, reassemble, split_half,
                                  split_word)
from bernstream.prng import BernoulliGenerator

from oracles import keystream_reference, split_word_arith, xor_parity_byte

SIM_KEY = CipherKey(seed1=0xAAAAAAAA, mu1=0xAA, seed2=0xBBBBBBBB, mu2=0xBB)


def test_split_half_known_values():
    assert split_half(0x12345678, 32) == (0x1234, 0x5678)
    assert split_half(0, 32) == (0, 0)
    assert split_half(0xFFFF, 16) == (0xFF, 0xFF)


def test_split_half_rejects_odd_width():
    with pytest.raises(ValueError):
        split_half(0, 7)
    with pytest.raises(ValueError):
        split_half(0, 0)


def test_split_half_rejects_out_of_range_value():
    with pytest.raises(ValueError):
        split_half(1 << 16, 16)
    with pytest.raises(ValueError):
        split_half(-1, 16)


def test_split_word_known_values():
    assert split_word(0x12345678) == ByteQuad(0x12, 0x34, 0x56, 0x78)
    assert split_word(0) == ByteQuad(0, 0, 0, 0)
    # first word of the 0xAAAAAAAA / mu=170 orbit, 0x63AAAAA9
    assert split_word(1672129193) == ByteQuad(0x63, 0xAA, 0xAA, 0xA9)
    assert reassemble(split_word(1672129193)) == 1672129193


def test_split_word_round_trip_random():
    rng = random.Random(0x5111)
    for _ in range(10_000):
        w = rng.randrange(2**32)
        quad = split_word(w)
        assert reassemble(quad) == w
        assert tuple(quad) == split_word_arith(w)


def test_combine_known_values():
    q = split_word(0xDEADBEEF)
    assert combine(q, q) == 0
    assert combine(ByteQuad(1, 2, 4, 8), ByteQuad(16, 32, 64, 128)) == 0xFF
    aa = ByteQuad(0xAA, 0xAA, 0xAA, 0xAA)
    assert combine(aa, aa) == 0


def test_combine_matches_parity_oracle():
    rng = random.Random(0xC0B1)
    for _ in range(5_000):
        a = ByteQuad(*(rng.randrange(256) for _ in range(4)))
        b = ByteQuad(*(rng.randrange(256) for _ in range(4)))
        assert combine(a, b) == xor_parity_byte(tuple(a) + tuple(b))


def test_combine_xor_linearity():
    rng = random.Random(0x11EA)
    zero = ByteQuad(0, 0, 0, 0)
    for _ in range(2_000):
        a = ByteQuad(*(rng.randrange(256) for _ in range(4)))
        b = ByteQuad(*(rng.randrange(256) for _ in range(4)))
        c = ByteQuad(*(rng.randrange(256) for _ in range(4)))
        a_xor_c = ByteQuad(*(x ^ y for x, y in zip(a, c)))
        assert combine(a_xor_c, b) == combine(a, b) ^ combine(c, zero)


class TestKeystreamGenerator:

    def test_identical_generators_cancel(self):
        gen = KeystreamGenerator(BernoulliGenerator(123, 170),
                                 BernoulliGenerator(123, 170))
        assert all(gen.next_byte() == 0 for _ in range(100))

    def test_first_byte_matches_simulation_parameters(self):
        gen = KeystreamGenerator.from_key(SIM_KEY)
        expected = keystream_reference(0xAAAAAAAA, 0xAA, 0xBBBBBBBB, 0xBB, 1)
        first = gen.next_byte()
        assert first == expected[0]
        assert first == 0x70  # frozen from the arithmetic oracle

    def test_each_byte_advances_both_generators_once(self):
        gen = KeystreamGenerator.from_key(SIM_KEY)
        gen.next_byte()
        gen.next_byte()
        twin_a = BernoulliGenerator(SIM_KEY.seed1, SIM_KEY.mu1)
        twin_a.iterate(2)
        assert gen.gen_a.x == twin_a.x

    def test_lockstep_after_bulk_read(self):
        gen = KeystreamGenerator.from_key(SIM_KEY)
        gen.read(777)
        twin_a = BernoulliGenerator(SIM_KEY.seed1, SIM_KEY.mu1)
        twin_b = BernoulliGenerator(SIM_KEY.seed2, SIM_KEY.mu2)
        twin_a.iterate(777)
        twin_b.iterate(777)
        assert gen.gen_a.x == twin_a.x
        assert gen.gen_b.x == twin_b.x
        assert gen.gen_a.started and gen.gen_b.started

    @pytest.mark.parametrize("n", [0, 1, 2, 7, 64, 65, 1000])
    def test_read_equals_repeated_next_byte(self, n):
        bulk = KeystreamGenerator.from_key(SIM_KEY)
        single = KeystreamGenerator.from_key(SIM_KEY)
        assert bulk.read(n) == bytes(single.next_byte() for _ in range(n))
        assert bulk.gen_a.x == single.gen_a.x
        assert bulk.gen_b.x == single.gen_b.x

    def test_read_negative_rejected(self):
        with pytest.raises(ValueError):
            KeystreamGenerator.from_key(SIM_KEY).read(-1)

    def test_from_key_rejects_degenerate(self):
        bad = CipherKey(seed1=5, mu1=170, seed2=5, mu2=170)
        with pytest.raises(DegenerateKeyError):
            KeystreamGenerator.from_key(bad)


def test_keystream_bytes_empty():
    assert keystream_bytes(SIM_KEY, 0) == b""


def test_keystream_bytes_prefix_consistency():
    short = keystream_bytes(SIM_KEY, 100)
    long = keystream_bytes(SIM_KEY, 1000)
    assert long[:100] == short


def test_keystream_bytes_matches_reference():
    got = keystream_bytes(SIM_KEY, 256)
    want = keystream_reference(0xAAAAAAAA, 0xAA, 0xBBBBBBBB, 0xBB, 256)
    assert got == want


def test_keystream_bytes_propagates_key_validation():
    bad = CipherKey(seed1=7, mu1=200, seed2=7, mu2=200)
    with pytest.raises(DegenerateKeyError):
        keystream_bytes(bad, 10)


def test_suite_scale_bulk_length():
    # the four-million-bit sample size used for suite testing
    key = CipherKey(seed1=1288500000, mu1=192, seed2=858990000, mu2=205)
    assert len(keystream_bytes(key, 500_000)) == 500_000


def test_byte_section_dispersion_at_mu_170():
    # sections 2-4 disperse over nearly all byte values; section 1 is banded
    gen_a = BernoulliGenerator(0xAAAAAAAA, 170)
    words = gen_a.iterate(10_000)
    for shift in (16, 8, 0):
        assert len({(w >> shift) & 0xFF for w in words}) >= 243
    msb = {(w >> 24) & 0xFF for w in words}
    assert min(msb) >= 43 and max(msb) <= 212
