import io
import random

import pytest

from bernstream.cipher import (CipherIOError, CipherKey, DegenerateKeyError,
                               KeyFormatError, WeakMuError, decrypt_bytes,
                               decrypt_stream, encrypt_bytes, encrypt_stream,
                               generate_key, parse_key)
from bernstream.keystream import keystream_bytes

GOOD_KEY = parse_key("AAAAAAAAAABBBBBBBBBB")


class TestParseKey:

    def test_simulation_key_fields(self):
        key = parse_key("AAAAAAAAAABBBBBBBBBB")
        assert key == CipherKey(seed1=0xAAAAAAAA, mu1=0xAA,
                                seed2=0xBBBBBBBB, mu2=0xBB)

    def test_case_insensitive_and_trailing_newline(self):
        assert parse_key("aaaaaaaaaabbbbbbbbbb\n") == GOOD_KEY

    def test_degenerate_key_rejected(self):
        with pytest.raises(DegenerateKeyError):
            parse_key("AAAAAAAAAAAAAAAAAAAA")

    def test_wrong_length_is_a_format_error(self):
        with pytest.raises(KeyFormatError):
            parse_key("0000000000")
        with pytest.raises(KeyFormatError):
            parse_key("AAAAAAAAAABBBBBBBBBB00")

    def test_non_hex_characters_rejected(self):
        with pytest.raises(KeyFormatError):
            parse_key("GGGGGGGGGGGGGGGGGGGG")
        # int() would accept these; the parser must not
        with pytest.raises(KeyFormatError):
            parse_key("AAAA_AAAAABBBBBBBBBB")
        with pytest.raises(KeyFormatError):
            parse_key("+AAAAAAAAABBBBBBBBBB")

    def test_weak_mu_rejected_by_default(self):
        with pytest.raises(WeakMuError):
            parse_key("AAAAAAAA00BBBBBBBBBB")

    def test_weak_mu_allowed_when_requested(self):
        key = parse_key("AAAAAAAA00BBBBBBBBBB", allow_weak_mu=True)
        assert key.mu1 == 0

    def test_weak_mu_flag_never_lifts_degeneracy(self):
        with pytest.raises(DegenerateKeyError):
            parse_key("AAAAAAAA00AAAAAAAA00", allow_weak_mu=True)

    def test_round_trip_through_hex(self):
        assert parse_key(GOOD_KEY.to_hex()) == GOOD_KEY

    def test_boundary_mu(self):
        # 0x81 = 129 is the lowest accepted factor
        parse_key("00000000810000000181")
        with pytest.raises(WeakMuError):
            parse_key("00000000800000000181")


def test_cipher_key_field_ranges():
    with pytest.raises(ValueError):
        CipherKey(seed1=2**32, mu1=170, seed2=0, mu2=170)
    with pytest.raises(ValueError):
        CipherKey(seed1=0, mu1=256, seed2=1, mu2=170)


class TestEncrypt:

    def test_empty_round_trip(self):
        assert encrypt_bytes(GOOD_KEY, b"") == b""
        assert decrypt_bytes(GOOD_KEY, b"") == b""

    def test_zero_plaintext_reveals_keystream(self):
        n = 4096
        assert encrypt_bytes(GOOD_KEY, bytes(n)) == keystream_bytes(GOOD_KEY, n)

    def test_involution_on_random_data(self):
        rng = random.Random(0xE4C)
        msg = rng.randbytes(64 * 1024)
        assert decrypt_bytes(GOOD_KEY, encrypt_bytes(GOOD_KEY, msg)) == msg

    def test_length_preserved(self):
        for n in (1, 13, 255, 1000):
            assert len(encrypt_bytes(GOOD_KEY, bytes(n))) == n

    def test_keystream_independent_of_plaintext(self):
        rng = random.Random(0xF00)
        m1 = rng.randbytes(2048)
        m2 = rng.randbytes(2048)
        c1 = encrypt_bytes(GOOD_KEY, m1)
        c2 = encrypt_bytes(GOOD_KEY, m2)
        xor = bytes(a ^ b for a, b in zip(c1, c2))
        assert xor == bytes(a ^ b for a, b in zip(m1, m2))

    def test_wrong_key_does_not_decrypt(self):
        rng = random.Random(0xBAD)
        msg = rng.randbytes(64)
        other = parse_key("AAAAAAAAAABBBBBBBBBC")
        assert decrypt_bytes(other, encrypt_bytes(GOOD_KEY, msg)) != msg

    def test_stream_matches_bytes_across_chunk_boundaries(self):
        rng = random.Random(0xC4C)
        for n in (0, 1, 1023, 1024, 1025, 5000):
            msg = rng.randbytes(n)
            src, dst = io.BytesIO(msg), io.BytesIO()
            processed = encrypt_stream(GOOD_KEY, src, dst, chunk_size=1024)
            assert processed == n
            assert dst.getvalue() == encrypt_bytes(GOOD_KEY, msg)

    def test_stream_round_trip(self):
        rng = random.Random(0x5EED)
        msg = rng.randbytes(10_000)
        ct = io.BytesIO()
        encrypt_stream(GOOD_KEY, io.BytesIO(msg), ct)
        pt = io.BytesIO()
        decrypt_stream(GOOD_KEY, io.BytesIO(ct.getvalue()), pt)
        assert pt.getvalue() == msg

    def test_degenerate_key_rejected_before_any_output(self):
        bad = CipherKey(seed1=1, mu1=170, seed2=1, mu2=170)
        writes = []

        class Recorder:
            def write(self, data):
                writes.append(data)

        with pytest.raises(DegenerateKeyError):
            encrypt_stream(bad, io.BytesIO(b"secret"), Recorder())
        assert writes == []

    def test_weak_key_usable_with_override(self):
        weak = CipherKey(seed1=1, mu1=5, seed2=2, mu2=200)
        msg = b"research mode"
        ct = encrypt_bytes(weak, msg, allow_weak_mu=True)
        assert decrypt_bytes(weak, ct, allow_weak_mu=True) == msg
        with pytest.raises(WeakMuError):
            encrypt_bytes(weak, msg)

    def test_read_failure_carries_position(self):
        class FailsAfter:
            def __init__(self, good_chunks):
                self.remaining = good_chunks

            def read(self, n):
                if self.remaining == 0:
                    raise OSError("disk gone")
                self.remaining -= 1
                return b"x" * n

        with pytest.raises(CipherIOError, match="at byte 2048"):
            encrypt_stream(GOOD_KEY, FailsAfter(2), io.BytesIO(),
                           chunk_size=1024)

    def test_write_failure_carries_position(self):
        class BrokenSink:
            def write(self, data):
                raise OSError("pipe closed")

        with pytest.raises(CipherIOError, match="at byte 0"):
            encrypt_stream(GOOD_KEY, io.BytesIO(b"payload"), BrokenSink())


def test_generate_key_never_emits_invalid_keys():
    for _ in range(1000):
        key = generate_key()
        key.validate()  # raises on degenerate or weak draws
        assert parse_key(key.to_hex()) == key
