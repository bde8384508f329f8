"""bernstream: a chaotic stream cipher on a 32-bit fixed-point Bernoulli map.

Two fixed-point map generators run in lockstep; each 32-bit output word
is split into four byte sections and the eight sections are XOR-folded
into one keystream byte. The package also ships the six-test randomness
battery used to judge keystream quality and orbit-analysis tools
(bifurcation data, byte coverage, cycle lengths) that expose the
finite-precision dynamics.

Research cipher: no nonce, no authentication, no key schedule. Do not
protect real data with it.
"""

from .analysis import (BifurcationRecord, CycleResult, bifurcation_scan,
                       byte_section, coverage, cycle_length,
                       write_bifurcation_csv)
from .cipher import (CipherIOError, CipherKey, DegenerateKeyError,
                     KeyFormatError, WeakMuError, decrypt_bytes,
                     decrypt_stream, encrypt_bytes, encrypt_stream,
                     generate_key, parse_key)
from .keystream import (ByteQuad, KeystreamGenerator, combine,
                        keystream_bytes, reassemble, split_half, split_word)
from .prng import (MU_MAX, WORD_BITS, WORD_MASK, BernoulliGenerator,
                   generalization_factor, max_step_value, step,
                   step_reference)
from .stats import (ALPHA, TestReport, bits_from_bytes, block_frequency_test,
                    cusum_test, fft_test, frequency_test, run_suite,
                    runs_test)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BernoulliGenerator",
    "BifurcationRecord",
    "ByteQuad",
    "CipherIOError",
    "CipherKey",
    "CycleResult",
    "DegenerateKeyError",
    "KeyFormatError",
    "KeystreamGenerator",
    "MU_MAX",
    "TestReport",
    "WORD_BITS",
    "WORD_MASK",
    "WeakMuError",
    "bifurcation_scan",
    "bits_from_bytes",
    "block_frequency_test",
    "byte_section",
    "combine",
    "coverage",
    "cusum_test",
    "cycle_length",
    "decrypt_bytes",
    "decrypt_stream",
    "encrypt_bytes",
    "encrypt_stream",
    "fft_test",
    "frequency_test",
    "generalization_factor",
    "generate_key",
    "keystream_bytes",
    "max_step_value",
    "parse_key",
    "reassemble",
    "run_suite",
    "runs_test",
    "split_half",
    "split_word",
    "step",
    "step_reference",
    "write_bifurcation_csv",
]
