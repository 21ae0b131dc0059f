"""Keyed, counter-based deterministic sampling primitives.

Every search point owns an unbounded stream of uniforms derived from a
64-bit digest of its canonical byte encoding.  The digest is BLAKE2b keyed
with the landscape seed; the stream is a splitmix-style counter generator
on top of the digest.  Both a scalar (python int) and a vectorized (numpy
uint64) implementation exist and are bit-identical; tests enforce this.

Fixed algorithm choices, frozen for reproducibility:
  - uniforms: 53-bit mantissa, strictly inside (0, 1)
  - normals:  Marsaglia polar method, first component only,
              counters 2r, 2r+1 for rejection round r
  - geometrics on {1, 2, ...}: inverse transform from counter 0
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

_U64_GOLDEN = np.uint64(GOLDEN)
_U64_30 = np.uint64(30)
_U64_27 = np.uint64(27)
_U64_31 = np.uint64(31)
_U64_11 = np.uint64(11)
_U64_M1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_M2 = np.uint64(0x94D049BB133111EB)
_TWO_NEG_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """Splitmix64 finalizer on a python int (mod 2**64)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64_np(z: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer; uint64 in, uint64 out."""
    z = (z ^ (z >> _U64_30)) * _U64_M1
    z = (z ^ (z >> _U64_27)) * _U64_M2
    return z ^ (z >> _U64_31)


def key_bytes(seed: int) -> bytes:
    """Landscape seed as the BLAKE2b key (8 bytes, little-endian)."""
    return (seed & MASK64).to_bytes(8, "little")


def digest_point(encoded: bytes, key: bytes) -> int:
    """64-bit keyed digest of one canonically encoded search point."""
    d = hashlib.blake2b(encoded, digest_size=8, key=key).digest()
    return int.from_bytes(d, "little")


def digest_batch(words: np.ndarray, n: int, key: bytes) -> np.ndarray:
    """Keyed digests for a batch of packed points, shape (B, W) -> (B,).

    Each row is hashed as length-prefix || row bytes, identical to the
    scalar encoding, so scalar and batch evaluation agree bit for bit.
    """
    b, w = words.shape
    prefix = int(n).to_bytes(8, "little")
    buf = np.ascontiguousarray(words).tobytes()
    rowsz = w * 8
    out = np.empty(b, dtype=np.uint64)
    blake = hashlib.blake2b
    ifb = int.from_bytes
    for i in range(b):
        d = blake(prefix + buf[i * rowsz:(i + 1) * rowsz], digest_size=8, key=key).digest()
        out[i] = ifb(d, "little")
    return out


def counter_u64(digest: int, k: int) -> int:
    """k-th raw 64-bit word of the point's stream (scalar path)."""
    return mix64((digest + (k + 1) * GOLDEN) & MASK64)


def counter_u64_np(digests: np.ndarray, k: int) -> np.ndarray:
    return mix64_np(digests + np.uint64(((k + 1) * GOLDEN) & MASK64))


def u01(word: int) -> float:
    """Map a 64-bit word to a uniform strictly inside (0, 1)."""
    return ((word >> 11) + 0.5) * _TWO_NEG_53


def u01_np(words: np.ndarray) -> np.ndarray:
    return ((words >> _U64_11).astype(np.float64) + 0.5) * _TWO_NEG_53


def normal_from_digest(digest: int, sigma: float) -> float:
    """One N(0, sigma^2) sample via the polar method on the point's stream."""
    k = 0
    while True:
        a = 2.0 * u01(counter_u64(digest, 2 * k)) - 1.0
        b = 2.0 * u01(counter_u64(digest, 2 * k + 1)) - 1.0
        q = a * a + b * b
        if 0.0 < q < 1.0:
            return a * math.sqrt(-2.0 * math.log(q) / q) * sigma
        k += 1


def normal_from_digest_np(digests: np.ndarray, sigma: float) -> np.ndarray:
    out = np.empty(digests.shape[0], dtype=np.float64)
    todo = np.arange(digests.shape[0])
    k = 0
    while todo.size:
        d = digests[todo]
        a = 2.0 * u01_np(counter_u64_np(d, 2 * k)) - 1.0
        b = 2.0 * u01_np(counter_u64_np(d, 2 * k + 1)) - 1.0
        q = a * a + b * b
        ok = (q > 0.0) & (q < 1.0)
        sel = todo[ok]
        qs = q[ok]
        out[sel] = a[ok] * np.sqrt(-2.0 * np.log(qs) / qs) * sigma
        todo = todo[~ok]
        k += 1
    return out


def geometric_from_digest(digest: int, p: float) -> float:
    """One Geo(p) sample on {1, 2, ...}: inverse transform of counter 0."""
    u = u01(counter_u64(digest, 0))
    return 1.0 + math.floor(math.log(u) / math.log1p(-p))


def geometric_from_digest_np(digests: np.ndarray, p: float) -> np.ndarray:
    u = u01_np(counter_u64_np(digests, 0))
    return 1.0 + np.floor(np.log(u) / math.log1p(-p))
