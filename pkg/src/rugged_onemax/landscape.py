"""Rugged OneMax: bitstrings, noise models, and frozen per-point distortion.

A :class:`FrozenLandscape` maps every n-bit string to ``ones(x) + d(x)``
where ``d(x)`` is a sample from the configured noise distribution that is a
pure function of ``(landscape_seed, x)``.  Re-evaluating a point therefore
always returns the same value, with no memo table: the distortion is drawn
from a keyed counter-based generator seeded by a digest of the point.

Canonical point encoding for digesting: 8-byte little-endian length,
followed by the bits packed little-endian into 64-bit words with trailing
bits zeroed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import prng


class ConfigurationError(ValueError):
    """Raised for invalid parameters or invalid run/sweep configuration."""


def popcount_words(words: np.ndarray) -> np.ndarray:
    """Number of set bits per row of a (B, W) uint64 array."""
    return np.bitwise_count(words).sum(axis=1, dtype=np.int64)


def words_for(n: int) -> int:
    return (n + 63) // 64


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array of shape (..., n) into (..., W) little-endian words."""
    bits = np.asarray(bits, dtype=np.uint8)
    n = bits.shape[-1]
    w = words_for(n)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    pad = w * 8 - packed.shape[-1]
    if pad:
        packed = np.concatenate(
            [packed, np.zeros(packed.shape[:-1] + (pad,), dtype=np.uint8)], axis=-1
        )
    return packed.view("<u8").reshape(bits.shape[:-1] + (w,)).astype(np.uint64, copy=False)


def unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`; returns a 0/1 uint8 array of shape (..., n)."""
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little", count=n)


class BitString:
    """Fixed-length binary search point with a cached popcount.

    The length never changes after construction; ``ones`` is kept in sync
    by every mutation.
    """

    __slots__ = ("n", "words", "_ones")

    def __init__(self, n: int, words: np.ndarray, ones: int | None = None):
        if n < 1:
            raise ConfigurationError(f"bitstring length must be >= 1, got {n}")
        self.n = int(n)
        self.words = np.asarray(words, dtype=np.uint64)
        if self.words.shape != (words_for(n),):
            raise ConfigurationError("word array does not match bitstring length")
        self._ones = int(ones) if ones is not None else int(np.bitwise_count(self.words).sum())

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(n, np.zeros(words_for(n), dtype=np.uint64), 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        arr = np.fromiter((1 if b else 0 for b in bits), dtype=np.uint8)
        return cls(arr.size, pack_bits(arr), int(arr.sum()))

    @classmethod
    def from_string(cls, s: str) -> "BitString":
        return cls.from_bits(int(c) for c in s)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "BitString":
        words = random_words(n, 1, rng)[0]
        return cls(n, words)

    @property
    def ones(self) -> int:
        return self._ones

    def get(self, i: int) -> int:
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def flip(self, i: int) -> None:
        """Flip bit i in place, keeping the popcount cache in sync."""
        bit = self.get(i)
        self.words[i >> 6] ^= np.uint64(1) << np.uint64(i & 63)
        self._ones += 1 - 2 * bit

    def flipped(self, i: int) -> "BitString":
        y = BitString(self.n, self.words.copy(), self._ones)
        y.flip(i)
        return y

    def copy(self) -> "BitString":
        return BitString(self.n, self.words.copy(), self._ones)

    def bits(self) -> np.ndarray:
        return unpack_bits(self.words, self.n)

    def encode(self) -> bytes:
        """Canonical byte encoding: length prefix + packed little-endian words."""
        return self.n.to_bytes(8, "little") + self.words.astype("<u8").tobytes()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.n == other.n
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.n, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitString({''.join(map(str, self.bits()))})"


def random_words(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, W) packed words of i.i.d. uniform random n-bit strings."""
    w = words_for(n)
    words = rng.integers(0, 1 << 64, size=(count, w), dtype=np.uint64)
    extra = w * 64 - n
    if extra:
        words[:, -1] &= np.uint64((1 << (64 - extra)) - 1)
    return words


def onemax(x: BitString) -> int:
    """Number of 1-bits in x."""
    return x.ones


NOISE_KINDS = ("none", "normal", "geometric")


@dataclass(frozen=True)
class NoiseModel:
    """Distortion distribution: none, N(0, sigma2), or Geo(p) on {1, 2, ...}.

    The geometric tail is P(D >= k) = (1-p)^(k-1), so mean 1/p and
    variance (1-p)/p^2.  The location of the distribution is irrelevant to
    every algorithm here (only fitness comparisons matter), so the
    geometric model is not centered.
    """

    kind: str
    sigma2: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ConfigurationError(f"unknown noise kind {self.kind!r}; expected one of {NOISE_KINDS}")
        if self.kind == "normal" and not self.sigma2 > 0:
            raise ConfigurationError(f"normal noise requires sigma2 > 0, got {self.sigma2}")
        if self.kind == "geometric" and not 0.0 < self.p < 1.0:
            raise ConfigurationError(f"geometric noise requires 0 < p < 1, got {self.p}")

    @classmethod
    def none(cls) -> "NoiseModel":
        return cls("none")

    @classmethod
    def normal(cls, sigma2: float) -> "NoiseModel":
        return cls("normal", sigma2=float(sigma2))

    @classmethod
    def geometric(cls, p: float) -> "NoiseModel":
        return cls("geometric", p=float(p))

    @classmethod
    def with_variance(cls, kind: str, variance: float) -> "NoiseModel":
        if kind == "none":
            return cls.none()
        if kind == "normal":
            return cls.normal(variance)
        if kind == "geometric":
            return cls.geometric(geometric_p_for_variance(variance))
        raise ConfigurationError(f"unknown noise kind {kind!r}")

    @property
    def variance(self) -> float:
        if self.kind == "none":
            return 0.0
        if self.kind == "normal":
            return self.sigma2
        return (1.0 - self.p) / (self.p * self.p)

    def label(self) -> str:
        return self.kind

    def cdf(self, x: float) -> float:
        """Analytic CDF, used by the distribution-fidelity checks."""
        if self.kind == "none":
            return 0.0 if x < 0 else 1.0
        if self.kind == "normal":
            return 0.5 * math.erfc(-x / math.sqrt(2.0 * self.sigma2))
        k = math.floor(x)
        if k < 1:
            return 0.0
        return 1.0 - (1.0 - self.p) ** k


def sample_normal(sigma2: float, rng: np.random.Generator, size=None):
    """I.i.d. N(0, sigma2) samples from a caller-owned generator."""
    if not sigma2 > 0:
        raise ConfigurationError(f"sigma2 must be > 0, got {sigma2}")
    return rng.normal(0.0, math.sqrt(sigma2), size=size)

def sample_geometric(p: float, rng: np.random.Generator, size=None):
    """I.i.d. Geo(p) samples on {1, 2, ...}, one uniform per draw."""
    if not 0.0 < p < 1.0:
        raise ConfigurationError(f"p must be in (0, 1), got {p}")
    u = rng.random(size)
    return 1 + np.floor(np.log(u) / math.log1p(-p)).astype(np.int64)


def geometric_p_for_variance(v: float) -> float:
    """The unique p in (0, 1) with (1-p)/p^2 = v."""
    if not v > 0:
        raise ConfigurationError(f"variance must be > 0, got {v}")
    return (-1.0 + math.sqrt(1.0 + 4.0 * v)) / (2.0 * v)


class FrozenLandscape:
    """OneMax plus a frozen per-point distortion, evaluated statelessly.

    Immutable after construction; safe for concurrent read-only use.  The
    distortion of a point is a pure function of (landscape_seed, point), so
    no table of visited points is kept and memory stays O(1).
    """

    __slots__ = ("n", "noise", "landscape_seed", "_key")

    def __init__(self, n: int, noise: NoiseModel, landscape_seed: int):
        if n < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {n}")
        self.n = int(n)
        self.noise = noise
        self.landscape_seed = int(landscape_seed) & prng.MASK64
        self._key = prng.key_bytes(self.landscape_seed)

    def frozen_noise(self, x: BitString) -> float:
        """The point's fixed distortion (scalar path)."""
        if x.n != self.n:
            raise ConfigurationError(f"point length {x.n} != landscape dimension {self.n}")
        if self.noise.kind == "none":
            return 0.0
        digest = prng.digest_point(x.encode(), self._key)
        if self.noise.kind == "normal":
            return prng.normal_from_digest(digest, math.sqrt(self.noise.sigma2))
        return prng.geometric_from_digest(digest, self.noise.p)

    def evaluate(self, x: BitString) -> float:
        return float(x.ones) + self.frozen_noise(x)

    def noise_words(self, words: np.ndarray) -> np.ndarray:
        """Frozen distortions for a (B, W) batch of packed points."""
        if self.noise.kind == "none":
            return np.zeros(words.shape[0], dtype=np.float64)
        digests = prng.digest_batch(words, self.n, self._key)
        if self.noise.kind == "normal":
            return prng.normal_from_digest_np(digests, math.sqrt(self.noise.sigma2))
        return prng.geometric_from_digest_np(digests, self.noise.p)

    def evaluate_words(self, words: np.ndarray, ones: np.ndarray | None = None) -> np.ndarray:
        """Fitness values for a (B, W) batch; ones may be passed if known."""
        if ones is None:
            ones = popcount_words(words)
        return ones.astype(np.float64) + self.noise_words(words)

    def __repr__(self) -> str:
        return f"FrozenLandscape(n={self.n}, noise={self.noise.kind}, seed={self.landscape_seed})"
