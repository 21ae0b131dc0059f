"""Search heuristics over frozen-noise landscapes behind one run interface.

Four algorithms share a step-based interface and a uniform telemetry
record:

* ``rls``  - single incumbent, one uniform bit flip per step, accept on >=
* ``ea``   - single incumbent, each bit flips with probability 1/n
             (sampled as Binomial(n, 1/n) flips at distinct uniform
             positions; identical in law to per-bit coins), accept on >=
* ``cga``  - per-bit marginals updated by +-1/K toward the fitter of two
             sampled offspring, marginals clamped to [0, 1], no borders
* ``rs``   - a fresh uniform bitstring every iteration

:func:`run` executes a full budget with batched runners that are
equivalent in law to iterating the single-step operations but exploit the
frozen-landscape structure: while an incumbent is fixed, candidate
acceptance is a lookup into the (frozen) values of the points actually
sampled, so stagnation phases cost almost nothing.  The per-step functions
remain the reference semantics and the law-equivalence tests compare the
two.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .prng import geometric_from_digest, normal_from_digest

from .landscape import (
    BitString,
    ConfigurationError,
    FrozenLandscape,
    pack_bits,
    popcount_words,
    random_words,
    words_for,
)

ALGORITHMS = ("rls", "ea", "cga", "rs")

_SCAN_BLOCK = 16384
_CGA_CHUNK = 256


@dataclass
class Telemetry:
    """Uniform per-run counters and optional traces.

    ``accepted_transitions`` counts transitions to a strictly better
    search point: incumbent replacements that increased the fitness
    (RLS/EA) or, for cGA/RS, points that strictly improved on the best
    fitness seen so far.  ``replacements`` counts every incumbent
    replacement including equal-fitness moves, which the >= acceptance
    rule admits under integer-valued noise (tie partners can trade places
    indefinitely, so this count is not bounded by the improving one).
    ``max_ones_sampled`` is the max popcount over every point the
    algorithm evaluated, nondecreasing in iterations.
    """

    algorithm: str
    n: int
    budget: int
    iterations: int = 0
    evaluations: int = 0
    accepted_transitions: int = 0
    replacements: int = 0
    start_ones: int = 0
    max_ones_sampled: int = 0
    final_ones: int = 0
    final_fitness: float = math.nan
    best_fitness: float = -math.inf
    max_accepted_jump: int = 0
    target_ones: int | None = None
    target_hit_iteration: int | None = None
    stopped_early: bool = False
    stop_reason: str = ""
    noise_trace: list[float] | None = None
    marginal_min_trace: list[float] | None = None
    final_min_marginal: float | None = None
    final_marginal_sum: float | None = None

    def _saw_point(self, ones: int, iteration: int) -> None:
        if ones > self.max_ones_sampled:
            self.max_ones_sampled = ones
        if (
            self.target_ones is not None
            and self.target_hit_iteration is None
            and ones >= self.target_ones
        ):
            self.target_hit_iteration = iteration


@dataclass
class StepReport:
    candidate_ones: int
    candidate_fitness: float
    accepted: bool
    replaced: bool


@dataclass
class IncumbentState:
    """Current point and its cached frozen fitness (never re-evaluated)."""

    current: BitString
    current_fitness: float


@dataclass
class CgaState:
    """Marginal vector, step-size denominator K, iteration counter."""

    marginals: np.ndarray
    K: float
    t: int = 0

    @classmethod
    def fresh(cls, n: int, K: float) -> "CgaState":
        if not K > 0:
            raise ConfigurationError(f"K must be > 0, got {K}")
        return cls(marginals=np.full(n, 0.5), K=float(K))

    def marginal_sum(self) -> float:
        return float(self.marginals.sum())

    def absorbed(self) -> bool:
        p = self.marginals
        return bool(((p == 0.0) | (p == 1.0)).all())


def init_balanced_start(n: int, rng: np.random.Generator) -> BitString:
    """Uniformly random point with exactly floor(n/2) ones."""
    if n < 2:
        raise ConfigurationError(f"n must be >= 2, got {n}")
    bits = np.zeros(n, dtype=np.uint8)
    bits[: n // 2] = 1
    rng.shuffle(bits)
    return BitString(n, pack_bits(bits), n // 2)


def rls_step(state: IncumbentState, L: FrozenLandscape, rng: np.random.Generator) -> StepReport:
    """Flip one uniformly chosen bit; accept the candidate on fitness >=."""
    i = int(rng.integers(L.n))
    y = state.current.flipped(i)
    v = L.evaluate(y)
    accepted = v >= state.current_fitness
    if accepted:
        state.current = y
        state.current_fitness = v
    return StepReport(y.ones, v, accepted, accepted)


def _distinct_positions(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    return rng.choice(n, size=m, replace=False)


def ea_step(state: IncumbentState, L: FrozenLandscape, rng: np.random.Generator) -> StepReport:
    """Flip a Binomial(n, 1/n) number of distinct uniform positions.

    Equivalent in law to flipping each bit independently with probability
    1/n.  A zero-flip draw yields y = x, which is accepted but leaves the
    incumbent unchanged.
    """
    n = L.n
    m = int(rng.binomial(n, 1.0 / n))
    if m == 0:
        return StepReport(state.current.ones, state.current_fitness, True, False)
    y = state.current.copy()
    for i in _distinct_positions(n, m, rng):
        y.flip(int(i))
    v = L.evaluate(y)
    accepted = v >= state.current_fitness
    if accepted:
        state.current = y
        state.current_fitness = v
    return StepReport(y.ones, v, accepted, accepted)


def cga_update(marginals: np.ndarray, K: float, xb: np.ndarray, yb: np.ndarray,
               fx: float, fy: float) -> None:
    """One marginal update step, in place: move 1/K toward the fitter sample.

    Swap happens only on a strict fitness comparison (ties keep x); each
    marginal moves by exactly +-1/K where the samples differ, then is
    clamped to [0, 1].
    """
    if fx < fy:
        xb, yb = yb, xb
    if (xb != yb).any():
        marginals += (xb.astype(np.float64) - yb.astype(np.float64)) / K
        np.clip(marginals, 0.0, 1.0, out=marginals)


def cga_step(state: CgaState, L: FrozenLandscape, rng: np.random.Generator) -> StepReport:
    """Sample two offspring from the marginals and update toward the winner."""
    n = L.n
    u = rng.random((2, n))
    xb = u[0] < state.marginals
    yb = u[1] < state.marginals
    wx = pack_bits(np.stack((xb, yb)))
    fx = float(xb.sum()) + float(L.noise_words(wx[:1])[0])
    fy = float(yb.sum()) + float(L.noise_words(wx[1:])[0])
    cga_update(state.marginals, state.K, xb, yb, fx, fy)
    state.t += 1
    win_ones, win_f = (int(xb.sum()), fx) if fx >= fy else (int(yb.sum()), fy)
    return StepReport(win_ones, win_f, True, False)


def rs_step(track: Telemetry, L: FrozenLandscape, rng: np.random.Generator) -> StepReport:
    """Evaluate one fresh uniform bitstring and update the best-so-far."""
    words = random_words(L.n, 1, rng)
    ones = int(popcount_words(words)[0])
    v = float(L.evaluate_words(words, np.array([ones]))[0])
    track.iterations += 1
    track.evaluations += 1
    track._saw_point(ones, track.iterations)
    improved = v > track.best_fitness
    if improved:
        track.best_fitness = v
        track.final_ones = ones
        track.final_fitness = v
        if track.evaluations > 1:
            track.accepted_transitions += 1
            track.replacements += 1
    return StepReport(ones, v, improved, False)


def run(
    algorithm: str,
    L: FrozenLandscape,
    budget: int,
    run_seed: int,
    K: float | None = None,
    ones_target: int | None = None,
    stop_at_target: bool = False,
    trace_noise: bool = False,
    trace_marginals: bool = False,
) -> Telemetry:
    """Execute one full run; a pure function of its arguments.

    Exactly ``budget`` iterations are executed (one candidate per
    iteration for rls/ea/rs, one offspring pair for cga) unless an early
    stop fires: cga halts once every marginal is absorbed at 0 or 1, and
    any algorithm may stop at ``ones_target`` when ``stop_at_target`` is
    set.  Every frozen evaluation performed by the algorithm counts toward
    ``max_ones_sampled``.
    """
    if algorithm not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    if budget < 1:
        raise ConfigurationError(f"budget must be >= 1, got {budget}")
    if algorithm == "cga":
        if K is None:
            raise ConfigurationError("cga requires a step-size denominator K")
        if not K > 0:
            raise ConfigurationError(f"K must be > 0, got {K}")
    rng = np.random.default_rng(run_seed & ((1 << 64) - 1))
    t = Telemetry(algorithm=algorithm, n=L.n, budget=budget, target_ones=ones_target)
    if trace_noise:
        t.noise_trace = []
    if algorithm == "rls":
        _run_rls(t, L, budget, rng, stop_at_target)
    elif algorithm == "ea":
        _run_ea(t, L, budget, rng, stop_at_target)
    elif algorithm == "rs":
        _run_rs(t, L, budget, rng, stop_at_target)
    else:
        if trace_marginals:
            t.marginal_min_trace = []
        _run_cga(t, L, budget, float(K), rng, stop_at_target)
    return t


def _neighbor_values(L: FrozenLandscape, x: BitString) -> np.ndarray:
    """Frozen fitness of all n Hamming neighbors of x, as one batch."""
    n = L.n
    tiled = np.tile(x.words, (n, 1))
    idx = np.arange(n)
    tiled[idx, idx >> 6] ^= np.uint64(1) << (idx & 63).astype(np.uint64)
    ones = x.ones + 1 - 2 * x.bits().astype(np.int64)
    return L.evaluate_words(tiled, ones)


def _hit_scan(t: Telemetry, ones_arr: np.ndarray, base_iteration: int) -> None:
    """Record the first in-block point reaching the target, if any."""
    if t.target_ones is None or t.target_hit_iteration is not None:
        return
    hits = np.nonzero(ones_arr >= t.target_ones)[0]
    if hits.size:
        t.target_hit_iteration = base_iteration + int(hits[0]) + 1


def _run_rls(t: Telemetry, L: FrozenLandscape, budget: int, rng: np.random.Generator,
             stop_at_target: bool) -> None:
    n = L.n
    x = init_balanced_start(n, rng)
    fx = L.evaluate(x)
    t.start_ones = x.ones
    t.evaluations = 1
    t._saw_point(x.ones, 0)
    t.best_fitness = fx
    cache: dict[bytes, np.ndarray] = {}
    while t.iterations < budget:
        key = x.words.tobytes()
        vals = cache.get(key)
        if vals is None:
            vals = _neighbor_values(L, x)
            if len(cache) < 4096:
                cache[key] = vals
        accept = vals >= fx
        xbits = x.bits()
        cand_ones = x.ones + 1 - 2 * xbits.astype(np.int64)
        any_accept = bool(accept.any())
        done = False
        while t.iterations < budget:
            b = min(_SCAN_BLOCK, budget - t.iterations)
            idx = rng.integers(0, n, size=b)
            acc = accept[idx]
            j = int(np.argmax(acc)) if any_accept and acc.any() else b
            consumed = min(j + 1, b)
            seen = idx[:consumed]
            seen_ones = cand_ones[seen]
            _hit_scan(t, seen_ones, t.iterations)
            m = int(seen_ones.max())
            if m > t.max_ones_sampled:
                t.max_ones_sampled = m
            t.iterations += consumed
            t.evaluations += consumed
            if stop_at_target and t.target_hit_iteration is not None:
                t.stopped_early = True
                t.stop_reason = "target"
                done = True
                break
            if j < b:
                i = int(seen[-1])
                v = float(vals[i])
                t.replacements += 1
                if v > fx:
                    t.accepted_transitions += 1
                jump = int(cand_ones[i]) - x.ones
                if jump > t.max_accepted_jump:
                    t.max_accepted_jump = jump
                x = x.flipped(i)
                fx = v
                t.best_fitness = max(t.best_fitness, fx)
                if t.noise_trace is not None:
                    t.noise_trace.append(fx - x.ones)
                break
        else:
            done = True
        if done or t.iterations >= budget:
            break
    t.final_ones = x.ones
    t.final_fitness = fx


def _sample_distinct_block(n: int, m: int, g: int, rng: np.random.Generator) -> np.ndarray:
    """(g, m) uniform distinct positions per row, by redraw-on-duplicate."""
    pos = rng.integers(0, n, size=(g, m))
    while True:
        s = np.sort(pos, axis=1)
        dup = (s[:, 1:] == s[:, :-1]).any(axis=1)
        if not dup.any():
            return pos
        pos[dup] = rng.integers(0, n, size=(int(dup.sum()), m))


def _run_ea(t: Telemetry, L: FrozenLandscape, budget: int, rng: np.random.Generator,
            stop_at_target: bool) -> None:
    n = L.n
    x = init_balanced_start(n, rng)
    fx = L.evaluate(x)
    t.start_ones = x.ones
    t.evaluations = 1
    t._saw_point(x.ones, 0)
    t.best_fitness = fx
    cache: dict[bytes, np.ndarray] = {}
    block = 256
    while t.iterations < budget:
        key = x.words.tobytes()
        vals1 = cache.get(key)
        if vals1 is None:
            vals1 = _neighbor_values(L, x)
            if len(cache) < 4096:
                cache[key] = vals1
        xbits = x.bits().astype(np.int64)
        ones1 = x.ones + 1 - 2 * xbits
        stretch_done = False
        while t.iterations < budget and not stretch_done:
            b = min(block, budget - t.iterations)
            block = min(block * 2, _SCAN_BLOCK)
            flips = rng.binomial(n, 1.0 / n, size=b)
            cand_ones = np.full(b, x.ones, dtype=np.int64)
            cand_val = np.full(b, fx, dtype=np.float64)
            replacing = np.zeros(b, dtype=bool)
            rows1 = np.nonzero(flips == 1)[0]
            pos1 = rng.integers(0, n, size=rows1.size)
            cand_ones[rows1] = ones1[pos1]
            cand_val[rows1] = vals1[pos1]
            replacing[rows1] = cand_val[rows1] >= fx
            flip_info: dict[int, tuple] = {}
            mmax = int(flips.max()) if b else 0
            for m in range(2, mmax + 1):
                rows = np.nonzero(flips == m)[0]
                if not rows.size:
                    continue
                pos = _sample_distinct_block(n, m, rows.size, rng)
                wordsm = np.tile(x.words, (rows.size, 1))
                for c in range(m):
                    pc = pos[:, c]
                    wordsm[np.arange(rows.size), pc >> 6] ^= np.uint64(1) << (pc & 63).astype(np.uint64)
                om = x.ones + (1 - 2 * xbits[pos]).sum(axis=1)
                vm = L.evaluate_words(wordsm, om)
                cand_ones[rows] = om
                cand_val[rows] = vm
                replacing[rows] = vm >= fx
                flip_info[m] = (rows, wordsm)
            j = int(np.argmax(replacing)) if replacing.any() else b
            consumed = min(j + 1, b)
            seen_ones = cand_ones[:consumed]
            _hit_scan(t, seen_ones, t.iterations)
            m_seen = int(seen_ones.max())
            if m_seen > t.max_ones_sampled:
                t.max_ones_sampled = m_seen
            t.iterations += consumed
            t.evaluations += consumed
            if stop_at_target and t.target_hit_iteration is not None:
                t.stopped_early = True
                t.stop_reason = "target"
                return _ea_finalize(t, x, fx)
            if j < b:
                mj = int(flips[j])
                if mj == 1:
                    row_in_group = int(np.searchsorted(rows1, j))
                    y = x.flipped(int(pos1[row_in_group]))
                else:
                    rows, wordsm = flip_info[mj]
                    row_in_group = int(np.searchsorted(rows, j))
                    y = BitString(n, wordsm[row_in_group].copy(), int(cand_ones[j]))
                v = float(cand_val[j])
                t.replacements += 1
                if v > fx:
                    t.accepted_transitions += 1
                jump = y.ones - x.ones
                if jump > t.max_accepted_jump:
                    t.max_accepted_jump = jump
                x, fx = y, v
                t.best_fitness = max(t.best_fitness, fx)
                if t.noise_trace is not None:
                    t.noise_trace.append(fx - x.ones)
                stretch_done = True
                block = 256
    _ea_finalize(t, x, fx)


def _ea_finalize(t: Telemetry, x: BitString, fx: float) -> None:
    t.final_ones = x.ones
    t.final_fitness = fx


def _run_rs(t: Telemetry, L: FrozenLandscape, budget: int, rng: np.random.Generator,
            stop_at_target: bool) -> None:
    n = L.n
    best_f = -math.inf
    best_ones = 0
    while t.iterations < budget:
        b = min(_SCAN_BLOCK, budget - t.iterations)
        words = random_words(n, b, rng)
        pc = popcount_words(words)
        if L.noise.kind == "none":
            f = pc.astype(np.float64)
        else:
            f = pc.astype(np.float64) + L.noise_words(words)
        _hit_scan(t, pc, t.iterations)
        m = int(pc.max())
        if m > t.max_ones_sampled:
            t.max_ones_sampled = m
        running = np.maximum.accumulate(np.concatenate(([best_f], f)))
        improved = f > running[:-1]
        first = t.evaluations == 0
        t.accepted_transitions += int(improved.sum()) - (1 if first and improved[0] else 0)
        if improved.any():
            last = int(np.nonzero(improved)[0][-1])
            best_f = float(f[last])
            best_ones = int(pc[last])
        t.iterations += b
        t.evaluations += b
        if stop_at_target and t.target_hit_iteration is not None:
            t.stopped_early = True
            t.stop_reason = "target"
            break
    t.replacements = t.accepted_transitions
    t.best_fitness = best_f
    t.final_ones = best_ones
    t.final_fitness = best_f


def _run_cga(t: Telemetry, L: FrozenLandscape, budget: int, K: float,
             rng: np.random.Generator, stop_at_target: bool) -> None:
    n = L.n
    w = words_for(n)
    state = CgaState.fresh(n, K)
    p = state.marginals
    prefix = n.to_bytes(8, "little")
    key = L._key
    kind = L.noise.kind
    sigma = math.sqrt(L.noise.sigma2) if kind == "normal" else 0.0
    geo_p = L.noise.p
    pad = w * 8 - (n + 7) // 8
    zeros = b"\x00" * pad
    best_f = -math.inf
    chunk = None
    ci = _CGA_CHUNK
    while t.iterations < budget:
        if ci == _CGA_CHUNK:
            chunk = rng.random((_CGA_CHUNK, 2, n))
            ci = 0
        u = chunk[ci]
        ci += 1
        xb = u[0] < p
        yb = u[1] < p
        packed = np.packbits(np.stack((xb, yb)), axis=1, bitorder="little")
        ox = int(xb.sum())
        oy = int(yb.sum())
        if kind == "none":
            nx = ny = 0.0
        else:
            dx = int.from_bytes(
                hashlib.blake2b(prefix + packed[0].tobytes() + zeros, digest_size=8, key=key).digest(),
                "little")
            dy = int.from_bytes(
                hashlib.blake2b(prefix + packed[1].tobytes() + zeros, digest_size=8, key=key).digest(),
                "little")
            if kind == "normal":
                nx = normal_from_digest(dx, sigma)
                ny = normal_from_digest(dy, sigma)
            else:
                nx = geometric_from_digest(dx, geo_p)
                ny = geometric_from_digest(dy, geo_p)
        fx = ox + nx
        fy = oy + ny
        cga_update(p, K, xb, yb, fx, fy)
        state.t += 1
        t.iterations += 1
        t.evaluations += 2
        it = t.iterations
        t._saw_point(max(ox, oy), it)
        hi = max(fx, fy)
        if hi > best_f:
            if t.evaluations > 2:
                t.accepted_transitions += 1
                t.replacements += 1
            best_f = hi
        t.final_ones = ox if fx >= fy else oy
        t.final_fitness = max(fx, fy)
        if t.marginal_min_trace is not None:
            t.marginal_min_trace.append(float(p.min()))
        if stop_at_target and t.target_hit_iteration is not None:
            t.stopped_early = True
            t.stop_reason = "target"
            break
        if state.absorbed():
            t.stopped_early = True
            t.stop_reason = "absorbed"
            break
    t.best_fitness = best_f
    t.final_min_marginal = float(p.min())
    t.final_marginal_sum = float(p.sum())
