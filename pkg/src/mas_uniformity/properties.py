"""Executable checks of the MAS bounds: equal-size maximum, the (N-1, 1)
limit, single-move and epsilon-move stability, confined reassignment and
scale invariance.

Randomized checks take an explicit seed (or ``numpy.random.Generator``) so
every failure can be replayed. Checks raise :class:`BoundViolation` when
``strict`` and otherwise return a report with ``passed=False``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import (
    BoundViolation,
    EmptyActiveSetError,
    IndexOutOfRangeError,
    OutOfRangeError,
    SingleClusterError,
)
from .metrics import mas
from .partition import Partition, partition_from_sizes

# Slack for accumulated rounding when comparing against non-strict bounds.
FLOAT_SLACK = 1e-12


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else partition_from_sizes(p)


def _require_integral(p: Partition):
    if not p.is_integral:
        raise ValueError("this check needs integer cluster sizes")


@dataclass
class PerturbationReport:
    proposition: str
    base_mas: float
    max_observed_delta: float
    bound: float
    passed: bool
    witnesses: list[tuple[str, float]] = field(default_factory=list)
    trials: int = 0

    def to_dict(self) -> dict:
        return {
            "proposition": self.proposition,
            "base_mas": self.base_mas,
            "bound": self.bound,
            "observed_max": self.max_observed_delta,
            "passed": self.passed,
            "trials": self.trials,
            "witnesses": [{"move": m, "delta": d} for m, d in self.witnesses],
        }


def _finish(report: PerturbationReport, strict: bool) -> PerturbationReport:
    if strict and not report.passed:
        raise BoundViolation(
            f"{report.proposition}: observed {report.max_observed_delta!r} "
            f"against bound {report.bound!r}",
            report,
        )
    return report


def random_integer_partition(seed, max_k: int = 50, max_n: int = 500, min_k: int = 2) -> Partition:
    """Uniformly random composition of a random N into a random K >= min_k parts."""
    rng = _rng(seed)
    k = int(rng.integers(min_k, max_k + 1))
    n = int(rng.integers(k, max_n + 1))
    cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False)) if k > 1 else []
    sizes = np.diff(np.concatenate(([0], cuts, [n])))
    return partition_from_sizes(sizes)


@dataclass(frozen=True)
class EqualSizeCheck:
    mas: float
    mas_is_one: bool
    sizes_equal: bool

    @property
    def consistent(self) -> bool:
        return self.mas_is_one == self.sizes_equal

    def __bool__(self) -> bool:
        return self.consistent


def check_equal_size_maximum(p, tol: float = 1e-12) -> EqualSizeCheck:
    """Both sides of "MAS = 1 iff all sizes are equal" for one partition."""
    p = _as_partition(p)
    if p.k < 2:
        raise SingleClusterError("the equal-size maximum needs K >= 2")
    u = mas(p)
    return EqualSizeCheck(u, abs(u - 1.0) <= tol, bool(np.all(p.sizes == p.sizes[0])))


def check_dominance_limit(n: int, rel_tol: float = 1e-14, strict: bool = True) -> float:
    """MAS of the partition (n - 1, 1), which must equal 2 / n."""
    if int(n) != n or n < 2:
        raise OutOfRangeError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    u = mas(partition_from_sizes([n - 1, 1]))
    expected = 2.0 / n
    if strict and abs(u - expected) > rel_tol * expected:
        raise BoundViolation(f"MAS([{n - 1}, 1]) = {u!r}, expected {expected!r}")
    return u


def _describe_move(a: int, b: int, k: int) -> str:
    return f"cluster {a} -> {'fresh' if b == k else f'cluster {b}'}"


def single_move_stability(p, strict: bool = True, n_witnesses: int = 3) -> PerturbationReport:
    """Exhaustive single-point moves, including into a fresh empty cluster.

    The bound is ``|Delta U| < 3 / N`` (strict).
    """
    p = _as_partition(p)
    if p.k < 2:
        raise SingleClusterError("single-move stability needs K >= 2")
    _require_integral(p)
    deltas = np.asarray(kernels.single_move_deltas(p.sizes))
    flat = np.where(np.isnan(deltas), -np.inf, deltas).ravel()
    top = np.argsort(-flat, kind="stable")[:n_witnesses]
    k = p.k
    witnesses = [(_describe_move(i // (k + 1), i % (k + 1), k), float(flat[i])) for i in top]
    worst = float(flat[top[0]])
    bound = 3.0 / p.total
    report = PerturbationReport(
        proposition="single-move",
        base_mas=mas(p),
        max_observed_delta=worst,
        bound=bound,
        passed=worst < bound,
        witnesses=witnesses,
        trials=int(np.isfinite(flat).sum()),
    )
    return _finish(report, strict)


class _MovablePoints:
    """Point-level labels with O(1) single-point moves and fresh clusters."""

    def __init__(self, sizes):
        self.sizes = [int(s) for s in sizes]
        self.owner = np.repeat(np.arange(len(self.sizes)), self.sizes)
        self.alive = list(range(len(self.sizes)))
        self.slot = {c: i for i, c in enumerate(self.alive)}

    def move(self, point: int, u: float) -> None:
        src = int(self.owner[point])
        choices = len(self.alive)  # other live clusters plus one fresh
        j = int(u * choices)
        if j >= choices - 1:
            dest = len(self.sizes)
            self.sizes.append(0)
            self.slot[dest] = len(self.alive)
            self.alive.append(dest)
        else:
            dest = self.alive[j]
            if dest == src:
                dest = self.alive[choices - 1]
        self.owner[point] = dest
        self.sizes[src] -= 1
        self.sizes[dest] += 1
        if self.sizes[src] == 0:
            i = self.slot.pop(src)
            last = self.alive.pop()
            if last != src:
                self.alive[i] = last
                self.slot[last] = i


def epsilon_reassignment_stability(p, epsilon: float, trials: int, seed,
                                   strict: bool = True) -> PerturbationReport:
    """Random walks of floor(epsilon * N) single-point moves.

    Each move takes a uniformly random point (so the source cluster is
    drawn proportionally to size) to a uniformly random other live cluster
    or to a fresh one. The bound ``|Delta U| < 3 epsilon`` is asserted when
    at least one move is made.
    """
    p = _as_partition(p)
    if not 0.0 <= epsilon <= 1.0:
        raise OutOfRangeError(f"epsilon must be in [0, 1], got {epsilon!r}")
    if trials < 1:
        raise OutOfRangeError("trials must be >= 1")
    _require_integral(p)
    rng = _rng(seed)
    n = int(round(p.total))
    moves = int(math.floor(epsilon * n))
    base = mas(p)
    worst, witnesses = 0.0, []
    for t in range(trials):
        if moves == 0:
            break
        state = _MovablePoints(p.sizes)
        points = rng.integers(0, n, size=moves)
        uniforms = rng.random(moves)
        for pt, u in zip(points.tolist(), uniforms.tolist()):
            state.move(pt, u)
        delta = abs(mas(partition_from_sizes(state.sizes)) - base)
        if delta > worst:
            worst = delta
            witnesses = [(f"trial {t}: {moves} random single-point moves", delta)]
    bound = 3.0 * epsilon
    report = PerturbationReport(
        proposition="epsilon-moves",
        base_mas=base,
        max_observed_delta=worst,
        bound=bound,
        passed=moves == 0 or worst < bound,
        witnesses=witnesses,
        trials=trials if moves else 0,
    )
    return _finish(report, strict)


def _random_resplit(mass: int, rng: np.random.Generator) -> list[int]:
    # log-uniform part count so that both coarse merges and near-singleton
    # fragmentations are sampled
    k = int(min(mass, math.floor(math.exp(rng.uniform(0.0, math.log(mass + 1))))))
    k = max(k, 1)
    if k == 1:
        return [mass]
    if k == mass:
        return [1] * mass
    cuts = np.sort(rng.choice(np.arange(1, mass), size=k - 1, replace=False))
    return np.diff(np.concatenate(([0], cuts, [mass]))).tolist()


def _random_active_moves(active_sizes, rng: np.random.Generator) -> list[int]:
    state = _MovablePoints(active_sizes)
    m = len(state.owner)
    n_moves = int(rng.integers(1, min(m, 64) + 1))
    for pt, u in zip(rng.integers(0, m, size=n_moves).tolist(), rng.random(n_moves).tolist()):
        state.move(pt, u)
    return [s for s in state.sizes if s > 0]


def confined_reassignment_stability(p, active, trials: int, seed,
                                    strict: bool = True) -> PerturbationReport:
    """Random perturbations that touch only the ``active`` clusters.

    Half of the trials apply a few single-point moves among active clusters
    (fresh clusters allowed), half re-split the whole active mass into a
    random composition; the first two trials are the extremes, merging all
    active mass into one cluster and shattering it into singletons. Inactive
    clusters are never modified. The bound is ``mu * (2 - mu)`` with ``mu``
    the active mass fraction.
    """
    p = _as_partition(p)
    _require_integral(p)
    active = sorted(set(int(i) for i in active))
    if not active:
        raise EmptyActiveSetError("active cluster set is empty")
    if active[0] < 0 or active[-1] >= p.k:
        raise IndexOutOfRangeError(f"active indices must lie in [0, {p.k})")
    if trials < 1:
        raise OutOfRangeError("trials must be >= 1")
    rng = _rng(seed)
    sizes = [int(s) for s in p.sizes]
    active_set = set(active)
    inactive = [s for i, s in enumerate(sizes) if i not in active_set]
    active_sizes = [sizes[i] for i in active]
    mass = sum(active_sizes)
    mu = mass / p.total
    bound = mu * (2.0 - mu)
    base = mas(p)
    worst, witnesses = 0.0, []
    for t in range(trials):
        if t == 0:
            new_active, what = [mass], "merge active mass into one cluster"
        elif t == 1:
            new_active, what = [1] * mass, "shatter active mass into singletons"
        elif t % 2 == 0:
            new_active = _random_active_moves(active_sizes, rng)
            what = "random single-point moves within active set"
        else:
            new_active = _random_resplit(mass, rng)
            what = f"re-split active mass into {len(new_active)} parts"
        delta = abs(mas(partition_from_sizes(inactive + new_active)) - base)
        if delta > worst:
            worst = delta
            witnesses = [(f"trial {t}: {what}", delta)]
    report = PerturbationReport(
        proposition="confined",
        base_mas=base,
        max_observed_delta=worst,
        bound=bound,
        passed=worst <= bound + FLOAT_SLACK,
        witnesses=witnesses,
        trials=trials,
    )
    return _finish(report, strict)


def check_scale_invariance(p, r: float, tol: float = 1e-10, strict: bool = True) -> float:
    """``|MAS(r * sizes) - MAS(sizes)|``."""
    p = _as_partition(p)
    if not math.isfinite(r) or r <= 0.0:
        raise OutOfRangeError(f"scale factor must be positive and finite, got {r!r}")
    delta = abs(mas(p.scaled(r)) - mas(p))
    if strict and delta > tol:
        raise BoundViolation(f"scaling by {r!r} moved MAS by {delta!r}")
    return delta
