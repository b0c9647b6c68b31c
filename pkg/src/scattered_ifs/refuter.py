"""Exact checks on the convergent sequence ``K`` and refutation of candidate IFSs.

A weak contraction of ``K`` into itself either has finite image or pushes
every block ``F_n`` strictly towards 0.  Together with the growth
``k_n = n (k_1 + ... + k_{n-1})`` of the block sizes this rules out every
finite IFS.  The functions below test both facts at truncation scale.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .maps import Affine, Ifs, MapExpr
from .pointset import PointSet, format_rational
from .scattered import (block_bounds, counterexample_block, counterexample_block_of,
                        counterexample_member, counterexample_params, counterexample_set)

__all__ = [
    "InvariantRow",
    "InvariantReport",
    "check_counterexample_invariants",
    "Dichotomy",
    "classify_map",
    "counting_refutation",
    "RefutationReport",
    "refute_candidate_ifs",
]


@dataclass(frozen=True)
class InvariantRow:
    n: int
    a: Fraction
    k: int
    ratio: Fraction  # a_n / k_n
    diam: Fraction
    dist: Fraction  # dist(F_n, F_{n+1})

    @property
    def margin(self) -> Fraction:
        return self.dist - self.a


@dataclass
class InvariantReport:
    rows: List[InvariantRow]
    ratio_decreasing: bool
    dist_decreasing: bool
    diam_le_a_lt_dist: bool

    @property
    def passed(self) -> bool:
        return self.ratio_decreasing and self.dist_decreasing and self.diam_le_a_lt_dist

    def to_text(self) -> str:
        lines = ["n k_n a_n diam dist margin"]
        for r in self.rows:
            lines.append(" ".join([str(r.n), str(r.k)] + [format_rational(v) for v in (r.a, r.diam, r.dist, r.margin)]))
        lines.append("pass: " + ("true" if self.passed else "false"))
        return "\n".join(lines) + "\n"


def _row(n: int) -> InvariantRow:
    a, k, _ = counterexample_params(n)
    lo, hi = block_bounds(n)
    _, next_hi = block_bounds(n + 1)
    return InvariantRow(n, a, k, a / k, hi - lo, lo - next_hi)


def check_counterexample_invariants(N: int) -> InvariantReport:
    """Exact check of the three properties of the blocks ``F_1..F_N``.

    Uses the closed-form block bounds, so large ``N`` costs nothing even
    though ``k_n`` grows factorially.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    rows = [_row(n) for n in range(1, N + 2)]
    shown = rows[:N]
    ratio = all(p.ratio > q.ratio for p, q in zip(rows, rows[1:]))
    dist = all(p.dist > q.dist for p, q in zip(rows, rows[1:]))
    third = all(r.diam <= r.a < r.dist for r in shown)
    return InvariantReport(shown, ratio, dist, third)


@dataclass
class Dichotomy:
    verdict: str  # "finite_image" | "forward_shifting" | "neither"
    blocks: List[int] = field(default_factory=list)
    witnesses: List[Fraction] = field(default_factory=list)
    image_sizes: Tuple[int, int] = (0, 0)
    note: str = ""


def classify_map(m: MapExpr, N: int) -> Dichotomy:
    """Empirical placement of ``m`` in the weak-contraction dichotomy on ``F_1..F_N``.

    ``finite_image`` is the surrogate "the image does not grow from N to N+1
    blocks"; ``forward_shifting`` means every tested ``F_n`` lands in
    ``K \\ (F_1 u ... u F_n)``; ``neither`` means ``m`` is not a self-map of the
    tested part of ``K``, so the dichotomy says nothing about it.
    """
    if m.lipschitz() >= 1:
        raise ValueError(f"{m.text()} is not a contraction (bound {m.lipschitz()})")
    small, large = counterexample_set(N), counterexample_set(N + 1)
    img_small = PointSet(m(x) for x in small)
    sizes = (len(img_small), len(PointSet(m(x) for x in large)))
    escapes = [y for y in img_small if not counterexample_member(y)]
    if escapes:
        return Dichotomy("neither", witnesses=escapes, image_sizes=sizes,
                         note="image leaves K; the dichotomy only covers self-maps of K")
    if sizes[0] == sizes[1]:
        return Dichotomy("finite_image", witnesses=list(img_small), image_sizes=sizes,
                         note="empirical: image size stable from N to N+1 blocks")
    bad_blocks, bad_points = [], []
    for n in range(1, N + 1):
        for x in counterexample_block(n).points:
            b = counterexample_block_of(m(x))
            if b != 0 and b <= n:
                bad_blocks.append(n)
                bad_points.append(m(x))
                break
    if bad_blocks:
        return Dichotomy("neither", blocks=bad_blocks, witnesses=bad_points, image_sizes=sizes,
                         note="a block is not pushed towards 0")
    return Dichotomy("forward_shifting", blocks=list(range(1, N + 1)), image_sizes=sizes,
                     note=f"checked on F_1..F_{N}")


def counting_refutation(m: int) -> int:
    """Smallest ``n >= 2`` with ``k_n > m (k_1 + ... + k_{n-1})``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 2
    while True:
        _, k, _ = counterexample_params(n)
        prefix = sum(counterexample_params(i)[1] for i in range(1, n))
        if k > m * prefix:
            return n
        n += 1


@dataclass
class RefutationReport:
    maps: List[str]
    verdicts: List[Dichotomy]
    deficit: List[Tuple[int, int, int, bool]]  # (n, |F_n|, bound, k_n > bound)
    uncovered: List[Fraction]
    certified_at: Optional[int]
    N: int

    @property
    def refuted(self) -> bool:
        return bool(self.uncovered)

    @property
    def status(self) -> str:
        return "refuted" if self.refuted else "inconclusive"

    def to_text(self) -> str:
        lines = [f"blocks: {self.N}", f"status: {self.status}"]
        for text, d in zip(self.maps, self.verdicts):
            lines.append(f"map {text}: {d.verdict}" + (f" ({d.note})" if d.note else ""))
        lines.append("deficit: n |F_n| bound exceeded")
        for n, k, bound, over in self.deficit:
            lines.append(f"  {n} {k} {bound} {'yes' if over else 'no'}")
        if self.certified_at is not None:
            lines.append(f"counting certificate at n = {self.certified_at}")
        lines.append("uncovered: " + " ".join(format_rational(x) for x in self.uncovered))
        return "\n".join(lines) + "\n"


def _covered(m: MapExpr, x: Fraction, fallback: PointSet) -> bool:
    if isinstance(m, Affine):
        if m.slope == 0:
            return x == m.intercept
        return counterexample_member((x - m.intercept) / m.slope)
    return x in fallback


def refute_candidate_ifs(ifs, N: int) -> RefutationReport:
    """Look for points of ``F_1..F_N`` that no map of ``ifs`` hits from ``K``.

    Affine maps are inverted exactly against the full ``K``; other maps are
    applied to the truncation with ``N + 1`` blocks.  A nonempty ``uncovered``
    list refutes ``K = union f_i(K)`` for this candidate.
    """
    maps = list(ifs.maps if isinstance(ifs, Ifs) else ifs)
    if not maps:
        raise ValueError("empty candidate IFS")
    if N < 1:
        raise ValueError("N must be >= 1")
    verdicts = [classify_map(m, N) for m in maps]
    target = counterexample_set(N)
    wider = counterexample_set(N + 1)
    fallback = {id(m): PointSet(m(x) for x in wider) for m in maps if not isinstance(m, Affine)}
    uncovered = [x for x in target
                 if not any(_covered(m, x, fallback.get(id(m), PointSet())) for m in maps)]
    moving = sum(1 for d in verdicts if d.verdict != "finite_image")
    residue = PointSet(y for m, d in zip(maps, verdicts) if d.verdict == "finite_image"
                       for y in d.witnesses)
    deficit, prefix = [], 0
    for n in range(1, N + 1):
        k = counterexample_params(n)[1]
        bound = moving * prefix + len(residue)
        deficit.append((n, k, bound, k > bound))
        prefix += k
    certified = counting_refutation(moving) if moving and not residue else None
    return RefutationReport([m.text() for m in maps], verdicts, deficit, uncovered, certified, N)
