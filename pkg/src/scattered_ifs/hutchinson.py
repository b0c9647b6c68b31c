"""Hutchinson operator on finite point sets and attractor checks on truncations.

An identity ``X = f_1(X) u ... u f_m(X)`` between infinite sets is checked in
two halves:

* soundness: every image point of a fine truncation belongs to ``X``
  (decided by an exact membership oracle);
* coverage: every point of a strictly coarser truncation is hit by the image
  of the fine truncation.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

from .maps import (Affine, Compose, ConstOutside, F, G, Ifs, MapContext, MapExpr,
                   ifs_for)
from .ordinals import Ordinal, add
from .pointset import PointSet, format_rational
from .scattered import SpaceSpec, Truncation, materialize, member

__all__ = [
    "Ifs",
    "ifs_for",
    "VerificationReport",
    "apply",
    "iterate",
    "hausdorff",
    "verify_sets",
    "verify_attractor",
    "verify_property_A",
    "verify_property_B",
    "power",
    "union_exponent",
    "union_attractor",
    "restrict_attractor",
]


@dataclass
class VerificationReport:
    identity: str
    t_in: Optional[Truncation] = None
    t_cover: Optional[Truncation] = None
    covered: int = 0
    uncovered: List[Fraction] = field(default_factory=list)
    non_members: List[Fraction] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.uncovered and not self.non_members

    def to_text(self) -> str:
        lines = [
            f"identity: {self.identity}",
            f"t_in: {self.t_in}",
            f"t_cover: {self.t_cover}",
            f"covered: {self.covered}",
            "pass: " + ("true" if self.passed else "false"),
            "uncovered: " + " ".join(format_rational(x) for x in self.uncovered),
            "non_members: " + " ".join(format_rational(x) for x in self.non_members),
        ]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def _maps(ifs) -> Sequence[MapExpr]:
    return ifs.maps if isinstance(ifs, Ifs) else tuple(ifs)


def apply(ifs, s: Iterable) -> PointSet:
    """Hutchinson operator: the union of the images of ``s``."""
    pts = tuple(s)
    return PointSet(m(x) for m in _maps(ifs) for x in pts)


def iterate(ifs, s0: Iterable, k: int) -> PointSet:
    if k < 0:
        raise ValueError("k must be non-negative")
    s = PointSet(s0)
    for _ in range(k):
        s = apply(ifs, s)
    return s


def _one_sided(s: PointSet, t: PointSet) -> Fraction:
    return max(t.nearest_distance(x) for x in s)


def hausdorff(s, t) -> Fraction:
    s, t = PointSet(s), PointSet(t)
    if not s or not t:
        raise ValueError("Hausdorff distance needs nonempty sets")
    return max(_one_sided(s, t), _one_sided(t, s))


def verify_sets(identity: str, ifs, fine: PointSet, coarse: PointSet,
                is_member: Callable[[Fraction], bool],
                t_in: Optional[Truncation] = None,
                t_cover: Optional[Truncation] = None) -> VerificationReport:
    img = apply(ifs, fine)
    report = VerificationReport(identity, t_in, t_cover)
    report.non_members = [y for y in img if not is_member(y)]
    report.uncovered = [x for x in coarse if x not in img]
    report.covered = len(coarse) - len(report.uncovered)
    return report


def _check_pair(t_in: Truncation, t_cover: Truncation):
    if not t_cover < t_in:
        raise ValueError(f"coverage truncation {t_cover} must be strictly coarser than {t_in}")


def verify_attractor(ifs, spec: SpaceSpec, t_in: Truncation, t_cover: Truncation) -> VerificationReport:
    """Check ``spec = union of f(spec)`` for ``f`` in ``ifs`` on the given truncations."""
    _check_pair(t_in, t_cover)
    label = f"attractor {spec.kind}_{spec.alpha}" if spec.alpha is not None else f"attractor {spec.kind}"
    return verify_sets(label, ifs, materialize(spec, t_in), materialize(spec, t_cover),
                       lambda y: 0 <= y <= 1 and member(spec, y), t_in, t_cover)


def verify_property_A(alpha, beta, ctx: MapContext, t_in: Truncation, t_cover: Truncation) -> VerificationReport:
    """``g_alpha(L_beta) = L_alpha`` for ``alpha <= beta <= delta``."""
    alpha, beta = Ordinal.of(alpha), Ordinal.of(beta)
    if alpha > beta:
        raise ValueError(f"property A needs alpha <= beta, got {alpha} > {beta}")
    if beta > ctx.delta:
        raise ValueError(f"property A needs beta <= delta={ctx.delta}")
    _check_pair(t_in, t_cover)
    source = SpaceSpec.L(beta, r=ctx.r, delta=ctx.delta)
    target = SpaceSpec.L(alpha, r=ctx.r, delta=ctx.delta)
    return verify_sets(f"g_{alpha}(L_{beta}) = L_{alpha}", [G(alpha, ctx)],
                       materialize(source, t_in), materialize(target, t_cover),
                       lambda y: member(target, y), t_in, t_cover)


def verify_property_B(alpha, ctx: MapContext, t_in: Truncation, t_cover: Truncation) -> VerificationReport:
    """``f_alpha(K_{alpha+1}) = K_alpha`` for ``alpha <= delta``."""
    alpha = Ordinal.of(alpha)
    if alpha > ctx.delta:
        raise ValueError(f"property B needs alpha <= delta={ctx.delta}")
    _check_pair(t_in, t_cover)
    source = SpaceSpec.K(add(alpha, 1), r=ctx.r, delta=ctx.delta)
    target = SpaceSpec.K(alpha, r=ctx.r, delta=ctx.delta)
    return verify_sets(f"f_{alpha}(K_{add(alpha, 1)}) = K_{alpha}", [F(alpha, ctx)],
                       materialize(source, t_in), materialize(target, t_cover),
                       lambda y: member(target, y), t_in, t_cover)


def power(ifs: Ifs, k: int) -> Ifs:
    """All ``|ifs|^k`` compositions ``f_1 o ... o f_k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return ifs
    return Ifs(tuple(Compose(combo) for combo in itertools.product(ifs.maps, repeat=k)))


def union_exponent(max_bound: Fraction, separation: Fraction) -> int:
    """Smallest ``k >= 1`` with ``max_bound^k < separation / 2`` (separation relative to diam = 1)."""
    if max_bound == 0:
        return 1
    k, b = 1, max_bound
    while not b < separation / 2:
        k += 1
        b *= max_bound
    return k


def _extend(ifs: Ifs, home: PointSet, separation: Fraction) -> List[MapExpr]:
    out = []
    for f in ifs.maps:
        out.append(ConstOutside(f, home.min, home.max, f(home.min), separation))
    return out


def union_attractor(ifs_a: Ifs, a, ifs_b: Ifs, b) -> Ifs:
    """IFS for ``A u B`` from IFSs of two pieces with disjoint hulls.

    Both systems are raised to the power ``k`` at which every map shrinks the
    union below half the gap, then each map is extended by a constant on the
    other piece (the image of the minimum of its home piece).
    """
    a, b = PointSet(a), PointSet(b)
    if not b:
        return ifs_a
    if not a:
        return ifs_b
    if a.max < b.min:
        eps = b.min - a.max
    elif b.max < a.min:
        eps = a.min - b.max
    else:
        raise ValueError("the hulls of the two pieces overlap")
    whole = max(a.max, b.max) - min(a.min, b.min)
    k = union_exponent(max(ifs_a.max_bound(), ifs_b.max_bound()), eps / whole)
    maps = _extend(power(ifs_a, k), a, eps) + _extend(power(ifs_b, k), b, eps)
    return Ifs(tuple(maps))


def restrict_attractor(ifs, pieces: Sequence, translations: Sequence) -> Ifs:
    """IFS for the first piece ``X_0`` of ``X = X_0 u ... u X_{m-1}``.

    ``pieces[j]`` must equal ``pieces[0] + translations[j]`` and the pieces
    must be farther apart than their common diameter.  Returns the maps
    ``f_i o h_j`` for which ``f_i(X_j)`` lands in the hull of ``X_0``.
    """
    pieces = [PointSet(p) for p in pieces]
    if not pieces or len(pieces) != len(translations):
        raise ValueError("need one translation per piece")
    x0 = pieces[0]
    translations = [Fraction(t) for t in translations]
    for j, (p, t) in enumerate(zip(pieces, translations)):
        if p != x0.translate(t):
            raise ValueError(f"piece {j} is not X_0 translated by {t}")
    d = x0.diam()
    for i, j in itertools.combinations(range(len(pieces)), 2):
        if not pieces[i].dist(pieces[j]) > d:
            raise ValueError(f"pieces {i} and {j} are not farther apart than diam(X_0) = {d}")
    chosen = []
    for f in _maps(ifs):
        for j, (p, t) in enumerate(zip(pieces, translations)):
            img = [f(x) for x in p]
            inside = [x0.min <= y <= x0.max for y in img]
            if all(inside):
                chosen.append(f if t == 0 else Compose((f, Affine(Fraction(1), t))))
            elif any(inside):
                raise ValueError(f"{f.text()} splits piece {j} across X_0 and its complement")
    if not chosen:
        raise ValueError("no map sends a piece into X_0")
    return Ifs(tuple(chosen))
