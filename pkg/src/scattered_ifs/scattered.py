"""Scattered compact subsets of the line.

Two families live here:

* the sets ``K_alpha`` and ``L_alpha`` in ``[0, 1]``, homeomorphic to
  ``w^alpha + 1`` and built from blocks ``s_n(I)`` with
  ``s_n(x) = (x + 1) / r^n`` accumulating at 0;
* the convergent sequence ``K = {0} u F_1 u F_2 u ...`` that is not the
  attractor of any IFS, and the "bad" embeddings built from it.

Infinite sets are materialised through a :class:`Truncation`.  At nesting
depth ``d`` a node keeps the blocks ``n <= max_block - d``; a node at depth
``max_depth`` (or with no block budget left) contributes only its own
base point.  Every truncation is therefore a subset of the true set, and
enlarging either parameter gives a superset.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .ordinals import Ordinal, add, theorem_sequence
from .pointset import PointSet, Rational, as_fraction, format_rational

__all__ = [
    "Truncation",
    "SpaceSpec",
    "Address",
    "materialize",
    "walk",
    "ranked_points",
    "member",
    "block_index",
    "block_child",
    "rank_of",
    "height_of",
    "is_topological_attractor",
    "classify_height",
    "counterexample_params",
    "counterexample_block",
    "counterexample_set",
    "counterexample_member",
    "counterexample_block_of",
    "block_bounds",
    "bad_embedding",
    "bad_embedding_blocks",
    "star_condition",
    "copy_pieces",
    "n_copies",
    "geometric_sequence",
    "load_spec",
    "dump_spec",
]

KINDS = ("K", "L", "CounterexampleK", "BadEmbedding", "Copies")

Address = Tuple[int, ...]


@dataclass(frozen=True)
class Truncation:
    max_block: int
    max_depth: int

    def __post_init__(self):
        if self.max_block < 1:
            raise ValueError("truncation needs max_block >= 1")
        if self.max_depth < 0:
            raise ValueError("truncation needs max_depth >= 0")

    def coarser(self, step: int = 1) -> "Truncation":
        return Truncation(max(1, self.max_block - step), max(0, self.max_depth - step))

    def __le__(self, other: "Truncation") -> bool:
        return self.max_block <= other.max_block and self.max_depth <= other.max_depth

    def __lt__(self, other: "Truncation") -> bool:
        return self <= other and self != other

    def __str__(self):
        return f"(N={self.max_block}, D={self.max_depth})"


@dataclass(frozen=True)
class SpaceSpec:
    """Symbolic description of a scattered space.

    ``K``/``L`` need ``alpha``, ``r > 3`` and the ambient ``delta`` whose
    ladder system fixes the sequences ``alpha_n``.  ``BadEmbedding`` uses
    ``alpha`` (copies of ``w^alpha + 1``), ``blocks`` and ``r``.  ``Copies``
    wraps ``base`` with ``copies``, ``gap`` and an optional ``diameter``.
    """

    kind: str
    alpha: Optional[Ordinal] = None
    r: Optional[Fraction] = None
    delta: Optional[Ordinal] = None
    blocks: Optional[int] = None
    base: Optional["SpaceSpec"] = None
    copies: int = 1
    gap: Optional[Fraction] = None
    diameter: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        for name in ("alpha", "delta"):
            v = getattr(self, name)
            if v is not None and not isinstance(v, Ordinal):
                object.__setattr__(self, name, Ordinal.of(v))
        for name in ("r", "gap", "diameter"):
            v = getattr(self, name)
            if v is not None and not isinstance(v, Fraction):
                object.__setattr__(self, name, as_fraction(v))
        if self.kind in ("K", "L", "BadEmbedding"):
            if self.alpha is None:
                raise ValueError(f"kind {self.kind} needs alpha")
            if self.r is None:
                object.__setattr__(self, "r", Fraction(4))
            if self.r <= 3:
                raise ValueError(f"r must exceed 3, got {self.r}")
        if self.kind in ("K", "L"):
            if self.delta is None:
                default = self.alpha.predecessor() if (self.kind == "K" and self.alpha.is_successor()) else self.alpha
                object.__setattr__(self, "delta", default)
            bound = add(self.delta, 1) if self.kind == "K" else self.delta
            if self.alpha > bound:
                raise ValueError(f"{self.kind}_alpha needs alpha <= {bound}, got {self.alpha}")
        if self.kind == "BadEmbedding":
            if self.blocks is None or self.blocks < 1:
                raise ValueError("BadEmbedding needs blocks >= 1")
        if self.kind == "Copies":
            if self.base is None or self.gap is None:
                raise ValueError("Copies needs base and gap")
            if self.copies < 1:
                raise ValueError("Copies needs copies >= 1")

    @classmethod
    def K(cls, alpha, r: Rational = 4, delta=None) -> "SpaceSpec":
        return cls("K", alpha=alpha, r=r, delta=delta)

    @classmethod
    def L(cls, alpha, r: Rational = 4, delta=None) -> "SpaceSpec":
        return cls("L", alpha=alpha, r=r, delta=delta)

    @classmethod
    def counterexample(cls) -> "SpaceSpec":
        return cls("CounterexampleK")

    @property
    def node(self) -> Tuple[str, Ordinal]:
        return _normal_node(self.kind, self.alpha)


# -- K_alpha / L_alpha recursion -------------------------------------------


def _normal_node(kind: str, alpha: Ordinal) -> Tuple[str, Ordinal]:
    # K at a limit is L at the same ordinal
    if kind == "K" and alpha.is_limit():
        return "L", alpha
    return kind, alpha


def block_child(node: Tuple[str, Ordinal], n: int, delta: Ordinal) -> Optional[Tuple[str, Ordinal]]:
    """The set placed in block ``s_n(I)`` of ``node``, or None when ``node`` is a point."""
    kind, alpha = node
    if alpha.is_zero():
        return None
    if kind == "K":
        # alpha is a successor here
        return _normal_node("K", alpha.predecessor())
    if alpha.is_successor():
        a_n = theorem_sequence(delta, alpha, n)
        child = a_n if a_n < alpha else alpha.predecessor()
    else:
        child = theorem_sequence(delta, alpha, n)
    return _normal_node("L", child)


def walk(spec: SpaceSpec, t: Truncation) -> Iterator[Tuple[Fraction, Ordinal, Address]]:
    """Yield ``(point, rank, address)`` for every point of the truncation.

    Each point is the base point (image of 0) of exactly one nested copy;
    its Cantor-Bendixson rank is that copy's ordinal.
    """
    if spec.kind not in ("K", "L"):
        raise ValueError(f"walk needs kind K or L, got {spec.kind}")
    r, delta = spec.r, spec.delta
    stack = [(spec.node, Fraction(0), Fraction(1), ())]
    while stack:
        node, origin, scale, address = stack.pop()
        yield origin, node[1], address
        depth = len(address)
        if depth >= t.max_depth:
            continue
        for n in range(1, t.max_block - depth + 1):
            child = block_child(node, n, delta)
            if child is None:
                break
            step = scale / r**n
            stack.append((child, origin + step, step, address + (n,)))


def materialize(spec: SpaceSpec, t: Truncation) -> PointSet:
    """Exact finite subset of the space described by ``spec``."""
    if spec.kind in ("K", "L"):
        return PointSet(p for p, _, _ in walk(spec, t))
    if spec.kind == "CounterexampleK":
        return counterexample_set(t.max_block)
    if spec.kind == "BadEmbedding":
        return bad_embedding(spec.alpha, spec.blocks, t, r=spec.r)
    return n_copies(spec.base, spec.copies, spec.gap, diameter=spec.diameter, truncation=t)


def ranked_points(spec: SpaceSpec, t: Truncation) -> List[Tuple[Fraction, Ordinal]]:
    """Materialised points paired with their Cantor-Bendixson ranks, ascending."""
    if spec.kind in ("K", "L"):
        return sorted((p, rank) for p, rank, _ in walk(spec, t))
    if spec.kind == "CounterexampleK":
        return [(p, Ordinal.of(1 if p == 0 else 0)) for p in counterexample_set(t.max_block)]
    if spec.kind == "BadEmbedding":
        base_spec = SpaceSpec.K(spec.alpha, r=spec.r)
        ranks = {p: rank for p, rank, _ in walk(base_spec, t)}
        base = PointSet(ranks)
        out = [(Fraction(0), add(spec.alpha, 1))]
        for n in range(1, spec.blocks + 1):
            blk = counterexample_block(n)
            for g in blk.points:
                place = _centring(base, g, blk.a / (3 * blk.k))
                out.extend((place(p), ranks[p]) for p in base)
        return sorted(out)
    inner = dict(ranked_points(spec.base, t))
    pieces, offsets = copy_pieces(PointSet(inner), spec.copies, spec.gap, diameter=spec.diameter)
    base = pieces[0]
    back = dict(zip(base, PointSet(inner)))
    return sorted((p + o, inner[back[p]]) for o in offsets for p in base)


def block_index(x: Fraction, r: Fraction) -> Optional[int]:
    """The ``n >= 1`` with ``x`` in ``s_n(I) = [1/r^n, 2/r^n]``, else None."""
    if x <= 0:
        return None
    n, scale = 1, 1 / r
    while scale > x:
        n += 1
        scale /= r
    return n if x <= 2 * scale else None


def member(spec: SpaceSpec, x: Rational) -> bool:
    """Exact membership in the full (untruncated) ``K_alpha`` or ``L_alpha``."""
    if spec.kind == "CounterexampleK":
        return counterexample_member(x)
    if spec.kind not in ("K", "L"):
        raise ValueError(f"member needs kind K or L, got {spec.kind}")
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} lies outside [0, 1]")
    r, delta = spec.r, spec.delta
    node = spec.node
    while True:
        if x == 0:
            return True
        n = block_index(x, r)
        if n is None:
            return False
        node = block_child(node, n, delta)
        if node is None:
            return False
        x = x * r**n - 1


def rank_of(spec: SpaceSpec, address: Sequence[int]) -> Ordinal:
    """Cantor-Bendixson rank of the base point of the addressed copy."""
    if spec.kind not in ("K", "L"):
        raise ValueError(f"rank_of needs kind K or L, got {spec.kind}")
    node = spec.node
    for i, n in enumerate(address):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"invalid address component {n!r} at {i}")
        node = block_child(node, n, spec.delta)
        if node is None:
            raise ValueError(f"address {tuple(address)} descends below an isolated point")
    return node[1]


def height_of(spec: SpaceSpec) -> Ordinal:
    if spec.kind in ("K", "L"):
        return spec.alpha
    if spec.kind == "CounterexampleK":
        return Ordinal.of(1)
    if spec.kind == "BadEmbedding":
        return add(spec.alpha, 1)
    return height_of(spec.base)


def classify_height(height: Ordinal) -> Tuple[bool, str]:
    height = Ordinal.of(height)
    if height.is_zero():
        return True, "finite space: every finite set is an IFS-attractor (height 0 treated as attractor)"
    if height.is_successor():
        return True, f"successor height {height}"
    return False, f"limit height {height}: never a topological IFS-attractor"


def is_topological_attractor(spec: Union[SpaceSpec, Ordinal, int, str]) -> bool:
    """True iff the height is a successor ordinal; finite spaces count as attractors."""
    h = height_of(spec) if isinstance(spec, SpaceSpec) else Ordinal.of(spec)
    return classify_height(h)[0]


# -- the convergent sequence K -----------------------------------------------


@lru_cache(maxsize=None)
def _k_and_prefix(n: int) -> Tuple[int, int]:
    """``(k_n, k_1 + ... + k_n)``."""
    if n == 1:
        return 1, 1
    k_prev, total = _k_and_prefix(n - 1)
    k = n * total
    return k, total + k


def counterexample_params(n: int) -> Tuple[Fraction, int, Fraction]:
    """``(a_n, k_n, shift_n)`` with ``a_n = 1/(3 2^(n-1))``, ``k_n = n (k_1 + ... + k_{n-1})``."""
    if n < 1:
        raise ValueError("blocks are indexed from 1")
    for m in range(1, n):
        _k_and_prefix(m)
    a = Fraction(1, 3 * 2 ** (n - 1))
    return a, _k_and_prefix(n)[0], Fraction(1, 2 ** (n - 1))


def block_bounds(n: int) -> Tuple[Fraction, Fraction]:
    """``(min F_n, max F_n)`` without materialising the block."""
    a, k, shift = counterexample_params(n)
    return shift, shift + (k - 1) * a / k


@dataclass(frozen=True)
class CounterexampleBlock:
    n: int
    a: Fraction
    k: int
    shift: Fraction
    points: PointSet


def counterexample_block(n: int) -> CounterexampleBlock:
    a, k, shift = counterexample_params(n)
    step = a / k
    return CounterexampleBlock(n, a, k, shift, PointSet(shift + i * step for i in range(k)))


def counterexample_set(N: int) -> PointSet:
    if N < 1:
        raise ValueError("N must be >= 1")
    pts = [Fraction(0)]
    for n in range(1, N + 1):
        pts.extend(counterexample_block(n).points)
    return PointSet(pts)


def counterexample_block_of(x: Rational) -> Optional[int]:
    """Index ``n`` of the block ``F_n`` containing ``x``, 0 for ``x = 0``, None otherwise."""
    x = as_fraction(x)
    if x == 0:
        return 0
    if not 0 < x <= 1:
        return None
    n, shift = 1, Fraction(1)
    while shift > x:
        n += 1
        shift /= 2
    a, k, _ = counterexample_params(n)
    i = (x - shift) * k / a
    if i.denominator == 1 and 0 <= i < k:
        return n
    return None


def counterexample_member(x: Rational) -> bool:
    return counterexample_block_of(x) is not None


# -- embeddings built from K -------------------------------------------------


def _centring(copy: PointSet, centre: Fraction, width: Fraction):
    """Affine map taking ``copy`` to diameter ``width`` with its midpoint at ``centre``."""
    d = copy.diam()
    if d == 0:
        return lambda p: centre
    scale = width / d
    mid = (copy.min + copy.max) / 2
    return lambda p: centre + (p - mid) * scale


def bad_embedding_blocks(alpha, N: int, t: Truncation, r: Rational = 4) -> List[PointSet]:
    """Blocks ``F_1..F_N`` where every point of ``F_n`` is replaced by a copy of ``w^alpha + 1``.

    Each copy is a truncated ``K_alpha`` shrunk to diameter ``a_n / (3 k_n)``
    and centred on the original grid point.
    """
    alpha = Ordinal.of(alpha)
    if N < 1:
        raise ValueError("N must be >= 1")
    base = materialize(SpaceSpec.K(alpha, r=r), t)
    blocks = []
    for n in range(1, N + 1):
        blk = counterexample_block(n)
        width = blk.a / (3 * blk.k)
        pts: List[Fraction] = []
        for g in blk.points:
            place = _centring(base, g, width)
            pts.extend(place(p) for p in base)
        blocks.append(PointSet(pts))
    for n, ok, diam, dist in star_condition(blocks):
        if not ok:
            raise ValueError(f"scaling infeasible: diam F_{n} = {diam} > dist = {dist}")
    return blocks


def star_condition(blocks: Sequence[PointSet]) -> List[Tuple[int, bool, Fraction, Fraction]]:
    """``diam(F_n) <= dist(F_n, F_{n+1})`` for consecutive blocks (blocks ordered by n)."""
    out = []
    for n, (cur, nxt) in enumerate(zip(blocks, blocks[1:]), start=1):
        diam, dist = cur.diam(), cur.dist(nxt)
        out.append((n, diam <= dist, diam, dist))
    return out


def bad_embedding(alpha, N: int, t: Truncation, r: Rational = 4) -> PointSet:
    pts = [Fraction(0)]
    for blk in bad_embedding_blocks(alpha, N, t, r=r):
        pts.extend(blk)
    return PointSet(pts)


def copy_pieces(base, n: int, gap: Rational, diameter: Optional[Rational] = None,
                truncation: Optional[Truncation] = None) -> Tuple[List[PointSet], List[Fraction]]:
    """Translated isometric copies of ``base`` and their offsets from the first copy."""
    if isinstance(base, SpaceSpec):
        if truncation is None:
            raise ValueError("a truncation is needed to materialise a SpaceSpec")
        base = materialize(base, truncation)
    base = PointSet(base)
    if not base:
        raise ValueError("cannot copy an empty set")
    if n < 1:
        raise ValueError("n must be >= 1")
    gap = as_fraction(gap)
    if diameter is not None:
        diameter = as_fraction(diameter)
        d = base.diam()
        if d == 0:
            raise ValueError("cannot rescale a single point")
        base = base.affine(diameter / d, base.min - base.min * diameter / d)
    d = base.diam()
    if n > 1 and gap <= d:
        raise ValueError(f"gap {gap} must exceed the copy diameter {d}")
    offsets = [k * (d + gap) for k in range(n)]
    return [base.translate(o) for o in offsets], offsets


def n_copies(base, n: int, gap: Rational, diameter: Optional[Rational] = None,
             truncation: Optional[Truncation] = None) -> PointSet:
    pieces, _ = copy_pieces(base, n, gap, diameter=diameter, truncation=truncation)
    out: List[Fraction] = []
    for p in pieces:
        out.extend(p)
    return PointSet(out)


def geometric_sequence(J: int, top: Rational = 1, offset: Rational = 0) -> PointSet:
    """``offset + {0} u {top / 2^j : 0 <= j <= J}``."""
    top, offset = as_fraction(top), as_fraction(offset)
    return PointSet([offset] + [offset + top / 2**j for j in range(J + 1)])


# -- spec files ---------------------------------------------------------------


def dump_spec(spec: SpaceSpec, truncation: Optional[Truncation] = None) -> str:
    def encode(s: SpaceSpec) -> dict:
        out = {"kind": s.kind}
        if s.alpha is not None:
            out["alpha"] = str(s.alpha)
        if s.r is not None:
            out["r"] = format_rational(s.r)
        if s.delta is not None:
            out["delta"] = str(s.delta)
        if s.kind == "BadEmbedding":
            out["blocks"] = s.blocks
        if s.kind == "Copies":
            out["base"] = encode(s.base)
            out["copies"] = s.copies
            out["gap"] = format_rational(s.gap)
            if s.diameter is not None:
                out["diameter"] = format_rational(s.diameter)
        return out

    data = encode(spec)
    if truncation is not None:
        data["truncation"] = {"N": truncation.max_block, "D": truncation.max_depth}
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def load_spec(text: str) -> Tuple[SpaceSpec, Optional[Truncation]]:
    data = json.loads(text)

    def decode(d: dict) -> SpaceSpec:
        kw = {"kind": d["kind"]}
        for key in ("alpha", "delta"):
            if key in d:
                kw[key] = Ordinal.of(d[key])
        for key in ("r", "gap", "diameter"):
            if key in d:
                kw[key] = as_fraction(d[key])
        if "blocks" in d:
            kw["blocks"] = int(d["blocks"])
        if "copies" in d:
            kw["copies"] = int(d["copies"])
        if "base" in d:
            kw["base"] = decode(d["base"])
        return SpaceSpec(**kw)

    t = data.get("truncation")
    trunc = Truncation(int(t["N"]), int(t["D"])) if t else None
    return decode(data), trunc
