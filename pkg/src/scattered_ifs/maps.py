"""Exact evaluation of the contractions that realise ``K_{delta+1}`` as an attractor.

The family is built from ``s_n(x) = (x + 1) / r^n``, ``phi(x) = x / r``, the
piecewise maps ``g_alpha`` / ``f_alpha`` defined by recursion on ``alpha``,
and ``phi_top = s_1 o f_delta``.  Every value is a :class:`~fractions.Fraction`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .ordinals import Ordinal, theorem_sequence
from .pointset import PointSet, Rational, as_fraction, format_rational
from .scattered import block_index

__all__ = [
    "MapContext",
    "MapExpr",
    "Affine",
    "ScaleShift",
    "Phi",
    "G",
    "F",
    "PhiTop",
    "Compose",
    "ConstOutside",
    "identity",
    "const",
    "evaluate",
    "image",
    "lipschitz_bound",
    "empirical_lipschitz",
    "Ifs",
    "ifs_for",
    "radius_for_epsilon",
    "parse_map",
    "parse_maps",
]


@dataclass(frozen=True)
class MapContext:
    r: Fraction
    delta: Ordinal

    def __post_init__(self):
        if not isinstance(self.r, Fraction):
            object.__setattr__(self, "r", as_fraction(self.r))
        if not isinstance(self.delta, Ordinal):
            object.__setattr__(self, "delta", Ordinal.of(self.delta))
        if self.r <= 3:
            raise ValueError(f"r must exceed 3, got {self.r}")


def _check_unit(x: Fraction) -> Fraction:
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} lies outside [0, 1]")
    return x


def _g0(r: Fraction, x: Fraction) -> Fraction:
    if x <= 2 / r:
        return Fraction(0)
    return r / (r - 2) * (x - 2 / r)


def _g(ctx: MapContext, alpha: Ordinal, x: Fraction) -> Fraction:
    if alpha.is_zero():
        return _g0(ctx.r, x)
    if alpha.is_limit():
        return _f(ctx, alpha, x)
    n = block_index(x, ctx.r)
    if n is None:
        return x
    a_n = theorem_sequence(ctx.delta, alpha, n)
    child = a_n if a_n < alpha else alpha.predecessor()
    rn = ctx.r**n
    return (_g(ctx, child, x * rn - 1) + 1) / rn


def _f(ctx: MapContext, alpha: Ordinal, x: Fraction) -> Fraction:
    if alpha.is_zero():
        return _g0(ctx.r, x)
    n = block_index(x, ctx.r)
    if n is None:
        return x
    rn = ctx.r**n
    y = x * rn - 1
    if alpha.is_successor():
        inner = _f(ctx, alpha.predecessor(), y)
    else:
        inner = _g(ctx, theorem_sequence(ctx.delta, alpha, n), y)
    return (inner + 1) / rn


class MapExpr:
    """Base class; subclasses are callable on exact rationals."""

    context: Optional[MapContext] = None

    def __call__(self, x: Rational) -> Fraction:
        raise NotImplementedError

    def lipschitz(self) -> Fraction:
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class Affine(MapExpr):
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", as_fraction(self.slope))
        object.__setattr__(self, "intercept", as_fraction(self.intercept))

    def __call__(self, x):
        return self.slope * as_fraction(x) + self.intercept

    def lipschitz(self):
        return abs(self.slope)

    def text(self):
        return f"affine({format_rational(self.slope)},{format_rational(self.intercept)})"


def identity() -> Affine:
    return Affine(Fraction(1), Fraction(0))


def const(value: Rational) -> Affine:
    return Affine(Fraction(0), as_fraction(value))


@dataclass(frozen=True)
class ScaleShift(MapExpr):
    n: int
    context: MapContext

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"s_n needs n >= 1, got {self.n!r}")

    def __call__(self, x):
        rn = self.context.r**self.n
        return (_check_unit(x) + 1) / rn

    def lipschitz(self):
        return 1 / self.context.r**self.n

    def text(self):
        return f"s({self.n})"


@dataclass(frozen=True)
class Phi(MapExpr):
    context: MapContext

    def __call__(self, x):
        return _check_unit(x) / self.context.r

    def lipschitz(self):
        return 1 / self.context.r

    def text(self):
        return "phi"


@dataclass(frozen=True)
class G(MapExpr):
    alpha: Ordinal
    context: MapContext

    def __post_init__(self):
        object.__setattr__(self, "alpha", Ordinal.of(self.alpha))
        if self.alpha > self.context.delta:
            raise ValueError(f"g_alpha needs alpha <= delta={self.context.delta}, got {self.alpha}")

    def __call__(self, x):
        return _g(self.context, self.alpha, _check_unit(x))

    def lipschitz(self):
        r = self.context.r
        return r / (r - 2)

    def text(self):
        return f"g({self.alpha})"


@dataclass(frozen=True)
class F(MapExpr):
    alpha: Ordinal
    context: MapContext

    def __post_init__(self):
        object.__setattr__(self, "alpha", Ordinal.of(self.alpha))
        if self.alpha > self.context.delta:
            raise ValueError(f"f_alpha needs alpha <= delta={self.context.delta}, got {self.alpha}")

    def __call__(self, x):
        return _f(self.context, self.alpha, _check_unit(x))

    def lipschitz(self):
        r = self.context.r
        return r / (r - 2)

    def text(self):
        return f"f({self.alpha})"


@dataclass(frozen=True)
class PhiTop(MapExpr):
    """``s_1 o f_delta``."""

    context: MapContext

    def __call__(self, x):
        r = self.context.r
        return (_f(self.context, self.context.delta, _check_unit(x)) + 1) / r

    def lipschitz(self):
        return 1 / (self.context.r - 2)

    def text(self):
        return "phitop"


def _shared_context(maps: Sequence[MapExpr]) -> Optional[MapContext]:
    ctxs = {m.context for m in maps if m.context is not None}
    if len(ctxs) > 1:
        raise ValueError("cannot mix maps from different (r, delta) contexts")
    return ctxs.pop() if ctxs else None


@dataclass(frozen=True)
class Compose(MapExpr):
    """``maps[0] o maps[1] o ...``: the last map is applied first."""

    maps: Tuple[MapExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise ValueError("empty composition")
        _shared_context(self.maps)

    @property
    def context(self):
        return _shared_context(self.maps)

    def __call__(self, x):
        x = as_fraction(x)
        for m in reversed(self.maps):
            x = m(x)
        return x

    def lipschitz(self):
        out = Fraction(1)
        for m in self.maps:
            out *= m.lipschitz()
        return out

    def text(self):
        return "compose(" + ",".join(m.text() for m in self.maps) + ")"


@dataclass(frozen=True)
class ConstOutside(MapExpr):
    """``base`` on ``[lo, hi]`` and the constant ``value`` elsewhere.

    ``separation`` is a lower bound on the distance from ``[lo, hi]`` to the
    rest of the space the map acts on; with ``value`` in ``base([lo, hi])`` the
    Lipschitz constant is at most ``max(Lip(base), Lip(base) (hi - lo) / separation)``.
    """

    base: MapExpr
    lo: Fraction
    hi: Fraction
    value: Fraction
    separation: Fraction

    def __post_init__(self):
        for name in ("lo", "hi", "value", "separation"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.separation <= 0:
            raise ValueError("separation must be positive")
        if self.hi < self.lo:
            raise ValueError("empty domain interval")

    @property
    def context(self):
        return self.base.context

    def __call__(self, x):
        x = as_fraction(x)
        if self.lo <= x <= self.hi:
            return self.base(x)
        return self.value

    def lipschitz(self):
        b = self.base.lipschitz()
        return max(b, b * (self.hi - self.lo) / self.separation)

    def text(self):
        args = ",".join(format_rational(v) for v in (self.lo, self.hi, self.value, self.separation))
        return f"const_outside({self.base.text()},{args})"


def evaluate(m: MapExpr, x: Rational) -> Fraction:
    return m(x)


def image(m: MapExpr, s) -> PointSet:
    return PointSet(m(x) for x in s)


def lipschitz_bound(m: MapExpr) -> Fraction:
    return m.lipschitz()


def empirical_lipschitz(m: MapExpr, s) -> Fraction:
    """Largest ``|m(x) - m(y)| / |x - y|`` over distinct pairs of ``s``.

    A chord slope is a convex combination of the slopes between consecutive
    points, so only consecutive pairs of the sorted set are examined.
    """
    pts = PointSet(s).points
    if len(pts) < 2:
        raise ValueError("need at least two points")
    vals = [m(x) for x in pts]
    return max(abs(vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i]) for i in range(len(pts) - 1))


# -- iterated function systems -----------------------------------------------


@dataclass(frozen=True)
class Ifs:
    """Finite family of maps sharing one context, each with structural bound < 1."""

    maps: Tuple[MapExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise ValueError("an IFS needs at least one map")
        _shared_context(self.maps)
        for m in self.maps:
            if m.lipschitz() >= 1:
                raise ValueError(f"{m.text()} has structural Lipschitz bound {m.lipschitz()} >= 1")

    @property
    def context(self) -> Optional[MapContext]:
        return _shared_context(self.maps)

    def bounds(self) -> List[Fraction]:
        return [m.lipschitz() for m in self.maps]

    def max_bound(self) -> Fraction:
        return max(self.bounds())

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def text(self) -> str:
        return ",".join(m.text() for m in self.maps)


def ifs_for(delta, r: Rational) -> Ifs:
    """The two-map system ``{phi, s_1 o f_delta}`` whose attractor is ``K_{delta+1}``."""
    ctx = MapContext(as_fraction(r), Ordinal.of(delta))
    return Ifs((Phi(ctx), PhiTop(ctx)))


def radius_for_epsilon(eps: Rational) -> int:
    """Smallest integer ``r > 3`` with ``1 / (r - 2) < eps``."""
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    # r - 2 > 1/eps
    r = math.floor(1 / eps) + 3
    return max(4, r)


# -- text form ------------------------------------------------------------------

_CALL = re.compile(r"\s*([a-z_]+)\s*(\()?")


def _split_args(body: str) -> List[str]:
    args, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            args.append(body[start:i])
            start = i + 1
    args.append(body[start:])
    return [a.strip() for a in args]


def _matching_paren(text: str, open_at: int) -> int:
    depth = 0
    for i in range(open_at, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ValueError(f"unbalanced parentheses in {text!r}")


def parse_map(text: str, ctx: Optional[MapContext] = None) -> MapExpr:
    """Parse ``phi``, ``phitop``, ``s(3)``, ``g(w+1)``, ``f(2)``, ``affine(1/2,0)``,
    ``const(1)``, ``id``, ``compose(a,b,...)`` and ``const_outside(m,lo,hi,value,sep)``."""
    text = text.strip()
    m = _CALL.match(text)
    if not m:
        raise ValueError(f"cannot parse map {text!r}")
    name = m.group(1)
    if m.group(2):
        close = _matching_paren(text, m.end() - 1)
        if text[close + 1:].strip():
            raise ValueError(f"trailing input in {text!r}")
        args = _split_args(text[m.end():close])
    else:
        if text[m.end():].strip():
            raise ValueError(f"trailing input in {text!r}")
        args = []

    def need_ctx():
        if ctx is None:
            raise ValueError(f"map {name!r} needs an (r, delta) context")
        return ctx

    def arity(k):
        if len(args) != k:
            raise ValueError(f"{name} takes {k} argument(s), got {len(args)}")

    if name == "phi":
        arity(0)
        return Phi(need_ctx())
    if name == "phitop":
        arity(0)
        return PhiTop(need_ctx())
    if name == "id":
        arity(0)
        return identity()
    if name == "s":
        arity(1)
        return ScaleShift(int(args[0]), need_ctx())
    if name in ("g", "f"):
        arity(1)
        cls = G if name == "g" else F
        return cls(Ordinal.of(args[0]), need_ctx())
    if name == "affine":
        arity(2)
        return Affine(as_fraction(args[0]), as_fraction(args[1]))
    if name == "const":
        arity(1)
        return const(args[0])
    if name == "compose":
        return Compose(tuple(parse_map(a, ctx) for a in args))
    if name == "const_outside":
        arity(5)
        return ConstOutside(parse_map(args[0], ctx), *(as_fraction(a) for a in args[1:]))
    raise ValueError(f"unknown map {name!r}")


def parse_maps(text: str, ctx: Optional[MapContext] = None) -> List[MapExpr]:
    """Comma-separated list of maps, e.g. ``"affine(1/2,0),affine(0,1)"``."""
    return [parse_map(a, ctx) for a in _split_args(text) if a]
