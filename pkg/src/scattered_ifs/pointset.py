"""Finite sorted sets of exact rationals, and their text serialisation."""
from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

__all__ = [
    "Rational",
    "as_fraction",
    "format_rational",
    "PointSet",
    "HEADER",
    "read_pointset",
    "write_pointset",
]

Rational = Union[Fraction, int, str]

HEADER = "# scattered-pointset v1"


def as_fraction(value) -> Fraction:
    """Exact conversion; floats go through their shortest repr (``0.01 -> 1/100``)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    """Lowest-terms ``num/den``; zero is ``0/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class PointSet:
    """Strictly increasing tuple of Fractions; duplicates are dropped on construction."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Rational] = ()):
        self.points: Tuple[Fraction, ...] = tuple(sorted(set(as_fraction(p) for p in points)))

    @classmethod
    def _trusted(cls, points: Tuple[Fraction, ...]) -> "PointSet":
        obj = cls.__new__(cls)
        obj.points = points
        return obj

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __bool__(self) -> bool:
        return bool(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, x) -> bool:
        x = as_fraction(x)
        i = bisect.bisect_left(self.points, x)
        return i < len(self.points) and self.points[i] == x

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self.points == other.points
        return NotImplemented

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        inner = ", ".join(format_rational(p) for p in self.points[:8])
        more = ", ..." if len(self.points) > 8 else ""
        return f"PointSet([{inner}{more}], n={len(self.points)})"

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.points + tuple(other))

    def issubset(self, other: "PointSet") -> bool:
        return all(p in other for p in self.points)

    def difference(self, other: "PointSet") -> "PointSet":
        return PointSet._trusted(tuple(p for p in self.points if p not in other))

    @property
    def min(self) -> Fraction:
        return self.points[0]

    @property
    def max(self) -> Fraction:
        return self.points[-1]

    def diam(self) -> Fraction:
        if not self.points:
            return Fraction(0)
        return self.points[-1] - self.points[0]

    def dist(self, other: "PointSet") -> Fraction:
        """Exact ``inf |a - b|`` via a merge of the two sorted sequences."""
        a, b = self.points, tuple(other)
        if not a or not b:
            raise ValueError("distance to an empty set is undefined")
        i = j = 0
        best = None
        while i < len(a) and j < len(b):
            d = abs(a[i] - b[j])
            if best is None or d < best:
                best = d
            if a[i] < b[j]:
                i += 1
            else:
                j += 1
        return best

    def nearest_distance(self, x: Fraction) -> Fraction:
        pts = self.points
        i = bisect.bisect_left(pts, x)
        cands = [abs(pts[k] - x) for k in (i - 1, i) if 0 <= k < len(pts)]
        return min(cands)

    def translate(self, t: Rational) -> "PointSet":
        t = as_fraction(t)
        return PointSet._trusted(tuple(p + t for p in self.points))

    def affine(self, slope: Rational, intercept: Rational) -> "PointSet":
        slope, intercept = as_fraction(slope), as_fraction(intercept)
        return PointSet(slope * p + intercept for p in self.points)


def write_pointset(points: PointSet) -> str:
    lines = [HEADER] + [format_rational(p) for p in points]
    return "\n".join(lines) + "\n"


def read_pointset(text: str) -> PointSet:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ValueError(f"missing header {HEADER!r}")
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(Fraction(line))
        except ValueError:
            raise ValueError(f"line {lineno}: not a rational: {line!r}") from None
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("points must be strictly ascending")
    return PointSet._trusted(tuple(values))
