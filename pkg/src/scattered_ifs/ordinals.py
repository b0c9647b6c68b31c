"""Countable ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a finite sum ``w^e1*c1 + w^e2*c2 + ...`` with strictly
decreasing exponents (themselves ordinals) and positive integer coefficients.
Besides comparison and addition the module provides canonical fundamental
sequences and monotone ladder systems, which drive the recursive
constructions in :mod:`scattered_ifs.scattered` and :mod:`scattered_ifs.maps`.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import total_ordering
from typing import NamedTuple, Optional, Tuple, Union

__all__ = [
    "Ordinal",
    "OrdinalSyntaxError",
    "OrdinalKind",
    "ZERO",
    "ONE",
    "OMEGA",
    "compare",
    "add",
    "classify",
    "fundamental_sequence",
    "LadderContext",
    "ladder_context",
    "ladder",
    "theorem_sequence",
    "LadderReport",
    "check_ladder_system",
    "parse_ordinal",
    "print_ordinal",
]

OrdinalLike = Union["Ordinal", int, str]


@total_ordering
class Ordinal:
    """Immutable CNF ordinal.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs.  Integers and
    ordinal strings are accepted wherever an ordinal is expected.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Tuple[Tuple["Ordinal", int], ...] = ()):
        terms = tuple(terms)
        prev = None
        for exp, coeff in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {exp!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError(f"coefficient must be a positive int, got {coeff!r}")
            if prev is not None and not exp < prev:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def of(cls, value: OrdinalLike) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not an ordinal")
        if isinstance(value, int):
            if value < 0:
                raise ValueError("negative integers are not ordinals")
            return cls(((ZERO, value),)) if value else ZERO
        if isinstance(value, str):
            return parse_ordinal(value)
        raise TypeError(f"cannot interpret {value!r} as an ordinal")

    @classmethod
    def omega_power(cls, exponent: OrdinalLike, coeff: int = 1) -> "Ordinal":
        return cls(((cls.of(exponent), coeff),))

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def is_finite(self) -> bool:
        return all(exp.is_zero() for exp, _ in self.terms)

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def predecessor(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        *head, (exp, coeff) = self.terms
        if coeff > 1:
            head.append((exp, coeff - 1))
        return Ordinal(tuple(head))

    def limit_part(self) -> "Ordinal":
        """Largest limit ordinal (or zero) below or equal to ``self``."""
        if self.is_successor():
            return Ordinal(self.terms[:-1])
        return self

    def finite_part(self) -> int:
        return self.terms[-1][1] if self.is_successor() else 0

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        try:
            other = Ordinal.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        try:
            other = Ordinal.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        try:
            other = Ordinal.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        try:
            other = Ordinal.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return add(other, self)

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return print_ordinal(self)

    def __repr__(self):
        return f"Ordinal({print_ordinal(self)!r})"


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: OrdinalLike, b: OrdinalLike) -> int:
    """Return -1, 0 or 1 according to the ordinal order of ``a`` and ``b``."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Ordinal sum ``a + b``; terms of ``a`` below the leading exponent of ``b`` are absorbed."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    if b.is_zero():
        return a
    lead_exp, lead_coeff = b.terms[0]
    head = []
    for exp, coeff in a.terms:
        c = compare(exp, lead_exp)
        if c > 0:
            head.append((exp, coeff))
        elif c == 0:
            lead_coeff += coeff
            break
        else:
            break
    return Ordinal(tuple(head) + ((lead_exp, lead_coeff),) + b.terms[1:])


class OrdinalKind(NamedTuple):
    kind: str  # "zero" | "successor" | "limit"
    predecessor: Optional[Ordinal] = None


def classify(a: OrdinalLike) -> OrdinalKind:
    a = Ordinal.of(a)
    if a.is_zero():
        return OrdinalKind("zero")
    if a.is_successor():
        return OrdinalKind("successor", a.predecessor())
    return OrdinalKind("limit")


def fundamental_sequence(a: OrdinalLike, n: int) -> Ordinal:
    """Canonical increasing sequence converging to the limit ordinal ``a``.

    ``a[0] = 0`` and for ``n >= 1``, writing ``a = g + w^e``:
    ``g + w^(b+1) -> g + w^b * n`` and ``g + w^l -> g + w^(l[n])`` for limit ``l``.
    """
    a = Ordinal.of(a)
    if not a.is_limit():
        raise ValueError(f"fundamental sequences need a limit ordinal, got {a}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return ZERO
    *head, (exp, coeff) = a.terms
    if coeff > 1:
        head.append((exp, coeff - 1))
    base = Ordinal(tuple(head))
    if exp.is_successor():
        pred = exp.predecessor()
        return add(base, Ordinal(((pred, n),)))
    return add(base, Ordinal(((fundamental_sequence(exp, n), 1),)))


def _is_limit_of_limits(a: Ordinal) -> bool:
    # a is a limit not of the form a' + w
    return a.is_limit() and a.terms[-1][0] != ONE


@dataclass(eq=False)
class LadderContext:
    """Monotone ladder system in ``top``, with memoised rungs.

    A successor ``top`` shares the ladder system of its limit part.
    """

    top: Ordinal
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self.top = Ordinal.of(self.top)
        if self.top < OMEGA:
            raise ValueError(f"ladder systems need top >= w, got {self.top}")

    @property
    def limit_top(self) -> Ordinal:
        return self.top.limit_part()

    def rung(self, beta: OrdinalLike, n: int) -> Ordinal:
        return ladder(self, beta, n)


_CONTEXTS: dict = {}
_CONTEXTS_LOCK = threading.Lock()


def ladder_context(top: OrdinalLike) -> LadderContext:
    """Shared (memoised) ladder context for ``top``."""
    top = Ordinal.of(top)
    ctx = _CONTEXTS.get(top)
    if ctx is None:
        with _CONTEXTS_LOCK:
            ctx = _CONTEXTS.setdefault(top, LadderContext(top))
    return ctx


def ladder(ctx: Union[LadderContext, OrdinalLike], beta: OrdinalLike, n: int) -> Ordinal:
    """The rung ``c_n(beta)`` of the monotone ladder system of ``ctx.top``."""
    if not isinstance(ctx, LadderContext):
        ctx = ladder_context(ctx)
    beta = Ordinal.of(beta)
    if not beta.is_limit():
        raise ValueError(f"ladder rungs are defined for limit ordinals, got {beta}")
    if beta > ctx.top:
        raise ValueError(f"{beta} exceeds the ladder top {ctx.top}")
    if n < 0:
        raise ValueError("n must be non-negative")
    key = (beta, n)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    value = _rung(ctx.limit_top, beta, n)
    with ctx._lock:
        return ctx._cache.setdefault(key, value)


def _rung(top: Ordinal, beta: Ordinal, n: int) -> Ordinal:
    if not _is_limit_of_limits(top):
        # top = prev + w
        prev = _drop_one_omega(top)
        if beta == top:
            return add(prev, n)
        return ladder(ladder_context(prev), beta, n)

    if beta == top:
        return fundamental_sequence(top, n)
    n0 = 0
    while fundamental_sequence(top, n0 + 1) < beta:
        n0 += 1
    lower = fundamental_sequence(top, n0)
    upper = fundamental_sequence(top, n0 + 1)
    bar = max(lower, ladder(ladder_context(upper), beta, n))
    return min(fundamental_sequence(top, n), bar)


def _drop_one_omega(top: Ordinal) -> Ordinal:
    *head, (exp, coeff) = top.terms
    if coeff > 1:
        head.append((exp, coeff - 1))
    return Ordinal(tuple(head))


def theorem_sequence(delta: OrdinalLike, alpha: OrdinalLike, n: int) -> Ordinal:
    """The sequence ``alpha_n`` attached to ``alpha <= delta``.

    Read off the ladder system of ``delta + w``: at ``alpha`` itself when
    ``alpha`` is a limit, at ``alpha + w`` otherwise.  Monotone in ``alpha``.
    """
    delta, alpha = Ordinal.of(delta), Ordinal.of(alpha)
    if alpha > delta:
        raise ValueError(f"alpha={alpha} exceeds delta={delta}")
    top = add(delta, OMEGA)
    target = alpha if alpha.is_limit() else add(alpha, OMEGA)
    return ladder(ladder_context(top), target, n)


@dataclass
class LadderReport:
    top: Ordinal
    n_max: int
    checked: int = 0
    not_below: list = field(default_factory=list)
    decreasing: list = field(default_factory=list)
    not_monotone: list = field(default_factory=list)
    # plateaus are allowed by the construction but recorded
    strictness_violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.not_below or self.decreasing or self.not_monotone)


def check_ladder_system(top: OrdinalLike, limits, n_max: int) -> LadderReport:
    """Check rung bounds, monotonicity in n and coherence in beta over ``limits``."""
    ctx = ladder_context(top)
    limits = sorted(Ordinal.of(b) for b in limits)
    report = LadderReport(ctx.top, n_max)
    rows = {}
    for beta in limits:
        row = [ladder(ctx, beta, n) for n in range(n_max + 1)]
        rows[beta] = row
        for n, c in enumerate(row):
            report.checked += 1
            if not c < beta:
                report.not_below.append((beta, n, c))
            if n and row[n - 1] > c:
                report.decreasing.append((beta, n))
            elif n and row[n - 1] == c:
                report.strictness_violations.append((beta, n))
    for i, beta in enumerate(limits):
        for gamma in limits[i:]:
            for n in range(n_max + 1):
                if rows[beta][n] > rows[gamma][n]:
                    report.not_monotone.append((beta, gamma, n))
    return report


# -- text form ---------------------------------------------------------------


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class _Parser:
    """Recursive descent over ``sum := term ('+' term)*``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise OrdinalSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def parse(self) -> Ordinal:
        value = self.sum()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def sum(self) -> Ordinal:
        value = self.term()
        while self.eat("+"):
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch in ("w", "ω"):
            self.pos += 1
            exp = ONE
            if self.eat("^"):
                exp = self.factor()
            coeff = 1
            if self.eat("*"):
                coeff = self.nat()
            return Ordinal(((exp, coeff),)) if coeff else ZERO
        if ch.isdigit():
            return Ordinal.of(self.nat())
        self.error("expected 'w' or a natural number")

    def factor(self) -> Ordinal:
        ch = self.peek()
        if ch in ("w", "ω"):
            self.pos += 1
            return OMEGA
        if ch == "(":
            self.pos += 1
            value = self.sum()
            if not self.eat(")"):
                self.error("expected ')'")
            return value
        if ch.isdigit():
            return Ordinal.of(self.nat())
        self.error("expected exponent")


def parse_ordinal(text: str) -> Ordinal:
    """Parse e.g. ``"w^2*3+w+1"``; non-canonical sums such as ``"1+w"`` are normalised."""
    return _Parser(text).parse()


def print_ordinal(a: OrdinalLike) -> str:
    a = Ordinal.of(a)
    if a.is_zero():
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if exp == ONE:
            s = "w"
        elif exp.is_finite() or exp == OMEGA:
            s = f"w^{print_ordinal(exp)}"
        else:
            s = f"w^({print_ordinal(exp)})"
        if coeff > 1:
            s += f"*{coeff}"
        parts.append(s)
    return "+".join(parts)
