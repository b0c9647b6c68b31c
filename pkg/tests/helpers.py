"""Shared generators for the test suite."""
import itertools
import random

from hypothesis import strategies as st

from scattered_ifs.ordinals import Ordinal


def build(pairs):
    """Ordinal from unordered (exponent, coeff) pairs; repeated exponents keep the first."""
    seen = {}
    for exp, coeff in pairs:
        seen.setdefault(exp, coeff)
    return Ordinal(tuple(sorted(seen.items(), key=lambda t: t[0], reverse=True)))


def cnf(depth=2):
    if depth == 0:
        return st.integers(0, 6).map(Ordinal.of)
    return st.lists(st.tuples(cnf(depth - 1), st.integers(1, 4)), max_size=3).map(build)


def random_ordinal(rng: random.Random, depth=3):
    if depth == 0 or rng.random() < 0.2:
        return Ordinal.of(rng.randrange(0, 8))
    pairs = [(random_ordinal(rng, depth - 1), rng.randrange(1, 6)) for _ in range(rng.randrange(0, 4))]
    return build(pairs)


def ordinals_below_omega_power(max_exp=3, max_coeff=3):
    """Every ordinal w^e*c_e + ... + c_0 with e <= max_exp and coefficients <= max_coeff."""
    out = []
    for coeffs in itertools.product(range(max_coeff + 1), repeat=max_exp + 1):
        terms = tuple((Ordinal.of(e), c) for e, c in zip(range(max_exp, -1, -1), coeffs) if c)
        out.append(Ordinal(terms))
    return sorted(out)


def limits_up_to(top, max_exp=3, max_coeff=3):
    top = Ordinal.of(top)
    pool = [b for b in ordinals_below_omega_power(max_exp, max_coeff) if b.is_limit() and b <= top]
    if top not in pool:
        pool.append(top)
    return sorted(pool)


def hand_order_key(a: Ordinal, max_exp=8):
    """Coefficient vector from the highest exponent down; valid for ordinals below w^w."""
    coeffs = dict((int(e), c) for e, c in a.terms)
    return tuple(coeffs.get(e, 0) for e in range(max_exp, -1, -1))
