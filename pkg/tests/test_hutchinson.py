from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from scattered_ifs.hutchinson import (apply, hausdorff, iterate, power, restrict_attractor,
                                      union_attractor, union_exponent, verify_attractor,
                                      verify_property_A, verify_property_B, verify_sets)
from scattered_ifs.maps import Affine, Ifs, MapContext, const, ifs_for
from scattered_ifs.ordinals import OMEGA, add, parse_ordinal as P
from scattered_ifs.pointset import PointSet
from scattered_ifs.scattered import SpaceSpec, Truncation, copy_pieces, geometric_sequence, materialize

HALF = Affine(Fr(1, 2), 0)
GEOM = Ifs((HALF, const(1)))


def finite_sets():
    pt = st.fractions(min_value=0, max_value=1, max_denominator=64)
    return st.lists(pt, min_size=1, max_size=6).map(PointSet)


def test_apply_examples():
    assert apply(GEOM, PointSet([0, 1])) == PointSet([0, Fr(1, 2), 1])
    assert apply(GEOM, PointSet()) == PointSet()
    assert apply([HALF], PointSet([0])) == PointSet([0])


def test_iterate_examples():
    assert iterate(GEOM, [0], 3) == PointSet([0, Fr(1, 4), Fr(1, 2), 1])
    s = PointSet([Fr(1, 3)])
    assert iterate(GEOM, s, 0) == s
    dists = [hausdorff(iterate(GEOM, [0], k), iterate(GEOM, [0], k + 1)) for k in range(8)]
    assert all(a > b for a, b in zip(dists, dists[1:]))


def test_hausdorff_examples():
    s = PointSet([0, Fr(1, 3)])
    assert hausdorff(s, s) == 0
    assert hausdorff([0], [1]) == 1
    assert hausdorff([0, 1], [0, Fr(1, 2), 1]) == Fr(1, 2)
    with pytest.raises(ValueError):
        hausdorff([], [0])


@settings(max_examples=200)
@given(finite_sets(), finite_sets(), finite_sets())
def test_hausdorff_is_metric(a, b, c):
    assert hausdorff(a, b) == hausdorff(b, a)
    assert (hausdorff(a, b) == 0) == (a == b)
    assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c)


def _brute_hausdorff(a, b):
    one = lambda s, t: max(min(abs(x - y) for y in t) for x in s)
    return max(one(a, b), one(b, a))


@settings(max_examples=100)
@given(finite_sets(), finite_sets())
def test_hausdorff_matches_brute_force(a, b):
    assert hausdorff(a, b) == _brute_hausdorff(a, b)


@settings(max_examples=100)
@given(finite_sets(), finite_sets(), st.sampled_from(["geom", "k1", "k2"]))
def test_hutchinson_operator_contracts(s, t, which):
    ifs = {"geom": GEOM, "k1": ifs_for(0, 4), "k2": ifs_for(1, Fr(9, 2))}[which]
    assert hausdorff(apply(ifs, s), apply(ifs, t)) <= ifs.max_bound() * hausdorff(s, t)


@pytest.mark.parametrize("J", range(1, 13))
def test_geometric_iterates_converge(J):
    target = geometric_sequence(J)
    for k in range(J + 1):
        assert hausdorff(iterate(GEOM, [0], k), target) <= Fr(1, 2**k)


@pytest.mark.parametrize("delta,t_in,t_cover", [
    (0, (6, 6), (5, 5)),
    (1, (5, 5), (4, 4)),
    (2, (5, 5), (4, 4)),
    (OMEGA, (5, 5), (4, 4)),
])
def test_verify_attractor(delta, t_in, t_cover):
    spec = SpaceSpec.K(add(delta, 1), delta=delta)
    report = verify_attractor(ifs_for(delta, 4), spec, Truncation(*t_in), Truncation(*t_cover))
    assert report.passed, report.to_text()
    assert report.covered == len(materialize(spec, Truncation(*t_cover)))


def test_verify_attractor_other_ratio():
    r = Fr(7, 2)
    spec = SpaceSpec.K(P("w+1"), r=r, delta=OMEGA)
    assert verify_attractor(ifs_for(OMEGA, r), spec, Truncation(4, 4), Truncation(3, 3)).passed


def test_wrong_ifs_fails():
    report = verify_attractor(GEOM, SpaceSpec.K(1), Truncation(5, 5), Truncation(4, 4))
    assert not report.passed
    assert 1 in report.non_members
    assert Fr(1, 16) in report.uncovered and 0 not in report.uncovered
    assert report.uncovered == sorted(report.uncovered)
    assert "pass: false" in report.to_text()


def test_coverage_truncation_must_be_coarser():
    with pytest.raises(ValueError):
        verify_attractor(ifs_for(0, 4), SpaceSpec.K(1), Truncation(4, 4), Truncation(4, 4))


def test_report_text():
    spec = SpaceSpec.K(1)
    text = verify_attractor(ifs_for(0, 4), spec, Truncation(4, 4), Truncation(3, 3)).to_text()
    assert "pass: true" in text and "t_in: (N=4, D=4)" in text


ORDS = [P(a) for a in ("0", "1", "2", "w", "w+1", "w+2")]


@pytest.mark.parametrize("beta", ORDS, ids=str)
def test_property_A(beta):
    ctx = MapContext(4, P("w+2"))
    for alpha in ORDS:
        if alpha <= beta:
            rep = verify_property_A(alpha, beta, ctx, Truncation(4, 4), Truncation(3, 3))
            assert rep.passed, rep.to_text()


@pytest.mark.parametrize("alpha", ORDS, ids=str)
def test_property_B(alpha):
    ctx = MapContext(4, P("w+2"))
    rep = verify_property_B(alpha, ctx, Truncation(4, 4), Truncation(3, 3))
    assert rep.passed, rep.to_text()


def test_property_guards():
    ctx = MapContext(4, OMEGA)
    with pytest.raises(ValueError):
        verify_property_A(2, 1, ctx, Truncation(3, 3), Truncation(2, 2))
    with pytest.raises(ValueError):
        verify_property_A(1, P("w+1"), ctx, Truncation(3, 3), Truncation(2, 2))
    with pytest.raises(ValueError):
        verify_property_B(P("w+1"), ctx, Truncation(3, 3), Truncation(2, 2))


def test_power():
    assert power(GEOM, 1) is GEOM
    cube = power(GEOM, 3)
    assert len(cube) == 8
    assert all(b <= Fr(1, 8) for b in cube.bounds())
    x = Fr(3, 5)
    assert {m(x) for m in cube} == {a(b(c(x))) for a in GEOM for b in GEOM for c in GEOM}
    with pytest.raises(ValueError):
        power(GEOM, 0)


@pytest.mark.parametrize("delta", [0, 1, OMEGA])
def test_power_preserves_verification(delta):
    spec = SpaceSpec.K(add(delta, 1), delta=delta)
    t_in, t_cover = Truncation(6, 6), Truncation(5, 5)
    base = verify_attractor(ifs_for(delta, 4), spec, t_in, t_cover)
    sq = verify_attractor(power(ifs_for(delta, 4), 2), spec, t_in, t_cover)
    assert base.passed == sq.passed


def test_union_exponent():
    assert union_exponent(Fr(1, 2), Fr(1, 2)) == 3
    assert union_exponent(Fr(1, 8), Fr(1, 2)) == 1
    assert union_exponent(0, Fr(1, 100)) == 1


def _two_geometric_copies(J=8):
    # {x/2, const 1} rescaled to [0, 1/4] and a translate on [3/4, 1]
    a = geometric_sequence(J, top=Fr(1, 4))
    b = a.translate(Fr(3, 4))
    ia = Ifs((Affine(Fr(1, 2), 0), const(Fr(1, 4))))
    ib = Ifs((Affine(Fr(1, 2), Fr(3, 8)), const(1)))
    return ia, a, ib, b


def test_union_attractor():
    ia, a, ib, b = _two_geometric_copies()
    union = union_attractor(ia, a, ib, b)
    assert all(bd <= Fr(1, 2) for bd in union.bounds())
    whole = a | b
    fine, coarse = whole, _two_geometric_copies(6)[1] | _two_geometric_copies(6)[3]
    truth = _two_geometric_copies(40)[1] | _two_geometric_copies(40)[3]
    rep = verify_sets("union", union, fine, coarse, lambda y: y in truth)
    assert rep.passed, rep.to_text()


def test_union_attractor_degenerate_and_overlap():
    ia, a, ib, b = _two_geometric_copies()
    assert union_attractor(ia, a, ib, PointSet()) is ia
    with pytest.raises(ValueError):
        union_attractor(ia, a, ib, a.translate(Fr(1, 8)))


def test_restrict_round_trip():
    ia, a, ib, b = _two_geometric_copies()
    union = union_attractor(ia, a, ib, b)
    sub = restrict_attractor(union, [a, b], [0, Fr(3, 4)])
    fine = a
    coarse = _two_geometric_copies(6)[1]
    truth = _two_geometric_copies(40)[1]
    rep = verify_sets("restricted", sub, fine, coarse, lambda y: y in truth)
    assert rep.passed, rep.to_text()


def test_restrict_single_piece():
    spec = SpaceSpec.K(1)
    x0 = materialize(spec, Truncation(6, 6))
    sub = restrict_attractor(ifs_for(0, 4), [x0], [0])
    assert list(sub) == list(ifs_for(0, 4))


def test_restrict_round_trip_via_copy_pieces():
    base = geometric_sequence(8, top=Fr(1, 4))
    (a, b), offsets = copy_pieces(base, 2, Fr(1, 2))
    ia = Ifs((Affine(Fr(1, 2), 0), const(Fr(1, 4))))
    ib = Ifs((Affine(Fr(1, 2), offsets[1] / 2), const(b.max)))
    sub = restrict_attractor(union_attractor(ia, a, ib, b), [a, b], offsets)
    truth = geometric_sequence(40, top=Fr(1, 4))
    rep = verify_sets("restricted", sub, a, geometric_sequence(6, top=Fr(1, 4)), lambda y: y in truth)
    assert rep.passed, rep.to_text()


def test_restrict_guards():
    a = PointSet([0, Fr(1, 4)])
    with pytest.raises(ValueError):
        restrict_attractor(GEOM, [a, a.translate(Fr(1, 8))], [0, Fr(1, 8)])
    with pytest.raises(ValueError):
        restrict_attractor(GEOM, [a, a.translate(Fr(1, 2))], [0, Fr(1, 3)])
    with pytest.raises(ValueError):
        restrict_attractor(Ifs((const(Fr(9, 10)),)), [a], [0])
