from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from scattered_ifs.maps import Affine, Compose, const
from scattered_ifs.refuter import (check_counterexample_invariants, classify_map, counting_refutation,
                                   refute_candidate_ifs)
from scattered_ifs.scattered import (counterexample_block, counterexample_block_of,
                                     counterexample_params, counterexample_set)

HALF = Affine(Fr(1, 2), 0)


def k_seq(n_max):
    """Oracle for k_n straight from the recurrence k_n = n (k_1 + ... + k_{n-1})."""
    ks = [1]
    while len(ks) < n_max:
        ks.append((len(ks) + 1) * sum(ks))
    return ks


def test_invariant_examples():
    rep = check_counterexample_invariants(2)
    assert rep.passed
    r1, r2 = rep.rows
    assert r1.dist == Fr(5, 12) and r2.dist == Fr(19, 108)
    assert r1.dist > r1.a and r2.dist > r2.a
    assert r2.diam == Fr(1, 12) <= r2.a == Fr(1, 6)
    assert r2.margin == Fr(1, 108)


def test_invariants_hold_up_to_twenty():
    rep = check_counterexample_invariants(20)
    assert rep.passed and len(rep.rows) == 20
    assert all(r.margin > 0 for r in rep.rows)
    assert [r.k for r in rep.rows] == k_seq(20)


def test_invariants_match_materialized_blocks():
    rep = check_counterexample_invariants(5)
    for row in rep.rows:
        cur, nxt = counterexample_block(row.n).points, counterexample_block(row.n + 1).points
        assert row.diam == cur.diam() and row.dist == cur.dist(nxt)


def test_invariants_need_two_blocks():
    with pytest.raises(ValueError):
        check_counterexample_invariants(1)


def test_classify_examples():
    assert classify_map(const(Fr(7, 12)), 3).verdict == "finite_image"
    assert classify_map(HALF, 1).verdict == "forward_shifting"
    d = classify_map(Affine(Fr(-1, 100), 1), 3)
    assert d.verdict == "neither" and d.witnesses


def test_half_is_not_a_self_map_beyond_one_block():
    # x/2 sends 7/12 in F_2 to 7/24, which is not in K
    d = classify_map(HALF, 2)
    assert d.verdict == "neither" and Fr(7, 24) in d.witnesses


def test_classify_rejects_non_contractions():
    with pytest.raises(ValueError):
        classify_map(Affine(2, 0), 2)


@pytest.mark.parametrize("m,N", [(HALF, 1), (Affine(Fr(1, 4), 0), 1)])
def test_forward_shifting_witness_property(m, N):
    d = classify_map(m, N)
    assert d.verdict == "forward_shifting"
    for n in d.blocks:
        for x in counterexample_block(n).points:
            b = counterexample_block_of(m(x))
            assert b == 0 or b > n


def test_counting_examples():
    assert counting_refutation(2) == 3
    assert counting_refutation(1) == 2
    assert counting_refutation(5) == 6
    ks = k_seq(6)
    total = sum(ks[:5])
    assert ks[5] - 5 * total == total


@pytest.mark.parametrize("m", range(1, 51))
def test_counting_refutation_is_m_plus_one(m):
    ks = k_seq(m + 2)
    n = counting_refutation(m)
    assert n == m + 1
    assert ks[n - 1] > m * sum(ks[: n - 1])
    assert all(ks[j - 1] <= m * sum(ks[: j - 1]) for j in range(2, n))


def test_refute_examples():
    rep = refute_candidate_ifs([HALF, const(1)], 3)
    assert rep.refuted and Fr(7, 12) in rep.uncovered
    with pytest.raises(ValueError):
        refute_candidate_ifs([], 3)


@pytest.mark.parametrize("N", range(2, 7))
def test_refute_geometric_ifs_every_N(N):
    rep = refute_candidate_ifs([HALF, const(1)], N)
    assert rep.refuted
    assert rep.uncovered == sorted(rep.uncovered)
    assert set(rep.uncovered) <= set(counterexample_set(N))


def test_counting_certificate_without_residue():
    maps = [HALF, Affine(Fr(1, 3), 0), Affine(Fr(1, 4), Fr(1, 2))]
    rep = refute_candidate_ifs(maps, 4)
    assert rep.certified_at == counting_refutation(3) == 4
    # deficit row at n = 4: |F_4| = 48 > 3 (1 + 2 + 9) = 36
    assert rep.deficit[3] == (4, 48, 36, True)


def test_report_text():
    text = refute_candidate_ifs([HALF, const(1)], 3).to_text()
    assert "status: refuted" in text and "7/12" in text


def test_non_affine_candidates_use_truncated_images():
    m = Compose((HALF, HALF))
    rep = refute_candidate_ifs([m, const(1)], 3)
    assert rep.refuted


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=Fr(-9, 10), max_value=Fr(9, 10), max_denominator=20),
       st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_no_two_affine_maps_generate_K(p, q):
    # the counting argument forbids any IFS; at truncation scale every candidate leaves a gap
    rep = refute_candidate_ifs([Affine(p, q), const(1)], 3)
    assert rep.refuted
