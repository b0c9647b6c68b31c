"""A convergent sequence that is not an IFS-attractor.

The blocks F_n hold k_n equally spaced points, with k_n growing like a
factorial.  A system of m weak contractions can only produce about m times the
points of earlier blocks, so it falls short at block m+1.  This walks through
the invariants, the counting bound and a concrete refutation.
"""
from fractions import Fraction

from scattered_ifs import check_counterexample_invariants, counting_refutation, refute_candidate_ifs
from scattered_ifs.maps import Affine, const

print(check_counterexample_invariants(6).to_text())

for m in (1, 2, 3, 10):
    print(f"{m} map(s) run out of points at block n = {counting_refutation(m)}")

# the geometric-sequence IFS is the natural first guess
report = refute_candidate_ifs([Affine(Fraction(1, 2), 0), const(1)], 3)
print()
print(report.to_text(), end="")
