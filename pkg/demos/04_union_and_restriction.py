"""Gluing attractors together and cutting one piece back out.

Two copies of the sequence {0} u {1/2^j} (scaled into [0, 1/4] and placed
1/2 apart) each have a two-map IFS.  union_attractor builds one IFS for the
pair and restrict_attractor recovers an IFS for the first copy alone.
"""
from fractions import Fraction as Fr

from scattered_ifs.hutchinson import restrict_attractor, union_attractor, verify_sets
from scattered_ifs.maps import Affine, Ifs, const
from scattered_ifs.scattered import copy_pieces, geometric_sequence


def piece(J, offset=0):
    return geometric_sequence(J, top=Fr(1, 4), offset=offset)


(a, b), offsets = copy_pieces(piece(8), 2, Fr(1, 2))
ia = Ifs((Affine(Fr(1, 2), 0), const(Fr(1, 4))))
ib = Ifs((Affine(Fr(1, 2), offsets[1] / 2), const(b.max)))

union = union_attractor(ia, a, ib, b)
print(f"union IFS: {len(union)} maps, largest Lipschitz bound {union.max_bound()}")

truth = piece(40) | piece(40, offsets[1])
rep = verify_sets("A u B", union, a | b, piece(6) | piece(6, offsets[1]), lambda y: y in truth)
print(rep.to_text(), end="")

sub = restrict_attractor(union, [a, b], offsets)
print(f"restricted IFS: {len(sub)} maps")
rep = verify_sets("A", sub, a, piece(6), lambda y: y in piece(40))
print(rep.to_text(), end="")
