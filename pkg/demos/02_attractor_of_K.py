"""K_{delta+1} as the attractor of two contractions.

Builds a truncation of K_{w+1}, applies {phi, phi_top} and checks both halves
of the attractor identity exactly.  Pass a path to also write the SVG tick
plot (tick height follows Cantor-Bendixson rank).

    python demos/02_attractor_of_K.py [out.svg]
"""
import sys
from collections import Counter

from scattered_ifs import SpaceSpec, Truncation, ifs_for, materialize, verify_attractor
from scattered_ifs.cli import render_svg
from scattered_ifs.ordinals import OMEGA, add, print_ordinal
from scattered_ifs.scattered import ranked_points

delta = OMEGA
spec = SpaceSpec.K(add(delta, 1), r=4, delta=delta)
fine, coarse = Truncation(5, 5), Truncation(4, 4)

pts = materialize(spec, fine)
ranks = Counter(print_ordinal(r) for _, r in ranked_points(spec, fine))
print(f"K_{spec.alpha} truncated at {fine}: {len(pts)} points, max {pts.max}")
print("points per rank:", dict(sorted(ranks.items(), key=lambda kv: -kv[1])))

ifs = ifs_for(delta, 4)
print("maps:", ifs.text(), "with Lipschitz bounds", [str(b) for b in ifs.bounds()])

report = verify_attractor(ifs, spec, fine, coarse)
print(report.to_text(), end="")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(render_svg(ranked_points(spec, Truncation(4, 4)), title="K_{w+1}"))
    print("wrote", sys.argv[1])
