"""Monotone ladder systems below w^3.

Every limit beta <= top gets a sequence c_n(beta) climbing to beta, and the
sequences are coherent: a bigger beta never has a smaller n-th rung.  This
prints the first rungs for a few tops and then runs the structural check.
"""
from scattered_ifs.ordinals import check_ladder_system, ladder, parse_ordinal, print_ordinal

TOPS = ["w", "w*2", "w^2", "w^2+w", "w^3"]


def rungs(top, beta, k=6):
    return ", ".join(print_ordinal(ladder(top, beta, n)) for n in range(k))


for text in TOPS:
    top = parse_ordinal(text)
    print(f"top = {text}")
    print(f"  c_n({text}) = {rungs(top, top)}, ...")
    if text == "w^2":
        # a limit below the top is laddered inside the same system
        print(f"  c_n(w*2) = {rungs(top, parse_ordinal('w*2'))}, ...")

# limits of the form w^2*a + w*b below w^3, plus the top itself
limits = [parse_ordinal(f"w^2*{a}+w*{b}") for a in range(3) for b in range(3) if a or b]
limits.append(parse_ordinal("w^3"))
report = check_ladder_system("w^3", limits, 24)
print()
print(f"checked {report.checked} rungs under w^3: passed={report.passed}, "
      f"plateaus={len(report.strictness_violations)}")
