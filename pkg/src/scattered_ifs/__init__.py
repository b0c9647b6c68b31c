"""Exact constructions of scattered compact IFS-attractors in [0, 1]."""
from .hutchinson import (VerificationReport, apply, hausdorff, iterate, power, restrict_attractor,
                         union_attractor, verify_attractor, verify_property_A, verify_property_B)
from .maps import (F, G, Affine, Compose, ConstOutside, Ifs, MapContext, Phi, PhiTop, ScaleShift,
                   const, empirical_lipschitz, evaluate, identity, ifs_for, image, lipschitz_bound,
                   parse_map, radius_for_epsilon)
from .ordinals import (OMEGA, Ordinal, add, classify, compare, fundamental_sequence, ladder,
                       parse_ordinal, print_ordinal, theorem_sequence)
from .pointset import PointSet, read_pointset, write_pointset
from .refuter import (check_counterexample_invariants, classify_map, counting_refutation,
                      refute_candidate_ifs)
from .scattered import (SpaceSpec, Truncation, bad_embedding, counterexample_block, counterexample_set,
                        height_of, is_topological_attractor, materialize, member, n_copies, rank_of)

__version__ = "0.1.0"
