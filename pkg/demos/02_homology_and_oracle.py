"""Hochschild (co)homology two ways: small complexes against the bar oracle.

The reduced complexes have one block M (x) Hbar^s (x) Abar^r per (r, s); the
oracle is the full normalized bar complex M (x) Ebar^n.  Their dimensions per
degree differ wildly, the homology must not.
"""

from hopfcross import FieldSpec
from hopfcross.crossed import regular_bimodule
from hopfcross.homology import hochschild_cohomology, hochschild_homology
from hopfcross.problems import builtin

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)

print("== the group algebra of Z/2, over F_2 and over Q ==")
for field, label in ((F2, "F_2"), (Q, "Q")):
    cp = builtin("z2_trivial", field=field).crossed_product()
    rep = hochschild_homology(cp, cap=4, oracle=True)
    print(f"  over {label}: HH_* = {rep['dims']}  (oracle agrees: {rep['oracle_match']})")
print("  modular torsion keeps every degree alive over F_2; over Q the group")
print("  algebra is separable and everything above degree 0 dies.")

print()
print("== all built-ins, homology and cohomology, degrees 0..3 ==")
for name in ("z4_as_cocycle_extension", "klein_four", "s3_as_action_extension",
             "sweedler_smash"):
    cp = builtin(name).crossed_product()
    m = regular_bimodule(cp.e)
    h = hochschild_homology(cp, m, cap=4, oracle=True)
    c = hochschild_cohomology(cp, m, cap=4, oracle=True)
    print(f"  {name:28s} HH_* {h['dims']}   HH^* {c['dims']}   "
          f"oracle {'ok' if h['oracle_match'] and c['oracle_match'] else 'MISMATCH'}")

print()
print("The Sweedler smash product is the interesting one: its homology")
print("[3, 4, 6, 8] grows linearly, reflecting the y^2 = 0 singularity of A.")
