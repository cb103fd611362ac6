"""Certificates for the small resolution and its comparison with the bar
resolution.

Nothing here computes homology: exactness is certified by an explicit
contracting homotopy, and the two resolutions are compared by explicit chain
maps whose composites are the identity (one way) and homotopic to it (the
other).  Every identity is an exact matrix or generator identity.
"""

import time

from hopfcross import ExactMatrix
from hopfcross.comparison import (
    BarCalculus,
    build_comparison,
    check_comparison_identities,
    check_filtration_preservation,
)
from hopfcross.problems import builtin
from hopfcross.resolution import build_resolution_closed, build_resolution_recursive

cp = builtin("sweedler_smash").crossed_product()
t0 = time.time()
res = build_resolution_closed(cp, 4)
print(f"small resolution of the Sweedler smash product, degrees 0..4 "
      f"({time.time() - t0:.1f}s)")
print(f"  degree dimensions: {res.dims}")
bar = BarCalculus(cp, 5)
bar_dims = [sp.dim for sp in bar.spaces]
print(f"  bar resolution:    {bar_dims}")

print()
print("square-zero and augmentation:")
for n in range(1, 4):
    assert (res.d[n] @ res.d[n + 1]).is_zero()
assert (res.augmentation @ res.d[1]).is_zero()
print("  d o d = 0 and aug o d_1 = 0, exactly")

sigma = res.contracting_homotopy()
ok = res.augmentation @ sigma[0] == ExactMatrix.identity(cp.field, cp.e.dim)
lhs = res.d[1] @ sigma[1] + sigma[0] @ res.augmentation
ok = ok and lhs == ExactMatrix.identity(cp.field, res.dims[0])
for n in range(1, 4):
    lhs = res.d[n + 1] @ sigma[n + 1] + sigma[n] @ res.d[n]
    ok = ok and lhs == ExactMatrix.identity(cp.field, res.dims[n])
print(f"  contracting homotopy identities: {'exact' if ok else 'FAILED'}")

print()
print("the two block constructions agree:")
t0 = time.time()
rec = build_resolution_recursive(cp, 4)
same = all(res.blocks[k] == rec.blocks[k] for k in res.blocks)
print(f"  closed == recursive on {len(res.blocks)} blocks "
      f"({time.time() - t0:.1f}s): {same}")

print()
print("comparison with the bar resolution (degrees <= 3):")
cmp_maps = build_comparison(res, bar, 3)
rep = check_comparison_identities(cmp_maps)
print(f"  {rep.summary()}")
rep = check_filtration_preservation(cmp_maps)
print(f"  {rep.summary()}")
print("so the small resolution is a filtration-respecting deformation retract")
print("of the bar resolution, certified without computing any homology.")
