"""
Certifying the constant
=======================

The five parameters (tau, alpha, beta, delta, tau2) give two competing
bounds on b_infinity.  Everything below is exact rational arithmetic.
"""

from sidonkit.bounds import REFERENCE_PARAMS, combined_bound, smalls_vertices
from sidonkit.optimize import OptimizerConfig, anneal

p = REFERENCE_PARAMS
rep = combined_bound(p)
print("variance branch :", rep.variance)
print("smalls branch   :", rep.smalls)
print("balanced        :", rep.balanced)
print("decimal         :", rep.decimal(12))

# the smalls form is linear in (x, y); look at the three corners of the region
for (x, y), val in smalls_vertices(p).items():
    print(f"  vertex x={float(x):.6f} y={float(y):.6f}  ->  {float(val):.12f}")

# anneal from the published point, then rationalize and recompute exactly
res = anneal(OptimizerConfig(steps=20000, seed=0))
print("annealed bound  :", f"{float(res.bound):.12f}", "certified:", res.certified)
print("at tau={}, alpha={}, beta={}, tau2={}".format(
    *(f"{float(v):.6f}" for v in (res.params.tau, res.params.alpha, res.params.beta, res.params.tau2))))
