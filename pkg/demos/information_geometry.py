"""The dually flat geometry the quadratic energy density puts on each cell.

The Hessian of the energy density is a metric on the six induction
components; the intensities are the dual coordinates, straight lines in
either coordinate system are geodesics of the two flat connections, and
the Bregman-type canonical divergence satisfies a generalized Pythagorean
identity at orthogonal corners.

Run:  python demos/information_geometry.py
"""

import numpy as np

from cmx import (
    Connection,
    FiberPoint,
    canonical_divergence,
    contravariant_metric,
    fiber_metric,
    geodesic,
    pythagoras_check,
)
from cmx.infogeo import random_orthogonal_triple

rng = np.random.default_rng(5)
eps, mu = 2.0, 3.0

print("=" * 70)
print("1. Metric and dual coordinates")
print("=" * 70)
g = fiber_metric(eps, mu)
ginv = contravariant_metric(eps, mu)
print(f"metric diag:        {np.diag(g)}")
print(f"contravariant diag: {np.diag(ginv)}")
print(f"|g g^-1 - I|_inf = {np.abs(g @ ginv - np.eye(6)).max():.1e}")

x = rng.normal(size=6)
xi = FiberPoint.from_x(x, eps, mu)
print(f"\ninduction coordinates x = {np.round(xi.x, 3)}")
print(f"intensity coordinates p = {np.round(xi.p, 3)}  (p = g x)")

print()
print("=" * 70)
print("2. Canonical divergence")
print("=" * 70)
xi2 = FiberPoint.from_x(rng.normal(size=6), eps, mu)
div = canonical_divergence(xi, xi2)
quad = 0.5 * (xi.x - xi2.x) @ g @ (xi.x - xi2.x)
print(f"D(xi || xi') = {div:.8f}")
print(f"half metric square of the displacement: {quad:.8f}")
print(f"D(xi || xi)  = {canonical_divergence(xi, xi):.1e}")
print("for the quadratic energy the divergence is symmetric and exactly")
print("the squared metric distance; the Bregman asymmetry only appears for")
print("non-quadratic generators.")

print()
print("=" * 70)
print("3. Geodesics of the two flat connections")
print("=" * 70)
mid_x = geodesic(Connection.NABLA, xi, xi2, 0.5)
mid_p = geodesic(Connection.NABLA_PRIME, xi, xi2, 0.5)
print(f"midpoint, straight in x: x = {np.round(mid_x.x, 4)}")
print(f"midpoint, straight in p: x = {np.round(mid_p.x, 4)}")
print("a linear constitutive map makes the two families coincide pointwise.")

print()
print("=" * 70)
print("4. Generalized Pythagorean identity")
print("=" * 70)
print(f"{'defect':>10} {'D(3||1)':>12} {'D(3||2)+D(2||1)':>16} {'gap':>10}")
for _ in range(5):
    xi3, xim, xi1 = random_orthogonal_triple(rng, eps, mu)
    lhs, rhs, defect = pythagoras_check(xi3, xim, xi1)
    print(f"{defect:10.1e} {lhs:12.6f} {rhs:16.6f} {abs(lhs - rhs):10.1e}")
print("whenever the corner is metric-orthogonal the divergence adds up")
print("exactly; a collinear corner breaks additivity:")
xi3 = FiberPoint.from_x(np.array([1.0, 0, 0, 0, 0, 0]), eps, mu)
xim = FiberPoint.from_x(np.array([0.5, 0, 0, 0, 0, 0]), eps, mu)
xi1 = FiberPoint.from_x(np.zeros(6), eps, mu)
lhs, rhs, defect = pythagoras_check(xi3, xim, xi1)
print(f"collinear: defect = {defect:.3f}, D(3||1) = {lhs:.4f}, "
      f"sum through the middle = {rhs:.4f}")
