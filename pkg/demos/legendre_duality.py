"""Numeric Legendre transforms and the energy/co-energy duality.

The electromagnetic energy density is a strictly convex quadratic of the
six induction components; its total Legendre transform is the co-energy
density of the six intensities.  This script computes the transform
numerically (damped Newton on the gradient equation), checks it against
the closed form, and shows the involution property.

Run:  python demos/legendre_duality.py
"""

import numpy as np

from cmx import (
    Generator,
    GeneratorKind,
    energy_quadratic,
    legendre_dual,
    legendre_transform,
)

rng = np.random.default_rng(7)

print("=" * 70)
print("1. Warm-up: scalar transforms")
print("=" * 70)
for coeff, p in [(1.0, 3.0), (2.0, 2.0)]:
    gen = Generator.quadratic(np.array([[coeff]]))
    value, argmax = legendre_transform(gen, [p])
    print(f"psi = {coeff}/2 x^2, p = {p}:  sup_x [xp - psi] = {value:.6f} "
          f"at x* = {argmax[0]:.6f}  (closed form {p * p / (2 * coeff):.6f})")

gen4 = Generator(
    kind=GeneratorKind.X_TYPE,
    value=lambda x: 0.25 * float(x[0] ** 4),
    gradient=lambda x: x**3,
    hessian=lambda x: np.array([[3.0 * x[0] ** 2]]),
    strictly_convex=True,
)
value, argmax = legendre_transform(gen4, [8.0])
print(f"psi = x^4/4, p = 8: value = {value:.6f} at x* = {argmax[0]:.6f} "
      "(expected 12 at 2)")

print()
print("=" * 70)
print("2. Energy density -> co-energy density")
print("=" * 70)
print("variables: (star D, star B) components; dual variables: (e, h)")
print(f"{'eps':>6} {'mu':>6} {'numeric sup':>14} {'closed form':>14} {'gap':>10}")
for _ in range(5):
    eps = float(rng.uniform(0.2, 5.0))
    mu = float(rng.uniform(0.2, 5.0))
    p = rng.uniform(-2, 2, 6)
    value, argmax = legendre_transform(energy_quadratic(eps, mu), p)
    closed = 0.5 * (eps * p[:3] @ p[:3] + mu * p[3:] @ p[3:])
    print(f"{eps:6.3f} {mu:6.3f} {value:14.8f} {closed:14.8f} "
          f"{abs(value - closed):10.2e}")
print("the maximizer is the constitutive image of the dual point:")
print(f"argmax = {np.round(argmax, 6)}")
print(f"eps*p_e, mu*p_h = {np.round(np.concatenate([eps * p[:3], mu * p[3:]]), 6)}")

print()
print("=" * 70)
print("3. The transform is an involution on convex quadratics")
print("=" * 70)
worst = 0.0
for _ in range(200):
    n = int(rng.integers(1, 5))
    A = rng.standard_normal((n, n))
    gen = Generator.quadratic(A.T @ A + 0.4 * np.eye(n))
    x = rng.uniform(-2, 2, n)
    twice, _ = legendre_transform(legendre_dual(gen), x)
    worst = max(worst, abs(twice - gen.value(x)))
print(f"max |Leg[Leg[psi]](x) - psi(x)| over 200 random quadratics: {worst:.2e}")
