#!/usr/bin/env python3
# Numeric cocycles: period-polynomial values of modular forms, the
# cocycle relation, and the braid-group cocycle of the weight-two
# Eisenstein series.

import math

from mpmath import mp, zeta

from iterqm import (
    DELTA,
    E2,
    E4,
    b3_to_sl2,
    cocycle_r,
    e2_cocycle,
    quasimodular_cocycle,
    slash_poly,
)
from iterqm.cocycles import S, T, admissible_tau

print("The cocycle of E4 at the inversion S, evaluated from tau = i:")
V = cocycle_r(E4, S, 1j)
for j, c in enumerate(V.coeffs):
    print(f"  X^{2-j} Y^{j}: {complex(c):.12g}")
print("  closed forms:  -240*zeta(3) =", float(-240 * zeta(3)))
print("                 (5/3)(2pi)^3 =", float(mp.mpf(5) / 3 * (2 * mp.pi) ** 3))

print("\nCocycle values do not depend on the base point:")
r1 = cocycle_r(DELTA, S, 1.3j)
r2 = cocycle_r(DELTA, S, 0.4 + 0.9j)
print("  max coefficient difference:", float(r1.distance(r2)))

print("\nThe cocycle relation r(g1 g2) = r(g1)|g2 + r(g2):")
g1, g2 = T * S, S * T * T
lhs = cocycle_r(E4, g1 * g2, admissible_tau(g1 * g2))
rhs = slash_poly(cocycle_r(E4, g1, admissible_tau(g1)), g2) + cocycle_r(E4, g2, admissible_tau(g2))
print("  residual:", float(lhs.distance(rhs)))

print("\nE2 is not modular; its defect is a braid-group homomorphism")
print("valued in 2*pi*i*Z:")
for word, label in (
    ((1,), "sigma1"),
    ((2,), "sigma2"),
    ((1, 2, 1), "sigma1 sigma2 sigma1"),
    ((2, 1, 2), "sigma2 sigma1 sigma2"),
    ((1, 2) * 6, "(sigma1 sigma2)^6  [central]"),
):
    tau = admissible_tau(b3_to_sl2(word))
    value = complex(e2_cocycle(word, tau))
    print(f"  {label:28s} -> {value.imag / (2 * math.pi):+.9f} * 2 pi i")

print("\nA quasimodular form contributes one component per derivative order;")
print("E2^2 = E4 + 12 D(E2) gives a weight-4 polynomial piece and a braid piece:")
for comp in quasimodular_cocycle(E2 * E2, (1,), 1.3j):
    print(f"  degree {comp.degree}: {[complex(c) for c in comp.coeffs]}")
