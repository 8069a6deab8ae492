"""Watch an equivariant index refuse to move.

The index of a Dirac operator twisted so that the twist cancels the
Spin^c class is rigid under any circle in the torus: the character is a
constant Laurent polynomial in t.  When the anomaly count is negative
the constant is forced to be zero.  This script shows both effects on
sphere products, then shows the anomaly staying negative as the
dimension grows.
"""

from quasigenus import (anomaly_coefficient, equivariant_index,
                        equivariant_witten_genus, sphere_product_spin)

for n in (1, 2, 3):
    manifold = sphere_product_spin(n)
    xi = tuple(range(1, n + 1))
    print(f"=== (S^2)^{n}, circle xi = {xi} ===")
    print(f"anomaly coefficient: {anomaly_coefficient(manifold, xi)}")
    eq = equivariant_index(manifold, xi, None, 2)
    for d in range(3):
        print(f"  q^{d} character: {eq.q_coefficient(d)}")
    print(f"identically zero: {eq.is_identically_zero()}")
    print()

print("=== equivariant Witten genus of (S^2)^2 ===")
eq = equivariant_witten_genus(sphere_product_spin(2), (1, 3), 2)
for d in range(3):
    print(f"  q^{d} character: {eq.q_coefficient(d)}")
print()
print("Every character above is zero before any limit is taken: the")
print("fixed-point contributions cancel as rational functions of t.")
