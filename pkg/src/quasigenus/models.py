"""Stock manifolds used throughout the tests and demos."""

from .polytope import QuasitoricManifold, connected_sum, cube, simplex


def projective_space(n):
    """Complex projective n-space with the standard characteristic data."""
    rows = []
    for i in range(n):
        row = [0] * (n + 1)
        row[i] = 1
        row[n] = -1
        rows.append(row)
    return QuasitoricManifold(simplex(n), rows, [1] * (n + 1))


def sphere_product(n):
    """(S^2)^n with the product complex structure (not the spin one)."""
    rows = []
    for i in range(n):
        row = [0] * (2 * n)
        row[i] = 1
        row[n + i] = -1
        rows.append(row)
    return QuasitoricManifold(cube(n), rows, [1] * (2 * n))


def sphere_product_spin(n):
    """(S^2)^n with the bounding stably-complex structure; c1 = 0."""
    rows = []
    for i in range(n):
        row = [0] * (2 * n)
        row[i] = 1
        row[n + i] = 1
        rows.append(row)
    return QuasitoricManifold(cube(n), rows, [1] * (2 * n))


def cp2_connected_sum():
    """CP^2 # CP^2 as an equivariant connected sum at a fixed point."""
    p = connected_sum(simplex(2), (1, 2), simplex(2), (1, 2))
    rows = [
        [1, 0, 1, 1],
        [0, 1, 1, -1],
    ]
    return QuasitoricManifold(p, rows, [1, 1, 1, 1])
