"""Exact dense linear algebra over Fraction, the integers and GF(2).

Everything here works on plain lists of lists.  Matrices are small (at most
a dozen rows at desk scale) so simplicity beats asymptotics throughout.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def mat_vec(mat, vec):
    return [sum(a * x for a, x in zip(row, vec)) for row in mat]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def rref(rows):
    """Reduced row echelon form over Fraction.

    Returns (reduced nonzero rows, pivot column indices).  The input is not
    modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows):
    """Basis of the right kernel, one vector per free column.

    Each basis vector has entry 1 at its free column; computed from the
    reduced row echelon form, so the result is deterministic.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve_in_span(basis_rows, target):
    """Coordinates of target in the row span of basis_rows, or None."""
    if not basis_rows:
        return None if any(x != 0 for x in target) else []
    n = len(basis_rows)
    # Solve basis^T * c = target by row reducing [basis^T | target].
    cols = transpose(basis_rows)
    m = [[Fraction(x) for x in row] + [Fraction(t)] for row, t in zip(cols, target)]
    red, pivots = rref(m)
    if n in pivots:
        return None
    coords = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        coords[p] = red[r][n]
    # Verify (the system may be underdetermined only if basis rows are
    # dependent, which callers avoid; check anyway).
    check = [sum(c * row[j] for c, row in zip(coords, basis_rows)) for j in range(len(target))]
    if any(a != b for a, b in zip(check, target)):
        return None
    return coords


def int_det(mat):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def perm_parity(perm):
    """Sign of a permutation given as a sequence of distinct comparables."""
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def gf2_solve(rows, target):
    """Solve x * rows = target over GF(2); returns a 0/1 list or None.

    rows is a list of length-m vectors; the solution x has one bit per row.
    """
    nrows = len(rows)
    if nrows == 0:
        return None if any(t % 2 for t in target) else []
    ncols = len(rows[0])
    # Augment each column equation; work with rows^T x = target.
    m = [[rows[r][c] % 2 for r in range(nrows)] + [target[c] % 2] for c in range(ncols)]
    pivots = []
    r = 0
    for c in range(nrows):
        pivot = next((i for i in range(r, ncols) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(ncols):
            if i != r and m[i][c]:
                m[i] = [(x + y) % 2 for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == ncols:
            break
    for i in range(r, ncols):
        if m[i][nrows]:
            return None
    x = [0] * nrows
    for i, c in enumerate(pivots):
        x[c] = m[i][nrows]
    return x


def _bezout(a, b):
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        return -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _gcd_rowop(a, b):
    """2x2 integer matrix M with det 1 and M @ (a, b) = (gcd, 0).

    When a already divides b the result is a transvection (first row
    (+-1, 0)), so clearing an entry the pivot divides never mixes the
    cleared line back into the pivot line; without that guarantee the
    alternating sweeps in smith_normal_form can cycle forever.
    """
    if a != 0 and b % a == 0:
        s = 1 if a > 0 else -1
        return [[s, 0], [-(b // a) * s, s]]
    g, u, v = _bezout(a, b)
    return [[u, v], [-b // g, a // g]]


def smith_normal_form(mat):
    """Integer matrices (S, D, T) with mat = S @ D @ T, S and T unimodular.

    D is diagonal (no divisibility chain is enforced; only the zero pattern
    and unimodularity of S, T are needed by callers).
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    d = [list(row) for row in mat]
    s = identity(nrows)
    t = identity(ncols)

    def clear_col(k):
        changed = False
        for i in range(k + 1, nrows):
            if d[i][k] == 0:
                continue
            changed = True
            m = _gcd_rowop(d[k][k], d[i][k])
            minv = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
            rk = [m[0][0] * d[k][j] + m[0][1] * d[i][j] for j in range(ncols)]
            ri = [m[1][0] * d[k][j] + m[1][1] * d[i][j] for j in range(ncols)]
            d[k], d[i] = rk, ri
            for r in range(nrows):
                sk = s[r][k] * minv[0][0] + s[r][i] * minv[1][0]
                si = s[r][k] * minv[0][1] + s[r][i] * minv[1][1]
                s[r][k], s[r][i] = sk, si
        return changed

    def clear_row(k):
        changed = False
        for j in range(k + 1, ncols):
            if d[k][j] == 0:
                continue
            changed = True
            m = _gcd_rowop(d[k][k], d[k][j])
            minv = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
            for r in range(nrows):
                ck = d[r][k] * m[0][0] + d[r][j] * m[0][1]
                cj = d[r][k] * m[1][0] + d[r][j] * m[1][1]
                d[r][k], d[r][j] = ck, cj
            for c in range(ncols):
                tk = minv[0][0] * t[k][c] + minv[1][0] * t[j][c]
                tj = minv[0][1] * t[k][c] + minv[1][1] * t[j][c]
                t[k][c], t[j][c] = tk, tj
        return changed

    for k in range(min(nrows, ncols)):
        # Move a nonzero entry to the diagonal slot if the remainder is nonzero.
        if d[k][k] == 0:
            spot = next(((i, j) for i in range(k, nrows) for j in range(k, ncols) if d[i][j] != 0), None)
            if spot is None:
                break
            i, j = spot
            if i != k:
                d[k], d[i] = d[i], d[k]
                for r in range(nrows):
                    s[r][k], s[r][i] = s[r][i], s[r][k]
            if j != k:
                for r in range(nrows):
                    d[r][k], d[r][j] = d[r][j], d[r][k]
                t[k], t[j] = t[j], t[k]
        while clear_col(k) or clear_row(k):
            pass
    return s, d, t


def primitive_vector(vec):
    """Scale a nonzero rational vector to a primitive integer vector.

    Clears denominators, divides by the gcd and flips signs so the first
    nonzero entry is positive.
    """
    fr = [Fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive form")
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def is_primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(int(x)))
    return g == 1
