"""Combinatorial polytopes and the torus-manifold data built on them.

A simple polytope is stored purely combinatorially: its dimension n, the
number m of facets (labelled 1..m), and the set of vertices, each vertex
being the n-subset of facets meeting it.  That is all the index machinery
ever looks at.

A quasitoric manifold is such a polytope together with an integer n x m
characteristic matrix whose vertex minors are unimodular, and a stable
complex twist vector of odd integers, one per facet.
"""

from collections import deque
from fractions import Fraction
from itertools import combinations, product as iproduct

from .errors import InputError
from .linalg import int_det, perm_parity


class SimplePolytope:
    """Facet-labelled combinatorial simple polytope.

    vertices: iterable of n-subsets of {1, ..., num_facets}.  Validation
    checks simplicity (every ridge lies in exactly two vertices), that the
    vertex-edge graph is connected, and that no facet is redundant.
    """

    __slots__ = ("dimension", "num_facets", "vertices", "_vertex_index")

    def __init__(self, dimension, num_facets, vertices):
        n, m = int(dimension), int(num_facets)
        if n < 1:
            raise InputError("polytope dimension must be at least 1")
        if m < n + 1:
            raise InputError(f"a simple {n}-polytope needs at least {n + 1} facets")
        verts = sorted({tuple(sorted(int(f) for f in v)) for v in vertices})
        for v in verts:
            if len(v) != n:
                raise InputError(f"vertex {v} does not have exactly {n} facets")
            if len(set(v)) != n:
                raise InputError(f"vertex {v} repeats a facet")
            if v[0] < 1 or v[-1] > m:
                raise InputError(f"vertex {v} uses a facet label outside 1..{m}")
        if not verts:
            raise InputError("polytope has no vertices")
        used = set()
        for v in verts:
            used.update(v)
        if used != set(range(1, m + 1)):
            missing = sorted(set(range(1, m + 1)) - used)
            raise InputError(f"facets {missing} appear in no vertex")
        self.dimension = n
        self.num_facets = m
        self.vertices = tuple(verts)
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._check_simplicity()

    def _check_simplicity(self):
        ridges = {}
        for v in self.vertices:
            for r in combinations(v, self.dimension - 1):
                ridges.setdefault(r, []).append(v)
        for r, vs in ridges.items():
            if len(vs) != 2:
                raise InputError(
                    f"ridge {r} lies in {len(vs)} vertices, expected exactly 2")
        # Connectivity of the edge graph.
        adj = {v: [] for v in self.vertices}
        for r, (a, b) in ridges.items():
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0]}
        queue = deque([self.vertices[0]])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(self.vertices):
            raise InputError("vertex-edge graph is disconnected")

    def is_face(self, facets):
        """True when the given facet set is contained in some vertex."""
        fs = set(facets)
        return any(fs.issubset(v) for v in self.vertices)

    def edges(self):
        """Pairs of adjacent vertices together with their shared ridge."""
        ridges = {}
        for v in self.vertices:
            for r in combinations(v, self.dimension - 1):
                ridges.setdefault(r, []).append(v)
        return [(vs[0], vs[1], r) for r, vs in sorted(ridges.items()) if len(vs) == 2]

    def __eq__(self, other):
        return (isinstance(other, SimplePolytope)
                and self.dimension == other.dimension
                and self.num_facets == other.num_facets
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.dimension, self.num_facets, self.vertices))

    def __repr__(self):
        return (f"SimplePolytope(dim={self.dimension}, facets={self.num_facets}, "
                f"vertices={len(self.vertices)})")


def simplex(n):
    """The n-simplex: facets 1..n+1, vertices drop one facet each."""
    labels = range(1, n + 2)
    verts = [tuple(j for j in labels if j != skip) for skip in labels]
    return SimplePolytope(n, n + 1, verts)


def cube(n):
    """The n-cube.  Facet i is the lower facet of axis i, facet n+i the upper."""
    verts = []
    for choice in iproduct((0, 1), repeat=n):
        verts.append(tuple(sorted(i + 1 + n * c for i, c in enumerate(choice))))
    return SimplePolytope(n, 2 * n, verts)


def polygon(k):
    """The k-gon with facets (edges) labelled cyclically."""
    if k < 3:
        raise InputError("a polygon needs at least 3 edges")
    verts = [(i, i % k + 1) for i in range(1, k + 1)]
    return SimplePolytope(2, k, verts)


def polytope_product(p, q):
    """Cartesian product; the second factor's facets are shifted by p's count."""
    shift = p.num_facets
    verts = [tuple(sorted(a + tuple(f + shift for f in b)))
             for a in p.vertices for b in q.vertices]
    return SimplePolytope(p.dimension + q.dimension, shift + q.num_facets, verts)


def vertex_cut(p, vertex):
    """Truncate one vertex; the fresh facet gets label m + 1."""
    v = tuple(sorted(vertex))
    if v not in p.vertices:
        raise InputError(f"{v} is not a vertex of the polytope")
    fresh = p.num_facets + 1
    verts = [w for w in p.vertices if w != v]
    for drop in v:
        verts.append(tuple(sorted([f for f in v if f != drop] + [fresh])))
    return SimplePolytope(p.dimension, fresh, verts)


def connected_sum(p, vp, q, vq, pairing=None):
    """Connected sum of two simple polytopes at the given vertices.

    Both vertices are removed; the facets through vq are identified with the
    facets through vp.  By default the k-th smallest facet label of vq is
    glued to the k-th smallest of vp; ``pairing`` may override this with a
    dict {facet of q: facet of p} covering exactly the facets of vq.
    """
    if p.dimension != q.dimension:
        raise InputError("connected sum needs equal dimensions")
    vp = tuple(sorted(vp))
    vq = tuple(sorted(vq))
    if vp not in p.vertices:
        raise InputError(f"{vp} is not a vertex of the first summand")
    if vq not in q.vertices:
        raise InputError(f"{vq} is not a vertex of the second summand")
    if pairing is None:
        pairing = dict(zip(vq, vp))
    else:
        pairing = {int(a): int(b) for a, b in pairing.items()}
        if sorted(pairing) != list(vq) or sorted(pairing.values()) != list(vp):
            raise InputError("pairing must match the cut vertices' facets")
    relabel = dict(pairing)
    fresh = p.num_facets
    for f in range(1, q.num_facets + 1):
        if f not in relabel:
            fresh += 1
            relabel[f] = fresh
    verts = [w for w in p.vertices if w != vp]
    for w in q.vertices:
        if w == vq:
            continue
        verts.append(tuple(sorted(relabel[f] for f in w)))
    return SimplePolytope(p.dimension, fresh, verts)


def _int_inverse(mat):
    """Inverse of a unimodular integer matrix, as integer rows."""
    n = len(mat)
    det = int_det(mat)
    if det not in (1, -1):
        raise InputError(f"matrix determinant {det} is not a unit")
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[mat[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = int_det(minor) * (-1) ** (i + j)
            row.append(cof * det)
        inv.append(row)
    return inv


class FixedPointDatum:
    """Localization data at one fixed point (vertex) of the torus action.

    weights[k] is the character of the k-th tangent line, dual to the
    characteristic vector of facet vertex[k]; sign is the raw determinant
    of the characteristic minor, before any global orientation is chosen.
    """

    __slots__ = ("vertex", "weights", "sign")

    def __init__(self, vertex, weights, sign):
        self.vertex = tuple(vertex)
        self.weights = tuple(tuple(w) for w in weights)
        self.sign = int(sign)

    def facet_position(self, facet):
        return self.vertex.index(facet)

    def __repr__(self):
        return f"FixedPointDatum(vertex={self.vertex}, sign={self.sign})"


class QuasitoricManifold:
    """Characteristic data over a simple polytope, with an odd twist vector.

    char_matrix: n rows of m integers; column j is the circle subgroup
    collapsing over facet j.  Every vertex minor must have determinant +-1.
    spin_c: m odd integers fixing the stable complex twist; its facet sum
    is the first Chern class of the twist line bundle.
    """

    __slots__ = ("polytope", "char_matrix", "spin_c",
                 "_fixed", "_signs")

    def __init__(self, polytope, char_matrix, spin_c):
        n, m = polytope.dimension, polytope.num_facets
        rows = tuple(tuple(int(x) for x in row) for row in char_matrix)
        if len(rows) != n or any(len(r) != m for r in rows):
            raise InputError(
                f"characteristic matrix must be {n} x {m}")
        gam = tuple(int(g) for g in spin_c)
        if len(gam) != m:
            raise InputError(f"twist vector needs one entry per facet ({m})")
        odd_fail = [j + 1 for j, g in enumerate(gam) if g % 2 == 0]
        if odd_fail:
            raise InputError(
                f"twist entries at facets {odd_fail} are even; all must be odd")
        self.polytope = polytope
        self.char_matrix = rows
        self.spin_c = gam
        for v in polytope.vertices:
            d = int_det(self.minor(v))
            if d not in (1, -1):
                raise InputError(
                    f"vertex {v} has characteristic minor determinant {d}")
        self._fixed = None
        self._signs = None

    @property
    def dimension(self):
        return self.polytope.dimension

    @property
    def num_facets(self):
        return self.polytope.num_facets

    def column(self, facet):
        return tuple(row[facet - 1] for row in self.char_matrix)

    def minor(self, vertex):
        """Square matrix whose columns are the vertex's facet vectors, sorted."""
        cols = [self.column(f) for f in sorted(vertex)]
        return [[cols[k][i] for k in range(len(cols))]
                for i in range(self.dimension)]

    def fixed_points(self):
        """One FixedPointDatum per vertex, in sorted vertex order."""
        if self._fixed is None:
            data = []
            for v in self.polytope.vertices:
                minor = self.minor(v)
                det = int_det(minor)
                weights = _int_inverse(minor)
                data.append(FixedPointDatum(v, weights, det))
            self._fixed = tuple(data)
        return self._fixed

    def orientation_signs(self):
        """Coherent signs eps(v), +1 at the smallest vertex, spread by ridges.

        Crossing a ridge flips the sign, corrected by the parities of the
        shuffles that move the swapped facet to the end of each vertex.
        An inconsistency means the vertex complex is not an orientable
        sphere, which the constructor's checks cannot fully exclude.
        """
        if self._signs is not None:
            return self._signs
        p = self.polytope
        eps = {p.vertices[0]: 1}
        queue = deque([p.vertices[0]])
        adj = {}
        for a, b, r in p.edges():
            adj.setdefault(a, []).append((b, r))
            adj.setdefault(b, []).append((a, r))

        def shuffle_sign(vertex, ridge):
            # Parity of moving the non-shared facet past the ridge facets.
            extra = next(f for f in vertex if f not in ridge)
            return perm_parity([*sorted(ridge), extra])

        while queue:
            a = queue.popleft()
            for b, r in adj.get(a, ()):
                val = -eps[a] * shuffle_sign(a, r) * shuffle_sign(b, r)
                if b in eps:
                    if eps[b] != val:
                        raise InputError(
                            "orientation signs are inconsistent; the polytope "
                            "boundary is not an orientable sphere")
                else:
                    eps[b] = val
                    queue.append(b)
        self._signs = eps
        return eps

    def vertex_sign(self, vertex):
        """Oriented localization sign: eps(v) times the minor determinant."""
        v = tuple(sorted(vertex))
        datum = next(d for d in self.fixed_points() if d.vertex == v)
        return self.orientation_signs()[v] * datum.sign

    def twist_c1_pairing(self, datum):
        """Restriction of the twist class at a fixed point: sum gamma_j w_j."""
        n = self.dimension
        out = [0] * n
        for k, f in enumerate(datum.vertex):
            g = self.spin_c[f - 1]
            for i in range(n):
                out[i] += g * datum.weights[k][i]
        return tuple(out)

    def __repr__(self):
        return (f"QuasitoricManifold(dim={self.dimension}, "
                f"facets={self.num_facets})")


def _free_columns(polytope):
    """Facets outside the smallest vertex, the gauge-fixed identity minor."""
    base = polytope.vertices[0]
    return [f for f in range(1, polytope.num_facets + 1) if f not in base]


def _vertices_by_column(polytope, free):
    """For each free column, the vertices whose minors close at that column."""
    order = {f: i for i, f in enumerate(free)}
    buckets = [[] for _ in free]
    for v in polytope.vertices:
        outside = [f for f in v if f in order]
        if outside:
            buckets[max(order[f] for f in outside)].append(v)
    return buckets


def enumerate_characteristic_matrices(polytope, bound, prefix=None):
    """All gauge-fixed characteristic matrices with free entries in [-bound, bound].

    The minor at the smallest vertex is pinned to the identity; remaining
    columns are enumerated by backtracking, checking each vertex minor as
    soon as all of its columns are decided.  ``prefix`` optionally fixes the
    first few free columns (used to split the search into parallel tasks).
    Yields full n x m integer matrices.
    """
    n = polytope.dimension
    base = polytope.vertices[0]
    free = _free_columns(polytope)
    buckets = _vertices_by_column(polytope, free)
    cols = {f: None for f in range(1, polytope.num_facets + 1)}
    for k, f in enumerate(base):
        cols[f] = tuple(1 if i == k else 0 for i in range(n))
    prefix = list(prefix or [])
    if len(prefix) > len(free):
        raise InputError("prefix longer than the free column list")

    entries = range(-bound, bound + 1)
    candidates = [tuple(c) for c in iproduct(entries, repeat=n)]

    def minors_ok(idx):
        for v in buckets[idx]:
            mat = [[cols[f][i] for f in v] for i in range(n)]
            if int_det(mat) not in (1, -1):
                return False
        return True

    def emit():
        return tuple(tuple(cols[f][i] for f in range(1, polytope.num_facets + 1))
                     for i in range(n))

    def rec(idx):
        if idx == len(free):
            yield emit()
            return
        if idx < len(prefix):
            cols[free[idx]] = tuple(prefix[idx])
            if minors_ok(idx):
                yield from rec(idx + 1)
            cols[free[idx]] = None
            return
        for cand in candidates:
            cols[free[idx]] = cand
            if minors_ok(idx):
                yield from rec(idx + 1)
        cols[free[idx]] = None

    yield from rec(0)


def enumeration_tasks(polytope, bound):
    """Split the census into independent prefix tasks, one per first column."""
    free = _free_columns(polytope)
    if not free:
        return [[]]
    n = polytope.dimension
    entries = range(-bound, bound + 1)
    return [[tuple(c)] for c in iproduct(entries, repeat=n)]
