"""Rational cohomology of quasitoric manifolds, exactly.

The ring is the facet-class polynomial algebra modulo the monomial ideal of
non-intersecting facet sets and the n linear relations read off the rows of
the characteristic matrix.  Everything is represented on explicit per-degree
monomial bases computed by dense Fraction row reduction; no Groebner
machinery, the rings are tiny.

Integration against the fundamental class is normalised so that the product
of the facet classes through the lexicographically least vertex integrates
to the determinant of that vertex's characteristic minor.  The localization
engine independently computes the same pairings, which pins the orientation
convention and doubles as an oracle.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .errors import InputError, PropertyViolationError, RingShapeError
from .linalg import rref, solve_in_span


class CohomologyClass:
    """Element of a ring with a fixed basis of hashable tokens.

    ``terms`` maps basis tokens to Fraction coefficients; zero coefficients
    are never stored.  Mixed degrees are allowed (the genus integrand is
    inhomogeneous).  Instances are immutable by convention.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        clean = {}
        for tok, c in terms.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c != 0:
                clean[tok] = c
        self.ring = ring
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return CohomologyClass(self.ring, {t: -c for t, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if self.ring is not other.ring:
            raise InputError("classes live in different rings")
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = out.get(t, Fraction(0)) + c
            if s == 0:
                out.pop(t, None)
            else:
                out[t] = s
        return CohomologyClass(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CohomologyClass(self.ring, {t: c * f for t, c in self.terms.items()})
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if self.ring is not other.ring:
            raise InputError("classes live in different rings")
        out = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                for t, c in self.ring.mul_basis(t1, t2).items():
                    s = out.get(t, Fraction(0)) + c1 * c2 * c
                    if s == 0:
                        out.pop(t, None)
                    else:
                        out[t] = s
        return CohomologyClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def homogeneous_part(self, degree):
        return CohomologyClass(self.ring, {
            t: c for t, c in self.terms.items()
            if self.ring.token_degree(t) == degree})

    def max_degree(self):
        return max((self.ring.token_degree(t) for t in self.terms), default=0)

    def integrate(self):
        return self.ring.integrate(self)

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda t: (self.ring.token_degree(t), str(t)))
        return " + ".join(f"{self.terms[t]}*{self.ring.token_name(t)}" for t in keys)

    def __repr__(self):
        return f"CohomologyClass({self})"


class FaceRing:
    """H*(M; Q) for a quasitoric M, on explicit monomial bases.

    Basis tokens are sorted tuples of facet labels with repetition; the
    empty tuple is 1.  ``reduce_monomial`` expresses any facet monomial in
    the chosen basis (or as 0), and all class arithmetic funnels through it.
    """

    def __init__(self, manifold):
        self.manifold = manifold
        p = manifold.polytope
        n, m = p.dimension, p.num_facets
        self.dimension = n
        self.num_generators = m
        self._face_cache = {}
        self._bases = []
        self._reductions = []
        for d in range(n + 2):
            basis, reduction = self._build_degree(d)
            self._bases.append(basis)
            self._reductions.append(reduction)
        if len(self._bases[n]) != 1:
            raise PropertyViolationError(
                f"top cohomology has dimension {len(self._bases[n])}, expected 1; "
                "the characteristic data is inconsistent")
        if self._bases[n + 1]:
            raise PropertyViolationError(
                "cohomology does not vanish above the top degree; "
                "the characteristic data is inconsistent")
        self._bases = self._bases[: n + 1]
        self._top_token = self._bases[n][0]
        self._top_value = self._normalise()

    # -- construction ----------------------------------------------------

    def _is_face(self, support):
        got = self._face_cache.get(support)
        if got is None:
            got = self.manifold.polytope.is_face(support)
            self._face_cache[support] = got
        return got

    def _face_monomials(self, d):
        m = self.num_generators
        out = []
        for mono in combinations_with_replacement(range(1, m + 1), d):
            if self._is_face(tuple(sorted(set(mono)))):
                out.append(mono)
        return out

    def _build_degree(self, d):
        if d == 0:
            return ((),), {(): {(): Fraction(1)}}
        monos = self._face_monomials(d)
        index = {mono: i for i, mono in enumerate(monos)}
        lam = self.manifold.char_matrix
        rows = []
        for lower in self._face_monomials(d - 1):
            for lam_row in lam:
                row = [Fraction(0)] * len(monos)
                nonzero = False
                for j in range(1, self.num_generators + 1):
                    coeff = lam_row[j - 1]
                    if coeff == 0:
                        continue
                    mono = tuple(sorted(lower + (j,)))
                    pos = index.get(mono)
                    if pos is not None:
                        row[pos] += coeff
                        nonzero = True
                if nonzero:
                    rows.append(row)
        if rows:
            red, pivots = rref(rows)
        else:
            red, pivots = [], []
        pivot_set = set(pivots)
        basis = tuple(monos[i] for i in range(len(monos)) if i not in pivot_set)
        reduction = {}
        for mono in basis:
            reduction[mono] = {mono: Fraction(1)}
        for r, pcol in enumerate(pivots):
            expr = {}
            for i, mono in enumerate(monos):
                if i in pivot_set or red[r][i] == 0:
                    continue
                expr[mono] = -red[r][i]
            reduction[monos[pcol]] = expr
        return basis, reduction

    def _normalise(self):
        v0 = self.manifold.polytope.vertices[0]
        mono = tuple(sorted(v0))
        expr = self.reduce_monomial(mono)
        coeff = expr.get(self._top_token, Fraction(0))
        if coeff == 0:
            raise PropertyViolationError(
                "the base vertex monomial vanishes in cohomology; "
                "characteristic data is inconsistent")
        from .linalg import int_det
        return Fraction(int_det(self.manifold.minor(v0))) / coeff

    # -- ring interface ---------------------------------------------------

    def token_degree(self, token):
        return len(token)

    def token_name(self, token):
        if not token:
            return "1"
        parts = []
        for f in sorted(set(token)):
            e = token.count(f)
            parts.append(f"v{f}" if e == 1 else f"v{f}^{e}")
        return "*".join(parts)

    def basis(self, degree):
        if 0 <= degree <= self.dimension:
            return self._bases[degree]
        return ()

    def betti_numbers(self):
        """Even Betti numbers b_0, b_2, ..., b_2n."""
        return tuple(len(b) for b in self._bases)

    def reduce_monomial(self, mono):
        d = len(mono)
        if d > self.dimension:
            return {}
        if not self._is_face(tuple(sorted(set(mono)))):
            return {}
        got = self._reductions[d].get(mono)
        return got if got is not None else {}

    def mul_basis(self, t1, t2):
        return self.reduce_monomial(tuple(sorted(t1 + t2)))

    def zero(self):
        return CohomologyClass(self, {})

    def one(self):
        return CohomologyClass(self, {(): Fraction(1)})

    def constant(self, c):
        return CohomologyClass(self, {(): Fraction(c)})

    def facet_class(self, j):
        if not 1 <= j <= self.num_generators:
            raise InputError(f"facet label {j} out of range")
        return CohomologyClass(self, self.reduce_monomial((j,)))

    def line_class(self, coefficients):
        """Degree-2 class sum coefficients[j] * v_{j+1}."""
        if len(coefficients) != self.num_generators:
            raise InputError("line coefficients must have one entry per facet")
        out = self.zero()
        for j, c in enumerate(coefficients):
            if c:
                out = out + self.facet_class(j + 1) * Fraction(c)
        return out

    def integrate(self, cls):
        if cls.ring is not self:
            raise InputError("class belongs to a different ring")
        return cls.terms.get(self._top_token, Fraction(0)) * self._top_value

    # -- characteristic classes -------------------------------------------

    def pontryagin_p1(self):
        out = self.zero()
        for j in range(1, self.num_generators + 1):
            vj = self.facet_class(j)
            out = out + vj * vj
        return out

    def spinc_c1(self):
        return self.line_class(self.manifold.spin_c)


def build_face_ring(manifold):
    return FaceRing(manifold)


class SyntheticConnectedSumRing:
    """The cohomology of a k-fold connected sum of complex projective
    spaces, possibly with reversed orientations, prescribed directly.

    Generators g_1..g_k in degree 2, relations g_i g_j = 0 for i != j and
    g_i^n = signs[i] * (top class).  Unlike FaceRing this ring is not tied
    to any characteristic data: it exists to exercise constructions whose
    hypotheses real manifolds cannot satisfy.
    """

    TOP = ("top",)
    ONE = ()

    def __init__(self, dimension, summands, signs=None):
        n, k = int(dimension), int(summands)
        if n < 2:
            raise InputError("connected-sum pattern needs dimension at least 2")
        if k < 1:
            raise InputError("need at least one summand")
        signs = tuple(int(s) for s in (signs or (1,) * k))
        if len(signs) != k or any(s not in (1, -1) for s in signs):
            raise InputError("signs must be +-1, one per summand")
        self.dimension = n
        self.num_generators = k
        self.signs = signs

    def token_degree(self, token):
        if token == self.ONE:
            return 0
        if token == self.TOP:
            return self.dimension
        return token[2]

    def token_name(self, token):
        if token == self.ONE:
            return "1"
        if token == self.TOP:
            return "top"
        _, i, d = token
        return f"g{i}" if d == 1 else f"g{i}^{d}"

    def basis(self, degree):
        n, k = self.dimension, self.num_generators
        if degree == 0:
            return (self.ONE,)
        if degree == n:
            return (self.TOP,)
        if 0 < degree < n:
            return tuple(("g", i, degree) for i in range(1, k + 1))
        return ()

    def mul_basis(self, t1, t2):
        if t1 == self.ONE:
            return {t2: Fraction(1)}
        if t2 == self.ONE:
            return {t1: Fraction(1)}
        if t1 == self.TOP or t2 == self.TOP:
            return {}
        _, i, d1 = t1
        _, j, d2 = t2
        if i != j:
            return {}
        d = d1 + d2
        if d < self.dimension:
            return {("g", i, d): Fraction(1)}
        if d == self.dimension:
            return {self.TOP: Fraction(self.signs[i - 1])}
        return {}

    def zero(self):
        return CohomologyClass(self, {})

    def one(self):
        return CohomologyClass(self, {self.ONE: Fraction(1)})

    def constant(self, c):
        return CohomologyClass(self, {self.ONE: Fraction(c)})

    def generator(self, i):
        if not 1 <= i <= self.num_generators:
            raise InputError(f"generator index {i} out of range")
        if self.dimension == 1:
            return CohomologyClass(self, {self.TOP: Fraction(self.signs[i - 1])})
        return CohomologyClass(self, {("g", i, 1): Fraction(1)})

    def generator_combination(self, coefficients):
        out = self.zero()
        for i, c in enumerate(coefficients):
            if c:
                out = out + self.generator(i + 1) * Fraction(c)
        return out

    def integrate(self, cls):
        if cls.ring is not self:
            raise InputError("class belongs to a different ring")
        return cls.terms.get(self.TOP, Fraction(0))

    def pontryagin_p1_from(self, beta):
        """The degree-4 class sum beta[i] * g_{i+1}^2 (prescribed data)."""
        if len(beta) != self.num_generators:
            raise InputError("need one coefficient per summand")
        out = self.zero()
        for i, b in enumerate(beta):
            g = self.generator(i + 1)
            out = out + g * g * Fraction(b)
        return out


def _candidate_generator_sets(ring):
    """Lex-ordered k-subsets of facets whose classes pairwise multiply to 0
    and form a basis of the degree-2 part."""
    k = len(ring.basis(1))
    m = ring.num_generators
    basis1 = ring.basis(1)
    for facets in combinations(range(1, m + 1), k):
        classes = [ring.facet_class(j) for j in facets]
        if any(c.is_zero() for c in classes):
            continue
        ok = True
        for a in range(k):
            for b in range(a + 1, k):
                if not (classes[a] * classes[b]).is_zero():
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        mat = [[cls.terms.get(tok, Fraction(0)) for tok in basis1] for cls in classes]
        red, pivots = rref(mat)
        if len(pivots) == k:
            yield facets, classes


def p1_square_coefficients(manifold, ring=None):
    """Coefficients of p1 on the squares of canonical degree-2 generators.

    The generators are the lexicographically least set of facet classes that
    pairwise multiply to zero and span the degree-2 part; their squares must
    be a basis of the degree-4 part, which is the connected-sum-of-
    projective-spaces ring shape.  Returns the coefficient list in generator
    order.  Raises RingShapeError when the ring does not have this shape,
    and always for dimension 2, where squares cannot form a degree-4 basis
    in the intended sense and no generalization is attempted.
    """
    if manifold.dimension == 2:
        raise RingShapeError(
            "square-coefficient extraction is undefined for dimension 2; "
            "use facet_class_decomposition instead")
    if ring is None:
        ring = build_face_ring(manifold)
    k = len(ring.basis(1))
    basis2 = ring.basis(2)
    if len(basis2) != k:
        raise RingShapeError(
            f"degree-4 part has dimension {len(basis2)}, expected {k}; "
            "not a connected-sum pattern")
    for facets, classes in _candidate_generator_sets(ring):
        squares = [c * c for c in classes]
        mat = [[s.terms.get(tok, Fraction(0)) for tok in basis2] for s in squares]
        red, pivots = rref(mat)
        if len(pivots) != k:
            continue
        p1 = ring.pontryagin_p1()
        target = [p1.terms.get(tok, Fraction(0)) for tok in basis2]
        coords = solve_in_span(mat, target)
        if coords is None:
            continue
        return list(coords)
    raise RingShapeError(
        "no facet-class generator set with vanishing pairwise products "
        "and independent squares exists; not a connected-sum pattern")


def facet_class_decomposition(manifold, ring=None):
    """Integral decomposition of all facet classes over canonical generators.

    Searches for the lexicographically least facet subset whose classes
    pairwise multiply to zero, span the degree-2 part, and express every
    facet class with integer coordinates.  Returns (generator facets,
    integer coordinate matrix with one row per facet, squared-column-sum
    list).  The last item gives the p1 coefficients on the generator
    squares whenever those squares are independent, and is meaningful for
    dimension 2 as well.
    """
    if ring is None:
        ring = build_face_ring(manifold)
    k = len(ring.basis(1))
    basis1 = ring.basis(1)
    for facets, classes in _candidate_generator_sets(ring):
        gen_rows = [[cls.terms.get(tok, Fraction(0)) for tok in basis1]
                    for cls in classes]
        alpha = []
        ok = True
        for j in range(1, ring.num_generators + 1):
            target = [ring.facet_class(j).terms.get(tok, Fraction(0))
                      for tok in basis1]
            coords = solve_in_span(gen_rows, target)
            if coords is None or any(c.denominator != 1 for c in coords):
                ok = False
                break
            alpha.append([int(c) for c in coords])
        if not ok:
            continue
        beta = [sum(row[i] ** 2 for row in alpha) for i in range(k)]
        # Cross-check: with pairwise-zero generators the facet-square sum
        # must reproduce p1 on the nose.
        p1 = ring.pontryagin_p1()
        recon = ring.zero()
        for i, b in enumerate(beta):
            g = classes[i]
            recon = recon + g * g * Fraction(b)
        if not (p1 - recon).is_zero():
            raise PropertyViolationError(
                "facet-square decomposition does not reproduce p1; "
                "generator products are not honestly zero")
        return facets, alpha, beta
    raise RingShapeError(
        "no facet-class generator set admits an integral decomposition "
        "of every facet class; not a connected-sum pattern")
