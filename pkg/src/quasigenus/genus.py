"""Twisted Dirac-operator indices of quasitoric manifolds, two ways.

Localization route: the circle-equivariant index is a Laurent polynomial in
the circle character t for each power of q.  Each fixed point contributes a
rational function of t; the engine never manipulates rational functions
symbolically.  Instead it bounds, per q-degree, the exponent window the
total can occupy (order at t=0 and degree at t=infinity add over products
and merge over sums), samples the fixed-point sum at integer t-values,
interpolates exactly, and verifies the fit on held-out samples.  A failed
check aborts the computation; it is never papered over.

Cohomological route: expand the universal one-root power series of each
index factor as q-series with nilpotent-polynomial coefficients, substitute
the facet classes of the stable tangent splitting, multiply in the twist
and bundle factors, and integrate.  The two routes agreeing exactly is the
workbench's core consistency contract.

Exponent bookkeeping: t^(1/2) never appears at run time.  With an all-odd
twist vector, (twist character + sum of tangent weights) is even at every
vertex, and spin W-data shifts it by a constant, so contributions share one
global half-integer parity.  The engine works with the integer-normalised
exponents and doubles them back, adding the parity, only when packaging
the final Laurent polynomials.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .errors import (BundleSpinError, DegenerateCircleError, InputError,
                     ParityError, PropertyViolationError, SpinObstructionError)
from .exactalg import Envelope, HalfLaurent, QSeries, TruncatedPolynomial, laurent_interpolate
from .linalg import gf2_solve
from .cohomology import build_face_ring


class CircleSubgroup:
    """A circle in the torus, given by an integer lattice vector."""

    __slots__ = ("xi",)

    def __init__(self, xi):
        xi = tuple(int(x) for x in xi)
        if not xi or all(x == 0 for x in xi):
            raise InputError("circle vector must be nonzero")
        self.xi = xi

    def is_primitive(self):
        g = 0
        for x in self.xi:
            g = math.gcd(g, abs(x))
        return g == 1

    def __eq__(self, other):
        return isinstance(other, CircleSubgroup) and self.xi == other.xi

    def __hash__(self):
        return hash(self.xi)

    def __repr__(self):
        return f"CircleSubgroup({list(self.xi)})"


class BundleSpec:
    """Twisting data: lists of line-bundle facet-coefficient vectors.

    Each entry of V or W is a length-m integer vector c, describing the
    line bundle whose first Chern class is sum c_j v_j.  The W part must
    satisfy the spin condition relative to the manifold it is used with
    (checked by validate_for, not at construction: the same spec may be
    spin for one characteristic matrix and not another).
    """

    __slots__ = ("v_lines", "w_lines")

    def __init__(self, v_lines=(), w_lines=()):
        self.v_lines = tuple(tuple(int(c) for c in line) for line in v_lines)
        self.w_lines = tuple(tuple(int(c) for c in line) for line in w_lines)

    @staticmethod
    def empty():
        return BundleSpec((), ())

    def is_empty(self):
        return not self.v_lines and not self.w_lines

    def validate_for(self, manifold):
        m = manifold.num_facets
        for line in self.v_lines + self.w_lines:
            if len(line) != m:
                raise InputError(
                    f"bundle line {line} needs one coefficient per facet ({m})")
        if self.w_lines:
            total = [sum(line[j] for line in self.w_lines) % 2 for j in range(m)]
            if any(total):
                # The sum of the W first Chern classes must vanish mod 2 in
                # H^2(M; Z/2) = Z_2^m / rowspan(characteristic matrix).
                if gf2_solve(list(manifold.char_matrix), total) is None:
                    raise BundleSpinError(
                        "W part is not spin: the mod-2 sum of its line "
                        f"coefficients is {total}, which is not a mod-2 "
                        "combination of the characteristic matrix rows")

    def __eq__(self, other):
        return (isinstance(other, BundleSpec)
                and self.v_lines == other.v_lines
                and self.w_lines == other.w_lines)

    def __repr__(self):
        return f"BundleSpec(V={len(self.v_lines)} lines, W={len(self.w_lines)} lines)"


class EquivariantIndex:
    """A q-series of circle characters (Laurent polynomials in t^(1/2))."""

    __slots__ = ("series", "xi", "parity")

    def __init__(self, series, xi, parity):
        self.series = series
        self.xi = xi
        self.parity = parity

    @property
    def q_order(self):
        return self.series.order

    def q_coefficient(self, d):
        return self.series.coeffs[d]

    def is_identically_zero(self):
        return all(not c.coeffs for c in self.series.coeffs)

    def value_at_one(self):
        return QSeries([c.value_at_one() for c in self.series.coeffs],
                       self.series.order)

    def __eq__(self, other):
        if not isinstance(other, EquivariantIndex):
            return NotImplemented
        return self.series == other.series and self.xi == other.xi

    def __str__(self):
        return " + ".join(
            f"({c})*q^{d}" if d else f"({c})"
            for d, c in enumerate(self.series.coeffs))


def _as_circle(xi):
    return xi if isinstance(xi, CircleSubgroup) else CircleSubgroup(xi)


def _dot(vec, xi):
    return sum(a * b for a, b in zip(vec, xi))


class _VertexTerm:
    """Everything the sampler needs about one fixed point."""

    __slots__ = ("vertex", "sigma", "tangent", "c", "v_weights", "w_weights",
                 "zero", "halfexp")

    def __init__(self, vertex, sigma, tangent, c, v_weights, w_weights):
        self.vertex = vertex
        self.sigma = sigma
        self.tangent = tangent
        self.c = c
        self.v_weights = v_weights
        self.w_weights = w_weights
        self.zero = any(a == 0 for a in v_weights)
        self.halfexp = c + sum(tangent) - sum(w_weights)


def _vertex_terms(manifold, xi, v_lines, w_lines, gamma, tangent_as_w):
    xi = _as_circle(xi).xi
    if len(xi) != manifold.dimension:
        raise InputError(
            f"circle vector length {len(xi)} does not match dimension "
            f"{manifold.dimension}")
    signs = manifold.orientation_signs()
    terms = []
    for fp in manifold.fixed_points():
        tangent = tuple(_dot(w, xi) for w in fp.weights)
        bad = [fp.weights[k] for k, w in enumerate(tangent) if w == 0]
        if bad:
            raise DegenerateCircleError(
                f"circle {list(xi)} annihilates tangent weight(s) {bad} at "
                f"vertex {fp.vertex}; pick a generic circle")
        c = sum(gamma[f - 1] * tangent[k] for k, f in enumerate(fp.vertex))
        v_weights = tuple(
            sum(line[f - 1] * tangent[k] for k, f in enumerate(fp.vertex))
            for line in v_lines)
        if tangent_as_w:
            w_weights = tangent
        else:
            w_weights = tuple(
                sum(line[f - 1] * tangent[k] for k, f in enumerate(fp.vertex))
                for line in w_lines)
        sigma = signs[fp.vertex] * fp.sign
        terms.append(_VertexTerm(fp.vertex, sigma, tangent, c, v_weights, w_weights))
    return terms


def _common_parity(terms):
    parities = {t.halfexp % 2 for t in terms}
    if len(parities) != 1:
        detail = {t.vertex: t.halfexp for t in terms}
        raise ParityError(
            "fixed points disagree on the half-integer exponent parity: "
            f"{detail}; the twist data is inconsistent")
    return parities.pop()


def _term_envelope(term, parity, q_order):
    """Exponent windows of one fixed point's contribution, integer gauge."""
    if term.zero:
        return Envelope.zero(q_order)
    g = (term.halfexp - parity) // 2
    env = Envelope.of_constant(g, g, q_order)
    for w in term.tangent:
        aw = abs(w)
        spans = [(max(0, -w) - aw * d, min(0, -w) + aw * d)
                 for d in range(q_order + 1)]
        env = env * Envelope(spans)
    for a in term.v_weights:
        aa = abs(a)
        spans = [(min(0, -a) - aa * d, max(0, -a) + aa * d)
                 for d in range(q_order + 1)]
        env = env * Envelope(spans)
    for b in term.w_weights:
        ab = abs(b)
        spans = [(min(0, b) - ab * d, max(0, b) + ab * d)
                 for d in range(q_order + 1)]
        env = env * Envelope(spans)
    return env


def _sparse_factor(k, coeff, q_order):
    coeffs = [Fraction(0)] * (q_order + 1)
    coeffs[0] = Fraction(1)
    if k <= q_order:
        coeffs[k] = Fraction(coeff)
    return QSeries(coeffs, q_order)


class _SampleWorkspace:
    """Per-sample-point caches for the q-series factors.

    Keyed by |weight|: the tangent and bundle factors are symmetric under
    weight negation, and repeated weights across fixed points are the rule,
    not the exception.
    """

    def __init__(self, tau, q_order):
        self.tau = Fraction(tau)
        self.q_order = q_order
        self.tangent_cache = {}
        self.vline_cache = {}
        self.wline_cache = {}
        one_minus = QSeries.one(q_order)
        one_plus = QSeries.one(q_order)
        for k in range(1, q_order + 1):
            one_minus = one_minus * _sparse_factor(k, -1, q_order)
            one_plus = one_plus * _sparse_factor(k, 1, q_order)
        self.minus_sq = one_minus * one_minus          # prod (1-q^k)^2
        self.minus_sq_inv = self.minus_sq.invert()
        self.plus_sq_inv = (one_plus * one_plus).invert()

    def _pair_product(self, power, sign):
        """prod_k (1 + sign*tau^w q^k)(1 + sign*tau^-w q^k)."""
        out = QSeries.one(self.q_order)
        inv_power = Fraction(1) / power
        for k in range(1, self.q_order + 1):
            out = out * _sparse_factor(k, sign * power, self.q_order)
            out = out * _sparse_factor(k, sign * inv_power, self.q_order)
        return out

    def tangent_factor(self, w):
        aw = abs(w)
        got = self.tangent_cache.get(aw)
        if got is None:
            power = self.tau ** aw
            got = self.minus_sq * self._pair_product(power, -1).invert()
            self.tangent_cache[aw] = got
        return got

    def vline_factor(self, a):
        aa = abs(a)
        got = self.vline_cache.get(aa)
        if got is None:
            power = self.tau ** aa
            got = self._pair_product(power, -1) * self.minus_sq_inv
            self.vline_cache[aa] = got
        return got

    def wline_factor(self, b):
        ab = abs(b)
        got = self.wline_cache.get(ab)
        if got is None:
            power = self.tau ** ab
            got = self._pair_product(power, 1) * self.plus_sq_inv
            self.wline_cache[ab] = got
        return got

    def term_value(self, term, parity, with_sign=True):
        """One fixed point's contribution at this sample, integer gauge."""
        if term.zero:
            return QSeries.constant(Fraction(0), self.q_order)
        tau = self.tau
        g = (term.halfexp - parity) // 2
        scalar = tau ** g
        for w in term.tangent:
            scalar = scalar / (tau ** w - 1)
        for a in term.v_weights:
            scalar = scalar * (1 - tau ** (-a))
        for b in term.w_weights:
            scalar = scalar * (tau ** b + 1)
        if with_sign:
            scalar = scalar * term.sigma
        series = QSeries.constant(scalar, self.q_order)
        for w in term.tangent:
            series = series * self.tangent_factor(w)
        for a in term.v_weights:
            series = series * self.vline_factor(a)
        for b in term.w_weights:
            series = series * self.wline_factor(b)
        return series


def _sample_points(count):
    return [Fraction(k) for k in range(2, 2 + count)]


def _equivariant_series(manifold, xi, v_lines, w_lines, gamma, q_order,
                        threads=1, tangent_as_w=False):
    """Shared engine: returns (QSeries of HalfLaurent, parity)."""
    if q_order < 0:
        raise InputError("q-order must be non-negative")
    terms = _vertex_terms(manifold, xi, v_lines, w_lines, gamma, tangent_as_w)
    parity = _common_parity(terms)
    env = Envelope.zero(q_order)
    for term in terms:
        env = env + _term_envelope(term, parity, q_order)
    n_samples = env.max_width() + 3
    taus = _sample_points(n_samples)

    def evaluate(tau):
        ws = _SampleWorkspace(tau, q_order)
        total = QSeries.constant(Fraction(0), q_order)
        for term in terms:
            total = total + ws.term_value(term, parity)
        return total

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(evaluate, taus))
    else:
        values = [evaluate(tau) for tau in taus]

    coeffs = []
    for d in range(q_order + 1):
        span = env.spans[d]
        lo, hi = span if span is not None else (0, -1)
        samples = [(taus[i], values[i].coeffs[d]) for i in range(n_samples)]
        poly = laurent_interpolate(samples, lo, hi)
        coeffs.append(HalfLaurent.from_integer_poly(poly, parity))
    return QSeries(coeffs, q_order), parity


def fixed_point_contribution(fp, xi, bundles, gamma, t, q_order):
    """One fixed point's localization term at a rational sample t.

    Returns the exact truncated q-series of rationals.  The half-integer
    prefactor exponent (twist character + tangent weights - W weights) must
    be even here, since a lone rational sample cannot carry t^(1/2); the
    full engine handles odd parities globally.  No orientation sign is
    applied: this is the raw local term.
    """
    bundles = bundles or BundleSpec.empty()
    xi = _as_circle(xi).xi
    t = Fraction(t)
    if t in (Fraction(0), Fraction(1), Fraction(-1)):
        raise InputError(f"sample point t = {t} is not allowed")
    tangent = tuple(_dot(w, xi) for w in fp.weights)
    if any(w == 0 for w in tangent):
        raise DegenerateCircleError(
            f"circle {list(xi)} is degenerate at vertex {fp.vertex}")
    c = sum(gamma[f - 1] * tangent[k] for k, f in enumerate(fp.vertex))
    v_weights = tuple(
        sum(line[f - 1] * tangent[k] for k, f in enumerate(fp.vertex))
        for line in bundles.v_lines)
    w_weights = tuple(
        sum(line[f - 1] * tangent[k] for k, f in enumerate(fp.vertex))
        for line in bundles.w_lines)
    term = _VertexTerm(fp.vertex, 1, tangent, c, v_weights, w_weights)
    if term.halfexp % 2:
        raise ParityError(
            f"half-integer exponent {term.halfexp}/2 at vertex {fp.vertex} "
            "is odd; a single rational sample cannot represent it")
    ws = _SampleWorkspace(t, q_order)
    return ws.term_value(term, 0, with_sign=False)


def equivariant_index(manifold, xi, bundles, q_order, *, gamma=None, threads=1):
    """The circle-equivariant twisted index as exact Laurent q-coefficients."""
    bundles = bundles or BundleSpec.empty()
    bundles.validate_for(manifold)
    if gamma is None:
        gamma = manifold.spin_c
    xi = _as_circle(xi)
    series, parity = _equivariant_series(
        manifold, xi, bundles.v_lines, bundles.w_lines, gamma, q_order,
        threads=threads)
    return EquivariantIndex(series, xi, parity)


def choose_generic_circles(manifold, bundles=None, count=2):
    """Deterministic generic circle vectors, cheapest-window first.

    Candidates are primitive integer vectors enumerated by growing box
    bound; genericity means no tangent weight pairs to zero anywhere.  The
    cost orders candidates by the total weight mass they produce, which is
    what the sampling window sizes scale with.
    """
    n = manifold.dimension
    fps = manifold.fixed_points()
    lines = []
    if bundles is not None:
        lines = list(bundles.v_lines) + list(bundles.w_lines)

    def cost(xi):
        total = 0
        for fp in fps:
            tangent = [_dot(w, xi) for w in fp.weights]
            if any(w == 0 for w in tangent):
                return None
            total += sum(abs(w) for w in tangent)
            for line in lines:
                total += abs(sum(line[f - 1] * tangent[k]
                                 for k, f in enumerate(fp.vertex)))
        return total

    found = []
    if n == 1:
        # Only one primitive direction exists; scaled copies give honest
        # independent evaluations for cross-checking.
        for k in range(1, count + 1):
            xi = (k,)
            c = cost(xi)
            if c is not None:
                found.append((c, xi))
    else:
        bound = 1
        while len(found) < count and bound <= 64:
            found = []
            for xi in _primitive_box(n, bound):
                c = cost(xi)
                if c is not None:
                    found.append((c, xi))
            bound += 1
    if len(found) < count:
        raise DegenerateCircleError(
            "could not find enough generic circle vectors; "
            "the characteristic data is degenerate")
    found.sort(key=lambda pair: (pair[0], pair[1]))
    return [CircleSubgroup(xi) for _, xi in found[:count]]


def _primitive_box(n, bound):
    """Primitive vectors with entries in [-bound, bound], first nonzero > 0."""
    def rec(prefix):
        if len(prefix) == n:
            if any(prefix):
                g = 0
                for x in prefix:
                    g = math.gcd(g, abs(x))
                if g == 1:
                    first = next(x for x in prefix if x)
                    if first > 0:
                        yield tuple(prefix)
            return
        for x in range(-bound, bound + 1):
            yield from rec(prefix + [x])
    yield from rec([])


def _index_at_one(manifold, v_lines, w_lines, gamma, q_order, threads,
                  tangent_as_w=False):
    """Non-equivariant index, asserted equal over two generic circles."""
    spec = BundleSpec(v_lines, () if tangent_as_w else w_lines)
    circles = choose_generic_circles(manifold, spec, count=2)
    results = []
    for xi in circles:
        series, _ = _equivariant_series(
            manifold, xi, v_lines, w_lines, gamma, q_order,
            threads=threads, tangent_as_w=tangent_as_w)
        results.append(QSeries([c.value_at_one() for c in series.coeffs], q_order))
    if results[0] != results[1]:
        raise PropertyViolationError(
            "index differs between generic circles "
            f"{circles[0].xi} and {circles[1].xi}: "
            f"{results[0].coeffs} vs {results[1].coeffs}")
    return results[0]


def index(manifold, bundles, q_order, *, gamma=None, threads=1):
    """The twisted index as a q-series of rationals (t = 1 characters)."""
    bundles = bundles or BundleSpec.empty()
    bundles.validate_for(manifold)
    if gamma is None:
        gamma = manifold.spin_c
    return _index_at_one(manifold, bundles.v_lines, bundles.w_lines, gamma,
                         q_order, threads)


def spin_obstruction(manifold):
    """None if M is spin, else the mod-2 facet vector that obstructs it."""
    m = manifold.num_facets
    ones = [1] * m
    if gf2_solve(list(manifold.char_matrix), ones) is None:
        return tuple(ones)
    return None


def is_spin(manifold):
    return spin_obstruction(manifold) is None


def spin_gamma(manifold):
    """An odd twist vector whose facet sum vanishes exactly in cohomology.

    Solves (row bits) . characteristic matrix = all-ones over GF(2) and
    lifts the bits to integers; the resulting vector is odd entrywise and
    its facet-class combination is a row combination, hence zero.
    """
    m = manifold.num_facets
    eta = gf2_solve(list(manifold.char_matrix), [1] * m)
    if eta is None:
        raise SpinObstructionError(
            "manifold is not spin: the all-ones facet vector is not a mod-2 "
            "combination of the characteristic matrix rows",
            obstruction=(1,) * m)
    gamma = tuple(
        sum(eta[i] * manifold.char_matrix[i][j] for i in range(manifold.dimension))
        for j in range(m))
    return gamma, tuple(eta)


def witten_genus(manifold, q_order, *, threads=1):
    """Untwisted spin index; requires a spin structure."""
    gamma, _ = spin_gamma(manifold)
    return _index_at_one(manifold, (), (), gamma, q_order, threads)


def elliptic_genus(manifold, q_order, *, threads=1):
    """Index twisted by the full tangent bundle; requires spin."""
    gamma, _ = spin_gamma(manifold)
    return _index_at_one(manifold, (), (), gamma, q_order, threads,
                         tangent_as_w=True)


def equivariant_witten_genus(manifold, xi, q_order, *, threads=1):
    gamma, eta = spin_gamma(manifold)
    xi = _as_circle(xi)
    series, parity = _equivariant_series(
        manifold, xi, (), (), gamma, q_order, threads=threads)
    return _strip_character_shift(series, parity, eta, xi)


def equivariant_elliptic_genus(manifold, xi, q_order, *, threads=1):
    gamma, eta = spin_gamma(manifold)
    xi = _as_circle(xi)
    series, parity = _equivariant_series(
        manifold, xi, (), (), gamma, q_order, threads=threads,
        tangent_as_w=True)
    return _strip_character_shift(series, parity, eta, xi)


def _strip_character_shift(series, parity, eta, xi):
    """Remove the constant character the spin twist lift introduces.

    With the spin twist vector the prefactor character is <eta, xi>/2 at
    every vertex; dividing it out makes the q-coefficients symmetric under
    t -> 1/t, the honest untwisted normalisation.
    """
    shift = -_dot(eta, xi.xi)
    stripped = QSeries([c.shift(shift) for c in series.coeffs], series.order)
    new_parity = (parity + shift) % 2
    return EquivariantIndex(stripped, xi, new_parity)


def euler_characteristic(manifold):
    """Fixed-point count of the torus action."""
    return len(manifold.polytope.vertices)


def signature(manifold):
    """Signature by the rigid fixed-point sum; no spin structure needed.

    The sum of sign(v) * prod (t^w + 1)/(t^w - 1) over fixed points is
    constant in t; it is evaluated at two sample points that must agree.
    """
    signs = manifold.orientation_signs()
    circles = choose_generic_circles(manifold, None, count=2)
    results = []
    for xi in circles:
        per_tau = []
        for tau in (Fraction(2), Fraction(3)):
            total = Fraction(0)
            for fp in manifold.fixed_points():
                term = Fraction(signs[fp.vertex] * fp.sign)
                for wvec in fp.weights:
                    w = _dot(wvec, xi.xi)
                    term *= (tau ** w + 1) / (tau ** w - 1)
                total += term
            per_tau.append(total)
        if per_tau[0] != per_tau[1]:
            raise PropertyViolationError(
                f"signature sum is not constant in t for circle {xi.xi}: "
                f"{per_tau}")
        results.append(per_tau[0])
    if results[0] != results[1]:
        raise PropertyViolationError(
            f"signature differs between circles: {results}")
    return results[0]


def localization_integral(manifold, facets):
    """Pairing of a product of n facet classes with the fundamental class,
    computed purely from fixed-point data.

    This is the oracle the cohomology ring's normalisation is checked
    against.  ``facets`` is a multiset (repetitions allowed) of exactly n
    facet labels.
    """
    facets = tuple(sorted(int(f) for f in facets))
    if len(facets) != manifold.dimension:
        raise InputError(
            f"need exactly {manifold.dimension} facet labels, got {len(facets)}")
    signs = manifold.orientation_signs()
    circles = choose_generic_circles(manifold, None, count=2)
    results = []
    for xi in circles:
        total = Fraction(0)
        for fp in manifold.fixed_points():
            tangent = [_dot(w, xi.xi) for w in fp.weights]
            num = Fraction(signs[fp.vertex] * fp.sign)
            ok = True
            for f in facets:
                if f in fp.vertex:
                    num *= tangent[fp.vertex.index(f)]
                else:
                    ok = False
                    break
            if not ok:
                continue
            den = Fraction(1)
            for w in tangent:
                den *= w
            total += num / den
        results.append(total)
    if results[0] != results[1]:
        raise PropertyViolationError(
            f"localization pairing is circle-dependent: {results}; "
            "the class is not a top-degree product")
    return results[0]


# ---------------------------------------------------------------------------
# Cohomological route
# ---------------------------------------------------------------------------


def _factorial_fraction(i):
    return Fraction(math.factorial(i))


def _exp_poly(cap, scale):
    """TruncatedPolynomial for e^(scale*x)."""
    return TruncatedPolynomial(
        [Fraction(scale) ** i / _factorial_fraction(i) for i in range(cap + 1)],
        cap)


def _div_x(poly):
    if poly.coeffs[0] != 0:
        raise ArithmeticError("not divisible by x")
    return TruncatedPolynomial(list(poly.coeffs[1:]) + [Fraction(0)], poly.cap)


def _tp_sparse_factor(k, coeff_poly, q_order, cap):
    one = TruncatedPolynomial.constant(1, cap)
    zero = TruncatedPolynomial.constant(0, cap)
    coeffs = [zero] * (q_order + 1)
    coeffs[0] = one
    if k <= q_order:
        coeffs[k] = coeff_poly
    return QSeries(coeffs, q_order)


def _tp_constant_series(poly, q_order):
    zero = TruncatedPolynomial.constant(0, poly.cap)
    return QSeries([poly] + [zero] * q_order, q_order)


def _universal_tables(cap, q_order):
    """One-root q-series tables for the three index factors.

    tangent: (x/2)/sinh(x/2) * prod_k (1-q^k)^2 / ((1-e^x q^k)(1-e^-x q^k))
    vline:   (1-e^-x) * prod_k (1-e^x q^k)(1-e^-x q^k) / (1-q^k)^2
    vline_reduced: vline with the Euler root x divided out of (e^(x/2)-e^(-x/2))
    wline:   (e^(x/2)+e^(-x/2)) * prod_k (1+e^x q^k)(1+e^-x q^k) / (1+q^k)^2
    """
    E = _exp_poly(cap, 1)
    Einv = _exp_poly(cap, -1)
    Eh = _exp_poly(cap, Fraction(1, 2))
    Ehinv = _exp_poly(cap, Fraction(-1, 2))
    one = TruncatedPolynomial.constant(1, cap)

    # (e^(x/2) - e^(-x/2))/x needs one extra degree before the division.
    diff = _exp_poly(cap + 1, Fraction(1, 2)) - _exp_poly(cap + 1, Fraction(-1, 2))
    sinh_norm = TruncatedPolynomial(list(_div_x(diff).coeffs[: cap + 1]), cap)
    a_root = sinh_norm.inverse()            # (x/2)/sinh(x/2)

    minus_sq = QSeries.one(q_order)
    plus_sq = QSeries.one(q_order)
    for k in range(1, q_order + 1):
        minus_sq = minus_sq * _sparse_factor(k, -1, q_order)
        plus_sq = plus_sq * _sparse_factor(k, 1, q_order)
    minus_sq = minus_sq * minus_sq
    plus_sq = plus_sq * plus_sq
    minus_sq_tp = minus_sq.map_coefficients(
        lambda c: TruncatedPolynomial.constant(c, cap))
    plus_sq_tp = plus_sq.map_coefficients(
        lambda c: TruncatedPolynomial.constant(c, cap))

    pair_minus = QSeries([one] + [TruncatedPolynomial.constant(0, cap)] * q_order,
                         q_order)
    pair_plus = QSeries([one] + [TruncatedPolynomial.constant(0, cap)] * q_order,
                        q_order)
    for k in range(1, q_order + 1):
        pair_minus = pair_minus * _tp_sparse_factor(k, -E, q_order, cap)
        pair_minus = pair_minus * _tp_sparse_factor(k, -Einv, q_order, cap)
        pair_plus = pair_plus * _tp_sparse_factor(k, E, q_order, cap)
        pair_plus = pair_plus * _tp_sparse_factor(k, Einv, q_order, cap)

    tangent = _tp_constant_series(a_root, q_order) * minus_sq_tp * pair_minus.invert()
    vline = _tp_constant_series(one - Einv, q_order) * pair_minus * minus_sq_tp.invert()
    vline_reduced = _tp_constant_series(sinh_norm, q_order) * pair_minus * minus_sq_tp.invert()
    wline = _tp_constant_series(Eh + Ehinv, q_order) * pair_plus * plus_sq_tp.invert()
    return {"tangent": tangent, "vline": vline,
            "vline_reduced": vline_reduced, "wline": wline}


def _substitute_table(table, powers):
    """Replace the nilpotent variable by a class with precomputed powers."""
    return QSeries([tp.substitute(powers) for tp in table.coeffs], table.order)


def _class_powers(cls, cap, ring):
    powers = [ring.one()]
    for _ in range(cap):
        powers.append(powers[-1] * cls)
    return powers


def _exp_class(cls, cap, ring):
    out = ring.zero()
    power = ring.one()
    for i in range(cap + 1):
        out = out + power * (Fraction(1) / _factorial_fraction(i))
        power = power * cls
    return out


def cohomological_index_on_ring(ring, tangent_roots, v_classes, w_classes,
                                c1c_class, q_order, w_trivial_rank=0):
    """Integrate the index density over any ring with the class interface.

    tangent_roots are the stable splitting roots (trivial summands may be
    included or left out: their factor is 1).  ``w_trivial_rank`` divides
    out the constant 2 that each trivial W summand contributes, for callers
    that describe W through a stable splitting.
    """
    cap = ring.dimension
    tables = _universal_tables(cap, q_order)
    integrand = QSeries([ring.one()] + [ring.zero()] * q_order, q_order)
    for root in tangent_roots:
        integrand = integrand * _substitute_table(
            tables["tangent"], _class_powers(root, cap, ring))
    for a in v_classes:
        integrand = integrand * _substitute_table(
            tables["vline"], _class_powers(a, cap, ring))
    for b in w_classes:
        integrand = integrand * _substitute_table(
            tables["wline"], _class_powers(b, cap, ring))
    half_twist = _exp_class(c1c_class * Fraction(1, 2), cap, ring)
    integrand = integrand.map_coefficients(lambda cls: cls * half_twist)
    scale = Fraction(1, 2 ** w_trivial_rank)
    return QSeries(
        [ring.integrate(cls) * scale for cls in integrand.coeffs], q_order)


def cohomological_index(manifold, bundles, q_order):
    """The twisted index from the face ring; the localization oracle's twin."""
    bundles = bundles or BundleSpec.empty()
    bundles.validate_for(manifold)
    ring = build_face_ring(manifold)
    roots = [ring.facet_class(j) for j in range(1, manifold.num_facets + 1)]
    v_classes = [ring.line_class(line) for line in bundles.v_lines]
    w_classes = [ring.line_class(line) for line in bundles.w_lines]
    return cohomological_index_on_ring(
        ring, roots, v_classes, w_classes, ring.spinc_c1(), q_order)


def cohomological_elliptic_genus(manifold, q_order):
    """Elliptic genus through the stable splitting W = TM.

    The m facet lines overshoot TM by m - n trivial summands, each worth a
    constant factor 2 in the W product, which is divided back out.
    """
    gamma, _ = spin_gamma(manifold)
    ring = build_face_ring(manifold)
    roots = [ring.facet_class(j) for j in range(1, manifold.num_facets + 1)]
    c1c = ring.line_class(gamma)
    return cohomological_index_on_ring(
        ring, roots, (), roots, c1c, q_order,
        w_trivial_rank=manifold.num_facets - manifold.dimension)


def cohomological_witten_genus(manifold, q_order):
    gamma, _ = spin_gamma(manifold)
    ring = build_face_ring(manifold)
    roots = [ring.facet_class(j) for j in range(1, manifold.num_facets + 1)]
    return cohomological_index_on_ring(
        ring, roots, (), (), ring.line_class(gamma), q_order)
