"""Exact arithmetic building blocks.

Four small algebras cover everything the index computations need:

* ``HalfLaurent``: Laurent polynomials in a formal square root of the
  circle variable t.  Exponents are stored doubled so every exponent is an
  integer; coefficients are Fractions.
* ``QSeries``: truncated power series in the modular parameter q whose
  coefficients live in any commutative ring that speaks +, * and ==
  (Fraction, HalfLaurent, TruncatedPolynomial, cohomology classes).
* ``TruncatedPolynomial``: polynomials in one nilpotent variable, truncated
  above a fixed degree cap.  These hold the universal one-root Taylor tables
  that get substituted at degree-two cohomology classes.
* ``Envelope``: per-q-degree intervals bounding the t-exponents a series can
  touch.  The sampling engine uses them to pick how many sample points an
  exact interpolation needs.

Plus ``laurent_interpolate``, which turns sampled values back into an exact
Laurent polynomial and refuses to guess: every sample beyond the minimum
must match the fit or the whole computation aborts.
"""

from fractions import Fraction

from .errors import InterpolationError, InterpolationConsistencyError


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class HalfLaurent:
    """Laurent polynomial in t^(1/2) with Fraction coefficients.

    The key of ``coeffs`` is the doubled exponent: key 3 means t^(3/2),
    key -4 means t^(-2).  Zero coefficients are never stored, so equality
    is plain dict equality.  Instances are treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for d, c in coeffs.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[int(d)] = c
        self.coeffs = clean

    @staticmethod
    def constant(c):
        c = _as_fraction(c)
        return HalfLaurent({0: c} if c != 0 else {})

    @staticmethod
    def monomial(doubled_exponent, coeff=1):
        return HalfLaurent({int(doubled_exponent): _as_fraction(coeff)})

    @staticmethod
    def from_integer_poly(poly, parity=0):
        """Lift {integer exponent: coeff} to exponents e + parity/2."""
        return HalfLaurent({2 * e + parity: c for e, c in poly.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, HalfLaurent):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return self.coeffs == {0: _as_fraction(other)}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __neg__(self):
        return HalfLaurent({d: -c for d, c in self.coeffs.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HalfLaurent.constant(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d, Fraction(0)) + c
            if s == 0:
                out.pop(d, None)
            else:
                out[d] = s
        return HalfLaurent(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HalfLaurent.constant(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            if f == 0:
                return HalfLaurent({})
            return HalfLaurent({d: c * f for d, c in self.coeffs.items()})
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                s = out.get(d, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(d, None)
                else:
                    out[d] = s
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = HalfLaurent.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_monomial(self):
        return len(self.coeffs) == 1

    def inverse(self):
        """Inverse of a single monomial; anything else is not a unit here."""
        if len(self.coeffs) != 1:
            raise ArithmeticError("only monomials are invertible")
        (d, c), = self.coeffs.items()
        return HalfLaurent({-d: Fraction(1) / c})

    def shift(self, doubled):
        """Multiply by t^(doubled/2)."""
        if not doubled:
            return self
        return HalfLaurent({d + doubled: c for d, c in self.coeffs.items()})

    def value_at_one(self):
        return sum(self.coeffs.values(), Fraction(0))

    def evaluate_doubled(self, u):
        """Value at t = u^2, i.e. substitute u for t^(1/2)."""
        u = _as_fraction(u)
        if u == 0:
            raise ZeroDivisionError("cannot evaluate at t = 0")
        return sum((c * u ** d for d, c in self.coeffs.items()), Fraction(0))

    def is_constant(self):
        return not self.coeffs or set(self.coeffs) == {0}

    def constant_value(self):
        if not self.coeffs:
            return Fraction(0)
        if set(self.coeffs) == {0}:
            return self.coeffs[0]
        raise ValueError(f"not a constant: {self}")

    def items_halved(self):
        """Sorted (exponent as Fraction, coefficient) pairs, descending."""
        return [(Fraction(d, 2), self.coeffs[d]) for d in sorted(self.coeffs, reverse=True)]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exp, c in self.items_halved():
            neg = c < 0
            a = -c if neg else c
            if exp == 0:
                body = str(a)
            else:
                if exp == 1:
                    mono = "t"
                elif exp.denominator == 1 and exp > 0:
                    mono = f"t^{exp}"
                else:
                    mono = f"t^({exp})"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"HalfLaurent({self.coeffs!r})"


def _coeff_zero(sample):
    """A zero of the same coefficient ring as sample."""
    return sample * 0


class QSeries:
    """Power series in q truncated above q^order, generic coefficients.

    ``coeffs[k]`` is the coefficient of q^k; the list always has length
    order + 1.  Arithmetic silently truncates, which is the whole point.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if len(coeffs) != order + 1:
            raise ValueError("coefficient list does not match the order")
        self.coeffs = coeffs
        self.order = order

    @staticmethod
    def constant(value, order):
        value = value if not isinstance(value, int) else Fraction(value)
        zero = _coeff_zero(value)
        return QSeries([value] + [zero] * order, order)

    @staticmethod
    def one(order):
        return QSeries.constant(Fraction(1), order)

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("q-series orders differ")

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, tuple(str(c) for c in self.coeffs)))

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        return QSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([c * other for c in self.coeffs], self.order)
        self._check(other)
        out = []
        for k in range(self.order + 1):
            acc = None
            for i in range(k + 1):
                term = self.coeffs[i] * other.coeffs[k - i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return QSeries(out, self.order)

    def __rmul__(self, other):
        return QSeries([other * c for c in self.coeffs], self.order)

    def __pow__(self, k):
        if k < 0:
            return self.invert() ** (-k)
        out = QSeries.one(self.order) if k == 0 else None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out * base
            base = base * base
            k >>= 1
        if out is None:
            out = QSeries.one(self.order)
        return out

    def invert(self):
        """Multiplicative inverse; the constant term must be a unit."""
        a0 = self.coeffs[0]
        if isinstance(a0, Fraction):
            if a0 == 0:
                raise ArithmeticError("constant term vanishes, not invertible")
            b0 = Fraction(1) / a0
        elif isinstance(a0, int):
            if a0 == 0:
                raise ArithmeticError("constant term vanishes, not invertible")
            b0 = Fraction(1, a0)
        else:
            b0 = a0.inverse()
        inv = [b0]
        for k in range(1, self.order + 1):
            acc = None
            for i in range(1, k + 1):
                term = self.coeffs[i] * inv[k - i]
                acc = term if acc is None else acc + term
            inv.append(-(b0 * acc) if acc is not None else _coeff_zero(b0))
        return QSeries(inv, self.order)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: order + 1], order)

    def map_coefficients(self, fn):
        return QSeries([fn(c) for c in self.coeffs], self.order)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            body = str(c)
            if k == 0:
                terms.append(body)
            else:
                qk = "q" if k == 1 else f"q^{k}"
                terms.append(f"({body})*{qk}" if " " in body or "+" in body else f"{body}*{qk}")
        return " + ".join(terms) + f" + O(q^{self.order + 1})"

    def __repr__(self):
        return f"QSeries({self.coeffs!r})"


class TruncatedPolynomial:
    """Polynomial in a nilpotent variable x with x^(cap+1) treated as 0.

    Coefficients are Fractions.  Used for one-variable Taylor expansions of
    the characteristic power series that later get evaluated at degree-two
    cohomology classes, whose honest nilpotency degree matches the cap.
    """

    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs, cap):
        coeffs = [_as_fraction(c) for c in coeffs[: cap + 1]]
        coeffs += [Fraction(0)] * (cap + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.cap = cap

    @staticmethod
    def constant(c, cap):
        return TruncatedPolynomial([c], cap)

    @staticmethod
    def variable(cap, scale=1):
        return TruncatedPolynomial([0, scale], cap)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedPolynomial.constant(other, self.cap)
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return self.cap == other.cap and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.cap, self.coeffs))

    def __neg__(self):
        return TruncatedPolynomial([-c for c in self.coeffs], self.cap)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedPolynomial.constant(other, self.cap)
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return TruncatedPolynomial(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.cap)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedPolynomial.constant(other, self.cap)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return TruncatedPolynomial([c * f for c in self.coeffs], self.cap)
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        out = [Fraction(0)] * (self.cap + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > self.cap:
                    break
                if b != 0:
                    out[i + j] += a * b
        return TruncatedPolynomial(out, self.cap)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = TruncatedPolynomial.constant(1, self.cap)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        if self.coeffs[0] == 0:
            raise ArithmeticError("constant term vanishes, not invertible")
        b0 = Fraction(1) / self.coeffs[0]
        inv = [b0]
        for k in range(1, self.cap + 1):
            s = sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1))
            inv.append(-b0 * s)
        return TruncatedPolynomial(inv, self.cap)

    def substitute(self, powers):
        """Evaluate given precomputed powers[i] = x^i of the substituted value.

        ``powers`` needs length cap + 1; entries may be anything that can be
        scaled by a Fraction and added (cohomology classes, Fractions, ...).
        """
        acc = None
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = powers[i] * c
            acc = term if acc is None else acc + term
        if acc is None:
            acc = powers[0] * Fraction(0)
        return acc

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"TruncatedPolynomial({list(self.coeffs)!r}, cap={self.cap})"


class Envelope:
    """Per-q-degree t-exponent windows for a truncated Laurent q-series.

    ``spans[k]`` is either None (the q^k coefficient is identically zero)
    or a pair (lo, hi): lo bounds the order at t = 0 from below, hi bounds
    the degree at t = infinity from above.  For honest Laurent polynomials
    these are the minimal and maximal exponents; for rational functions
    such as 1/(t^w - 1) the pair may be inverted (lo > hi), which is fine:
    orders still add under products, and a final combined window with
    lo > hi certifies that the (polynomial) total is identically zero.
    Exponents here are in the integer-normalised gauge the sampling engine
    works in, not the final half-integer one.
    """

    __slots__ = ("spans",)

    def __init__(self, spans):
        self.spans = tuple(
            None if s is None else (int(s[0]), int(s[1])) for s in spans)

    @staticmethod
    def zero(order):
        return Envelope([None] * (order + 1))

    @staticmethod
    def of_constant(lo, hi, order):
        """Envelope of a q-degree-zero term with t-exponents in [lo, hi]."""
        return Envelope([(lo, hi)] + [None] * order)

    @staticmethod
    def single(degree, lo, hi, order):
        spans = [None] * (order + 1)
        spans[degree] = (lo, hi)
        return Envelope(spans)

    @property
    def order(self):
        return len(self.spans) - 1

    def __eq__(self, other):
        return isinstance(other, Envelope) and self.spans == other.spans

    def __add__(self, other):
        if not isinstance(other, Envelope):
            return NotImplemented
        if self.order != other.order:
            raise ValueError("envelope orders differ")
        out = []
        for a, b in zip(self.spans, other.spans):
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append((min(a[0], b[0]), max(a[1], b[1])))
        return Envelope(out)

    def __mul__(self, other):
        if not isinstance(other, Envelope):
            return NotImplemented
        if self.order != other.order:
            raise ValueError("envelope orders differ")
        out = [None] * (self.order + 1)
        for i, a in enumerate(self.spans):
            if a is None:
                continue
            for j in range(self.order + 1 - i):
                b = other.spans[j]
                if b is None:
                    continue
                lo, hi = a[0] + b[0], a[1] + b[1]
                cur = out[i + j]
                out[i + j] = (lo, hi) if cur is None else (min(cur[0], lo), max(cur[1], hi))
        return Envelope(out)

    def shifted(self, offset):
        """Envelope after multiplying the series by t^offset."""
        return Envelope([
            None if s is None else (s[0] + offset, s[1] + offset)
            for s in self.spans])

    def max_width(self):
        """Largest span width + 1, i.e. the most coefficients any q-degree needs.

        Inverted (provably-zero) spans count as zero width.
        """
        widths = [s[1] - s[0] + 1 for s in self.spans if s is not None]
        return max([w for w in widths if w > 0], default=0)

    def __repr__(self):
        return f"Envelope({list(self.spans)!r})"


_FORBIDDEN_SAMPLES = (Fraction(0), Fraction(1), Fraction(-1))


def laurent_interpolate(samples, lo, hi):
    """Recover the Laurent polynomial sum c_e t^e, lo <= e <= hi, exactly.

    ``samples`` is a list of (t value, observed value) pairs with distinct
    rational t values, none of them 0 or +-1.  The first hi - lo + 1 pairs
    determine the candidate; every remaining pair is checked against it and
    any mismatch raises InterpolationConsistencyError, because a mismatch
    means the claimed exponent window was wrong and the result would be
    garbage.  Returns {exponent: coefficient} with zeros dropped.

    When lo > hi the window is empty, the series is claimed to vanish, and
    all samples must be zero.
    """
    pts = [(_as_fraction(t), _as_fraction(v)) for t, v in samples]
    seen = set()
    for t, _ in pts:
        if t in _FORBIDDEN_SAMPLES:
            raise InterpolationError(f"sample point t = {t} is not allowed")
        if t in seen:
            raise InterpolationError(f"duplicate sample point t = {t}")
        seen.add(t)

    if lo > hi:
        for t, v in pts:
            if v != 0:
                raise InterpolationConsistencyError(
                    f"window is empty but f({t}) = {v} is nonzero")
        return {}

    width = hi - lo + 1
    if len(pts) < width:
        raise InterpolationError(
            f"need at least {width} samples for window [{lo}, {hi}], got {len(pts)}")

    # Divide by t^lo: g(t) = f(t) * t^(-lo) is an honest polynomial of
    # degree at most hi - lo.
    shifted = [(t, v * t ** (-lo)) for t, v in pts]
    fit, rest = shifted[:width], shifted[width:]

    xs = [t for t, _ in fit]
    dd = [v for _, v in fit]
    for j in range(1, width):
        for i in range(width - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])

    poly = [Fraction(0)] * width
    basis = [Fraction(1)]
    for i in range(width):
        for k, c in enumerate(basis):
            poly[k] += dd[i] * c
        if i + 1 < width:
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k + 1] += c
                nxt[k] -= xs[i] * c
            basis = nxt

    def geval(t):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * t + c
        return acc

    for t, v in rest:
        if geval(t) != v:
            raise InterpolationConsistencyError(
                f"held-out sample at t = {t} disagrees with the fitted window "
                f"[{lo}, {hi}]: expected {v}, fit gives {geval(t)}")

    return {lo + k: c for k, c in enumerate(poly) if c != 0}
