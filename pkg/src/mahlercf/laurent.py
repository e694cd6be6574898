"""Truncated Laurent series, dense polynomials, and the continued-fraction
machinery that cross-checks the block recurrence.

A LaurentSeries carries an explicit truncation floor: every stored
coefficient (degrees floor..top_degree) is exact, and any operation that
would need a coefficient below the floor raises InsufficientDepth instead
of silently degrading. That exactness is the whole point: the classical
quotient-extraction algorithm run on a deep-enough expansion is an
independent oracle for the recurrence's (alpha_i, beta_i).

The classical expansion  f = b_0 + 1/(b_1 + 1/(b_2 + ...))  is renormalised
to constant numerators over monic quotients via the equivalence transform
a_i = b_i/lam_i, beta_1 = 1/lam_1, beta_i = 1/(lam_{i-1} lam_i) for i >= 2,
where lam_i is the leading coefficient of b_i. The transform is validated
by the oracle-equivalence tests, not trusted a priori.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import as_scalar, one_like, zero_like


class InsufficientDepth(ArithmeticError):
    """The truncation floor is too shallow to certify the requested result."""


class NeedTwoTerms(ValueError):
    """The exponent estimate needs at least two denominator degrees."""


class Polynomial:
    """Dense polynomial over an exact scalar field; coeffs ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @property
    def degree(self) -> int:
        # zero polynomial reports -1
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, d: int):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(d) + other.coeff(d) for d in range(n)])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(d) - other.coeff(d) for d in range(n)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c):
        return Polynomial([a * c for a in self.coeffs])

    def monic(self) -> "Polynomial":
        lam = self.leading
        return Polynomial([a / lam for a in self.coeffs])

    def __call__(self, x):
        acc = zero_like(as_scalar(x)) if self.is_zero() else self.coeffs[-1] * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.degree == other.degree and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = [f"{c!s}*z^{d}" for d, c in enumerate(self.coeffs) if c != 0]
        return "Polynomial(" + " + ".join(reversed(terms)) + ")"


def linear(alpha) -> Polynomial:
    """The monic linear polynomial z + alpha."""
    alpha = as_scalar(alpha)
    return Polynomial([alpha, one_like(alpha)])


class LaurentSeries:
    """Coefficients for degrees top_degree down to floor, all exact.

    Degrees above top_degree are exactly zero; degrees below floor are
    unknown. The stored leading coefficient is nonzero unless the series is
    identically zero down to the floor (then the valuation is uncertifiable
    and known_valuation() returns None).
    """

    __slots__ = ("top_degree", "floor", "coeffs")

    def __init__(self, top_degree: int, coeffs, floor: int):
        c = list(coeffs)
        if len(c) != top_degree - floor + 1:
            raise ValueError("coefficient count does not match degree window")
        while c and top_degree > floor and c[0] == 0:
            c.pop(0)
            top_degree -= 1
        self.top_degree = top_degree
        self.floor = floor
        self.coeffs = c

    def known_valuation(self) -> int | None:
        """Largest degree with nonzero coefficient, or None if zero to the floor."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return self.top_degree - j
        return None

    def is_zero_to_floor(self) -> bool:
        return self.known_valuation() is None

    def coeff(self, d: int):
        if d > self.top_degree:
            return 0
        if d < self.floor:
            raise InsufficientDepth(f"coefficient of degree {d} is below floor {self.floor}")
        return self.coeffs[self.top_degree - d]

    def truncate(self, new_floor: int) -> "LaurentSeries":
        if new_floor < self.floor:
            raise InsufficientDepth(
                f"cannot deepen floor {self.floor} to {new_floor} by truncation"
            )
        if new_floor > self.top_degree:
            return LaurentSeries(new_floor, [zero_like(self.coeffs[0])], new_floor)
        return LaurentSeries(self.top_degree, self.coeffs[: self.top_degree - new_floor + 1], new_floor)

    def mul_poly(self, q: Polynomial) -> "LaurentSeries":
        """Product with a polynomial; exact down to floor + deg q."""
        if q.is_zero():
            raise ValueError("multiplication by the zero polynomial discards the floor")
        dq = q.degree
        top = self.top_degree + dq
        flo = self.floor + dq
        out = []
        for d in range(top, flo - 1, -1):
            s = 0
            for j, c in enumerate(q.coeffs):
                if c == 0:
                    continue
                e = d - j
                if e <= self.top_degree:
                    s = s + c * self.coeff(e)
            out.append(s)
        return LaurentSeries(top, out, flo)

    def add_poly(self, q: Polynomial) -> "LaurentSeries":
        top = max(self.top_degree, q.degree)
        out = [self.coeff(d) + q.coeff(d) for d in range(top, self.floor - 1, -1)]
        return LaurentSeries(top, out, self.floor)

    def sub_poly(self, q: Polynomial) -> "LaurentSeries":
        return self.add_poly(-q)

    def poly_part(self) -> Polynomial:
        """Terms of degree >= 0; needs floor <= 0 unless the window is empty."""
        if self.top_degree < 0:
            return Polynomial()
        if self.floor > 0:
            raise InsufficientDepth("floor above degree 0: polynomial part not certified")
        return Polynomial([self.coeff(d) for d in range(self.top_degree + 1)])

    def fractional_part(self) -> "LaurentSeries":
        """Terms of degree <= -1 (exact; the floor is unchanged)."""
        top = min(self.top_degree, -1)
        out = [self.coeff(d) for d in range(top, self.floor - 1, -1)]
        return LaurentSeries(top, out, self.floor)

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; exact down to floor - 2*valuation."""
        t = self.known_valuation()
        if t is None:
            raise InsufficientDepth("cannot invert a series that is zero to its floor")
        lead = self.coeff(t)
        m = t - self.floor + 1  # number of known coefficients from the valuation down
        inv_lead = 1 / lead
        h = [inv_lead]
        for j in range(1, m):
            s = 0
            for i in range(1, j + 1):
                s = s + self.coeff(t - i) * h[j - i]
            h.append(-s * inv_lead)
        return LaurentSeries(-t, h, -t - m + 1)

    def to_json_dict(self) -> dict:
        return {
            "top_degree": self.top_degree,
            "floor": self.floor,
            "coefficients": [scalar_to_json(c) for c in self.coeffs],
        }

    def __eq__(self, other):
        if isinstance(other, LaurentSeries):
            return (
                self.top_degree == other.top_degree
                and self.floor == other.floor
                and all(a == b for a, b in zip(self.coeffs, other.coeffs))
            )
        return NotImplemented

    def __repr__(self):
        return f"LaurentSeries(top={self.top_degree}, floor={self.floor})"


def scalar_to_json(c):
    """Exact JSON form: 'num/den' string for rationals, int for residues."""
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, int):
        return str(c)
    return int(c)  # PrimeFieldElement residue


@dataclass
class CFExpansion:
    """Renormalised continued fraction: constant numerators over monic quotients."""

    a0: Polynomial
    pairs: list  # [(beta_i, a_i)], 1-based by position

    def __len__(self):
        return len(self.pairs)

    def beta(self, i: int):
        return self.pairs[i - 1][0]

    def quotient(self, i: int) -> Polynomial:
        return self.pairs[i - 1][1]

    def all_linear(self) -> bool:
        return all(a.degree == 1 for _, a in self.pairs)

    def first_nonlinear(self) -> int | None:
        for i, (_, a) in enumerate(self.pairs, start=1):
            if a.degree != 1:
                return i
        return None

    def linear_constants(self) -> list:
        """The alpha_i with a_i = z + alpha_i; raises on a nonlinear quotient."""
        bad = self.first_nonlinear()
        if bad is not None:
            raise ValueError(f"quotient {bad} has degree {self.quotient(bad).degree}, not 1")
        return [a.coeff(0) for _, a in self.pairs]

    def to_json_dict(self) -> dict:
        return {
            "a0": [scalar_to_json(c) for c in self.a0.coeffs],
            "terms": [
                {"beta": scalar_to_json(b), "a": [scalar_to_json(c) for c in a.coeffs]}
                for b, a in self.pairs
            ],
        }


def expand_g(u, v, depth: int) -> LaurentSeries:
    """The product  z^-1 * prod_t (1 + u z^-3^t + v z^-2*3^t)  to depth exact terms.

    Coefficients of degrees -1 .. -depth are exact (factors with 3^t > depth
    cannot touch them); the floor is -depth.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    u = as_scalar(u)
    v = as_scalar(v)
    one = one_like(u)
    zero = zero_like(u)
    # c[j] is the coefficient of z^(-1-j)
    c = [zero] * depth
    c[0] = one
    step = 1
    while step <= depth:
        two = 2 * step
        for j in range(depth - 1, -1, -1):
            s = c[j]
            if j >= step:
                s = s + u * c[j - step]
            if j >= two:
                s = s + v * c[j - two]
            c[j] = s
        step *= 3
    return LaurentSeries(-1, c, -depth)


def cf_extract(g: LaurentSeries, max_terms: int) -> CFExpansion:
    """Classical quotient extraction, renormalised to (beta_i, monic a_i).

    Stops after max_terms quotients. Raises InsufficientDepth as soon as the
    next quotient is not fully determined by exact coefficients; it never
    returns unreliable terms.
    """
    if g.is_zero_to_floor():
        raise InsufficientDepth("series is zero to its floor; nothing to expand")
    a0 = g.poly_part()
    remainder = g.fractional_part()
    pairs = []
    lam_prev = None
    for _ in range(max_terms):
        f = remainder.inverse()
        b = f.poly_part()
        # f's valuation >= 1, so b is nonconstant and carries f's leading term
        lam = b.leading
        a = b.monic()
        if lam_prev is None:
            beta = 1 / lam
        else:
            beta = 1 / (lam_prev * lam)
        pairs.append((beta, a))
        lam_prev = lam
        remainder = f.fractional_part()
    return CFExpansion(a0, pairs)


def convergents(cf: CFExpansion, k: int):
    """(p_k, q_k) via p_n = a_n p_{n-1} + beta_n p_{n-2} (same for q)."""
    if k < 0 or k > len(cf.pairs):
        raise IndexError(f"convergent {k} outside 0..{len(cf.pairs)}")
    p_prev, q_prev = cf.a0, Polynomial([1])
    if k == 0:
        return p_prev, q_prev
    beta1, a1 = cf.pairs[0]
    p_cur = cf.a0 * a1 + Polynomial([beta1])
    q_cur = a1
    for i in range(2, k + 1):
        beta, a = cf.pairs[i - 1]
        p_cur, p_prev = a * p_cur + p_prev.scale(beta), p_cur
        q_cur, q_prev = a * q_cur + q_prev.scale(beta), q_cur
    return p_cur, q_cur


def convergent_denominator_degrees(cf: CFExpansion) -> list[int]:
    """[deg q_0, deg q_1, ..., deg q_n] for the full expansion."""
    degs = [0]
    q_prev = Polynomial([1])
    q_cur = None
    for i, (beta, a) in enumerate(cf.pairs, start=1):
        if i == 1:
            q_cur = a
        else:
            q_cur, q_prev = a * q_cur + q_prev.scale(beta), q_cur
        degs.append(q_cur.degree)
    return degs


def residual_valuation(g: LaurentSeries, p_k: Polynomial, q_k: Polynomial) -> int:
    """||q_k g - p_k||; equals -(k+1) for a correct all-linear convergent.

    Raises InsufficientDepth when the residual is zero down to its floor,
    i.e. the expansion is too shallow to certify the valuation.
    """
    residual = g.mul_poly(q_k).sub_poly(p_k)
    val = residual.known_valuation()
    if val is None:
        raise InsufficientDepth(
            f"residual vanishes above floor {residual.floor}: valuation not certified"
        )
    return val


def mu_estimate(degrees) -> Fraction:
    """1 + max of consecutive ratios d_{k+1}/d_k over the observed window.

    A finite-depth upper-evidence estimate for the irrationality exponent;
    callers window by slicing the degree list. Ratios with a zero
    denominator entry (d_0 = 0) are skipped.
    """
    degrees = list(degrees)
    if len(degrees) < 2:
        raise NeedTwoTerms("need at least two degrees")
    ratios = [
        Fraction(b, a) for a, b in zip(degrees, degrees[1:]) if a != 0
    ]
    if not ratios:
        raise NeedTwoTerms("no usable consecutive ratio (zero denominators)")
    return 1 + max(ratios)
