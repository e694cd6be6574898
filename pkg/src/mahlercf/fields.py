"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields F_p.

Rationals are ``fractions.Fraction`` (always lowest terms, positive
denominator). Prime-field elements are thin immutable wrappers around a
residue in [0, p); arithmetic mixes freely with Python ints but refuses to
mix distinct moduli. Root finding mod p is brute force: every polynomial we
care about has degree <= 4 and p stays small, so O(p) per polynomial is
cheap and leaves no room for algorithmic bugs.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

import numpy as np

# The rational scalar type used for all Q-mode runs.
ExactRational = Fraction


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting 0 in F_p; signals a division failure."""


@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (intended range n <= 10^9)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending."""
    if hi < 2:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(q) for q in np.nonzero(sieve)[0] if q >= lo]


class PrimeFieldElement:
    """A residue modulo an odd prime p >= 3.

    Immutable; arithmetic with ints lifts them into the same field, while
    mixing elements of different moduli is a hard error (silent coercion
    would corrupt scan results).
    """

    __slots__ = ("residue", "p")

    def __init__(self, value: int, p: int):
        if p < 3 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        object.__setattr__(self, "residue", value % p)
        object.__setattr__(self, "p", p)

    @classmethod
    def _make(cls, residue: int, p: int) -> "PrimeFieldElement":
        # internal fast path: p already validated, residue already reduced
        el = object.__new__(cls)
        object.__setattr__(el, "residue", residue)
        object.__setattr__(el, "p", p)
        return el

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError(
                    f"moduli mismatch: cannot combine F_{self.p} with F_{other.p}"
                )
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make((self.residue + r) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make((self.residue - r) % self.p, self.p)

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make((r - self.residue) % self.p, self.p)

    def __mul__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(self.residue * r % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self * fp_inv(self._make(r, self.p))

    def __rtruediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return self._make(r, self.p) * fp_inv(self)

    def __neg__(self):
        return self._make(-self.residue % self.p, self.p)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return fp_inv(self) ** (-e)
        return self._make(pow(self.residue, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"


class PrimeField:
    """Factory for PrimeFieldElement values sharing one validated modulus."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 3 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        self.p = p

    def __call__(self, value: int) -> PrimeFieldElement:
        return PrimeFieldElement._make(value % self.p, self.p)

    @property
    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement._make(0, self.p)

    @property
    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement._make(1 % self.p, self.p)

    def from_rational(self, q: Fraction) -> PrimeFieldElement:
        """Reduce a rational mod p; fails when the denominator is divisible by p."""
        num, den = q.numerator, q.denominator
        if den % self.p == 0:
            raise ZeroInverse(f"denominator {den} not invertible mod {self.p}")
        return self(num) / self(den)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def fp_inv(a: PrimeFieldElement) -> PrimeFieldElement:
    """Multiplicative inverse in F_p; raises ZeroInverse on a == 0."""
    if a.residue == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return PrimeFieldElement._make(pow(a.residue, a.p - 2, a.p), a.p)


def one_like(x):
    """The multiplicative identity of x's field (Fraction or PrimeFieldElement)."""
    if isinstance(x, PrimeFieldElement):
        return PrimeFieldElement._make(1 % x.p, x.p)
    return Fraction(1)


def zero_like(x):
    """The additive identity of x's field."""
    if isinstance(x, PrimeFieldElement):
        return PrimeFieldElement._make(0, x.p)
    return Fraction(0)


def as_scalar(x):
    """Lift plain ints to Fraction; pass exact scalars through unchanged.

    Guards the Q-mode entry points against int/int -> float surprises.
    """
    if isinstance(x, (Fraction, PrimeFieldElement)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int, Fraction or PrimeFieldElement, got {type(x).__name__}")


def poly_roots_mod_p(coeffs, p: int) -> set[int]:
    """All x in [0, p) with sum(coeffs[i] * x^i) == 0 mod p, by exhaustive scan.

    coeffs are integers, ascending by degree, degree <= 4 after reduction
    mod p. The brute-force budget is p <= 10^6.
    """
    if not is_prime(p) or p < 2:
        raise ValueError(f"p must be prime, got {p}")
    if p > 10**6:
        raise ValueError(f"brute-force root finding capped at p = 10^6, got {p}")
    reduced = [c % p for c in coeffs]
    while reduced and reduced[-1] == 0:
        reduced.pop()
    if len(reduced) - 1 > 4:
        raise ValueError(f"degree {len(reduced) - 1} > 4 not supported")
    if not reduced:
        # zero polynomial: everything is a root
        return set(range(p))
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(reduced):
        acc = (acc * xs + c) % p
    return {int(x) for x in np.nonzero(acc == 0)[0]}
