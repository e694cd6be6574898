"""The seven local residue conditions on (u, v) mod p that force every beta
in the block recurrence to stay nonzero mod p (hence nonzero over Q, hence
all partial quotients linear).

Case table (p >= 3 prime; phi/delta are roots of the stated polynomials):

    C1  u^2 = 3,        v = 1
    C2  u^2 = -3,       v = -1
    C3  u = +-phi,      v = 0          phi^2 + phi + 1 = 0
    C4  u = +-phi,      v = -1         phi^4 + 4 phi^2 + 1 = 0
    C5  u = +-phi,      v = delta      delta^2 - delta + 1 = 0, phi^2 = 2 delta
    C6  u = 0,          v = +-delta    delta^2 + delta + 1 = 0
    C7  u = +-2 delta^2, v = delta     delta^2 + delta + 1 = 0, p != 3

Root finding is exhaustive over F_p (cheap at these sizes); enumeration and
decision are kept in one code path so they cannot drift apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .fields import is_prime, poly_roots_mod_p, primes_between

CASE_IDS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")


@dataclass(frozen=True)
class ConditionWitness:
    """One satisfied condition with the parameters that certify it."""

    case: str
    p: int
    u: int  # residues in [0, p)
    v: int
    phi: Optional[int] = None
    delta: Optional[int] = None
    sign: int = 1  # u = sign*phi (C3-C5), v = sign*delta (C6), u = sign*2*delta^2 (C7)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)

    def validate(self) -> bool:
        """Re-check the defining congruences from the stored fields alone."""
        p, u, v = self.p, self.u, self.v
        if self.case == "C1":
            return (u * u - 3) % p == 0 and v == 1 % p
        if self.case == "C2":
            return (u * u + 3) % p == 0 and v == -1 % p
        if self.case == "C3":
            f = self.phi
            return (f * f + f + 1) % p == 0 and u == self.sign * f % p and v == 0
        if self.case == "C4":
            f = self.phi
            return (f ** 4 + 4 * f * f + 1) % p == 0 and u == self.sign * f % p and v == -1 % p
        if self.case == "C5":
            f, d = self.phi, self.delta
            return (
                (d * d - d + 1) % p == 0
                and (f * f - 2 * d) % p == 0
                and u == self.sign * f % p
                and v == d % p
            )
        if self.case == "C6":
            d = self.delta
            return (d * d + d + 1) % p == 0 and u == 0 and v == self.sign * d % p
        if self.case == "C7":
            d = self.delta
            return (
                p != 3
                and (d * d + d + 1) % p == 0
                and u == self.sign * 2 * d * d % p
                and v == d % p
            )
        return False

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "p": self.p,
            "u": self.u,
            "v": self.v,
            "phi": self.phi,
            "delta": self.delta,
            "sign": self.sign,
        }


def _check_p(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 3, got {p}")


def iter_witnesses(p: int) -> Iterator[ConditionWitness]:
    """Every (case, parameter, sign) combination satisfied at p.

    Distinct parameter choices may land on the same residue pair; consumers
    that want sets deduplicate at the pair level.
    """
    _check_p(p)
    for r in sorted(poly_roots_mod_p([-3, 0, 1], p)):
        yield ConditionWitness("C1", p, u=r, v=1 % p)
    for r in sorted(poly_roots_mod_p([3, 0, 1], p)):
        yield ConditionWitness("C2", p, u=r, v=-1 % p)
    for phi in sorted(poly_roots_mod_p([1, 1, 1], p)):
        for s in (1, -1):
            yield ConditionWitness("C3", p, u=s * phi % p, v=0, phi=phi, sign=s)
    for phi in sorted(poly_roots_mod_p([1, 0, 4, 0, 1], p)):
        for s in (1, -1):
            yield ConditionWitness("C4", p, u=s * phi % p, v=-1 % p, phi=phi, sign=s)
    for delta in sorted(poly_roots_mod_p([1, -1, 1], p)):
        for phi in sorted(poly_roots_mod_p([-2 * delta, 0, 1], p)):
            for s in (1, -1):
                yield ConditionWitness(
                    "C5", p, u=s * phi % p, v=delta, phi=phi, delta=delta, sign=s
                )
    for delta in sorted(poly_roots_mod_p([1, 1, 1], p)):
        for s in (1, -1):
            yield ConditionWitness("C6", p, u=0, v=s * delta % p, delta=delta, sign=s)
    if p != 3:
        for delta in sorted(poly_roots_mod_p([1, 1, 1], p)):
            for s in (1, -1):
                yield ConditionWitness(
                    "C7", p, u=s * 2 * delta * delta % p, v=delta, delta=delta, sign=s
                )


def satisfying_pairs(p: int) -> dict[tuple[int, int], list[ConditionWitness]]:
    """All residue pairs satisfying some condition at p, with their witnesses."""
    out: dict[tuple[int, int], list[ConditionWitness]] = {}
    for w in iter_witnesses(p):
        out.setdefault(w.pair, []).append(w)
    return out


def check_pair(u: int, v: int, p: int) -> list[ConditionWitness]:
    """Witnesses for (u mod p, v mod p), at most one per case.

    For cases with a +-sign the canonical witness takes sign +1 when both
    parameterisations match; the full enumeration (both signs, all roots)
    lives in iter_witnesses.
    """
    _check_p(p)
    um, vm = u % p, v % p
    out = []
    if (um * um - 3) % p == 0 and vm == 1 % p:
        out.append(ConditionWitness("C1", p, u=um, v=vm))
    if (um * um + 3) % p == 0 and vm == -1 % p:
        out.append(ConditionWitness("C2", p, u=um, v=vm))
    if vm == 0:
        if (um * um + um + 1) % p == 0:
            out.append(ConditionWitness("C3", p, u=um, v=vm, phi=um, sign=1))
        elif (um * um - um + 1) % p == 0:
            out.append(ConditionWitness("C3", p, u=um, v=vm, phi=-um % p, sign=-1))
    if vm == -1 % p and (um ** 4 + 4 * um * um + 1) % p == 0:
        out.append(ConditionWitness("C4", p, u=um, v=vm, phi=um, sign=1))
    if (vm * vm - vm + 1) % p == 0 and (um * um - 2 * vm) % p == 0:
        out.append(ConditionWitness("C5", p, u=um, v=vm, phi=um, delta=vm, sign=1))
    if um == 0:
        if (vm * vm + vm + 1) % p == 0:
            out.append(ConditionWitness("C6", p, u=um, v=vm, delta=vm, sign=1))
        elif (vm * vm - vm + 1) % p == 0:
            # v = -delta with delta a root of x^2 + x + 1
            out.append(ConditionWitness("C6", p, u=um, v=vm, delta=-vm % p, sign=-1))
    if p != 3 and (vm * vm + vm + 1) % p == 0:
        if um == 2 * vm * vm % p:
            out.append(ConditionWitness("C7", p, u=um, v=vm, delta=vm, sign=1))
        elif um == -2 * vm * vm % p:
            out.append(ConditionWitness("C7", p, u=um, v=vm, delta=vm, sign=-1))
    return out


def covered(u: int, v: int, primes) -> Optional[ConditionWitness]:
    """First witness found scanning the given primes in ascending order."""
    for p in sorted(primes):
        ws = check_pair(u, v, p)
        if ws:
            return ws[0]
    return None


def covered_up_to(u: int, v: int, prime_max: int) -> Optional[ConditionWitness]:
    """covered() over all primes 3 <= p <= prime_max."""
    return covered(u, v, primes_between(3, prime_max))
