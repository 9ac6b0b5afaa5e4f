"""Branch-multiplicity bounds, Riemann-Hurwitz bookkeeping and moduli counts
for primitive solvable covers.

All dimension bounds are exact ``Fraction`` values; rounding is applied only
to quantities that are integers by nature (branch multiplicities).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .arith import factor_prime_power, is_prime, prime_powers_between, primes_up_to
from .perm import CycleType, Permutation, cycle_type

RATIONAL = "rational"
ELLIPTIC = "elliptic"
TARGET_GENUS = {RATIONAL: 0, ELLIPTIC: 1}
TARGET_ALIASES = {"p1": RATIONAL, "rational": RATIONAL, "0": RATIONAL,
                  "elliptic": ELLIPTIC, "1": ELLIPTIC}


class HurwitzError(ValueError):
    pass


class NotPrimePower(HurwitzError):
    """No primitive solvable cover has this degree."""


class NegativeBranching(HurwitzError):
    pass


class ParityViolation(HurwitzError):
    pass


class NegativeGenus(HurwitzError):
    pass


def _prime_power(d: int) -> tuple[int, int]:
    pk = factor_prime_power(d)
    if pk is None:
        raise NotPrimePower(f"degree {d} is not a prime power; "
                            "a primitive solvable group of this degree does not exist")
    return pk


def is_mersenne_case(d: int) -> bool:
    pk = factor_prime_power(d)
    return pk is not None and pk[0] == 2 and is_prime(d - 1)


def zariski_lower_bound(d: int, mersenne: bool = True) -> int:
    """Least b(y) at any branch point of a primitive solvable degree-d cover.

    ceil((p^k - p^(k-1)) / 2) for d = p^k, raised to 2^(k-1) - 1 when p = 2
    and d - 1 is prime.  ``mersenne=False`` returns the first bound alone.
    """
    if d < 2:
        raise HurwitzError("degree must be at least 2")
    p, k = _prime_power(d)
    bound = ceil(Fraction(p**k - p ** (k - 1), 2))
    if mersenne and p == 2 and is_prime(d - 1):
        bound = max(bound, 2 ** (k - 1) - 1)
    return bound


def branch_divisor_degree(gX: int, gY: int, d: int) -> int:
    """deg B = 2 gX - 2 - d (2 gY - 2)."""
    if gX < 0 or gY < 0 or d < 1:
        raise HurwitzError("genera must be >= 0 and degree >= 1")
    deg = 2 * gX - 2 - d * (2 * gY - 2)
    if deg < 0:
        raise NegativeBranching(f"no degree-{d} cover of genus {gX} over genus {gY}: deg B = {deg}")
    return deg


def genus_from_branching(d: int, h: int, total: int) -> int:
    """Genus g with 2g - 2 = d(2h - 2) + total."""
    twice = d * (2 * h - 2) + total + 2
    if twice % 2:
        raise ParityViolation(f"total branching {total} has the wrong parity for degree {d}")
    g = twice // 2
    if g < 0:
        raise NegativeGenus(f"branch data gives genus {g}")
    return g


@dataclass(frozen=True)
class BranchData:
    """Local monodromy cycle types of a hypothetical degree-d cover of a genus-h curve."""

    degree: int
    target_genus: int
    branch_points: tuple[CycleType, ...]

    def __post_init__(self):
        object.__setattr__(self, "branch_points", tuple(self.branch_points))
        for ct in self.branch_points:
            if ct.degree != self.degree:
                raise HurwitzError(f"cycle type {ct} does not have degree {self.degree}")
            if ct.branch_contribution < 1:
                raise HurwitzError("a branch point needs a cycle of length >= 2")

    @classmethod
    def from_permutations(cls, entries: Iterable[Permutation], target_genus: int = 0) -> "BranchData":
        entries = [g for g in entries if not g.is_identity()]
        d = entries[0].degree
        return cls(d, target_genus, tuple(cycle_type(g) for g in entries))

    @property
    def r(self) -> int:
        return len(self.branch_points)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(ct.branch_contribution for ct in self.branch_points)

    @property
    def total_branching(self) -> int:
        return sum(self.multiplicities)


def rh_genus(branch: BranchData) -> int:
    return genus_from_branching(branch.degree, branch.target_genus, branch.total_branching)


def _norm_target(target: str) -> str:
    try:
        return TARGET_ALIASES[str(target).lower()]
    except KeyError:
        raise HurwitzError(f"unknown target {target!r}; use rational/p1 or elliptic") from None


@dataclass(frozen=True)
class DimensionBound:
    d: int
    p: int
    k: int
    l: int
    target: str
    genus: int
    bound: Fraction

    @property
    def target_genus(self) -> int:
        return TARGET_GENUS[self.target]

    @property
    def bound_floor(self) -> int:
        return self.bound.numerator // self.bound.denominator

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "k": self.k,
            "l": self.l,
            "target": self.target,
            "genus": self.genus,
            "bound_exact": fraction_str(self.bound),
            "bound_floor": self.bound_floor,
        }


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def family_dimension_bound(g: int, d: int, target: str = RATIONAL,
                           mersenne: bool = True) -> DimensionBound:
    """Dimension bound for genus-g curves with a primitive solvable degree-d
    map to P^1 ((2g - 2 + 2d)/l - 3) or to an elliptic curve ((2g - 2)/l)."""
    target = _norm_target(target)
    p, k = _prime_power(d)
    l = zariski_lower_bound(d, mersenne=mersenne)
    if target == RATIONAL:
        bound = Fraction(2 * g - 2 + 2 * d, l) - 3
    else:
        bound = Fraction(2 * g - 2, l)
    return DimensionBound(d, p, k, l, target, g, bound)


@dataclass
class TailBound:
    """Upper bound on every rational-target row with d = p^k > dmax."""

    p: int | str  # a prime, or "p>dmax" for all larger primes together
    first_degree: int
    l_floor: Fraction
    bound: Fraction

    def as_dict(self) -> dict:
        return {"p": self.p, "first_degree": self.first_degree,
                "l_at_least": fraction_str(self.l_floor), "bound": fraction_str(self.bound)}


@dataclass
class ScanResult:
    genus: int
    dmin: int
    dmax: int
    table: list[DimensionBound]
    tails: list[TailBound] = field(default_factory=list)

    def _rows(self, target: str | None) -> list[DimensionBound]:
        return [r for r in self.table if target is None or r.target == target]

    def maximum(self, target: str | None = None) -> Fraction:
        return max(r.bound for r in self._rows(target))

    def argmax(self, target: str | None = None) -> list[int]:
        m = self.maximum(target)
        return sorted({r.d for r in self._rows(target) if r.bound == m})

    @property
    def max_bound(self) -> Fraction:
        return self.maximum()

    @property
    def elliptic_plus_modulus(self) -> Fraction:
        """Elliptic maximum with one extra parameter for the target's modulus."""
        return self.maximum(ELLIPTIC) + 1

    @property
    def tail_max(self) -> Fraction:
        return max(t.bound for t in self.tails)

    @property
    def tail_below_max(self) -> bool:
        return self.tail_max < self.maximum(RATIONAL)

    def summary(self) -> dict:
        return {
            "genus": self.genus,
            "dmin": self.dmin,
            "dmax": self.dmax,
            "max_bound": fraction_str(self.max_bound),
            "max_rational": fraction_str(self.maximum(RATIONAL)),
            "argmax_rational": self.argmax(RATIONAL),
            "max_elliptic": fraction_str(self.maximum(ELLIPTIC)),
            "argmax_elliptic": self.argmax(ELLIPTIC),
            "max_elliptic_plus_modulus": fraction_str(self.elliptic_plus_modulus),
            "tail_max": fraction_str(self.tail_max),
            "tail_below_max": self.tail_below_max,
        }


def _tail_bounds(g: int, dmax: int) -> list[TailBound]:
    """For d = p^k with l >= d(p - 1)/(2p): bound <= (2g - 2)/l + 4p/(p - 1) - 3.

    Per prime p <= dmax the first power beyond dmax gives the smallest l.
    Primes above dmax are handled together: l >= (p - 1)/2 >= dmax/2 and
    4p/(p - 1) <= 4(dmax + 1)/dmax.
    """
    out = []
    for p in primes_up_to(dmax):
        d = p
        while d <= dmax:
            d *= p
        l_floor = Fraction(d * (p - 1), 2 * p)
        bound = Fraction(2 * g - 2) / l_floor + Fraction(4 * p, p - 1) - 3
        out.append(TailBound(p, d, l_floor, bound))
    l_floor = Fraction(dmax, 2)
    bound = Fraction(2 * g - 2) / l_floor + Fraction(4 * (dmax + 1), dmax) - 3
    out.append(TailBound("p>dmax", dmax + 1, l_floor, bound))
    return out


def corollary_scan(g: int, dmax: int = 10_000, dmin: int = 5,
                   targets: Sequence[str] = (RATIONAL, ELLIPTIC)) -> ScanResult:
    """Evaluate the dimension bound at every prime power dmin <= d <= dmax."""
    if dmax < dmin:
        raise HurwitzError(f"dmax must be at least {dmin}")
    targets = [_norm_target(t) for t in targets]
    table = [family_dimension_bound(g, d, t)
             for d, _, _ in prime_powers_between(dmin, dmax) for t in targets]
    return ScanResult(g, dmin, dmax, table, _tail_bounds(g, dmax))
