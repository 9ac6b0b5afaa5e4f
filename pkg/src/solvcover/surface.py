"""Numerical intersection theory on S = E^(2), the symmetric square of an
elliptic curve, viewed as a ruled surface over E.

Classes are integer combinations aC + bF of the section C = {o + x} and the
fibre F over the origin.  The pairing uses C.C = 1, C.F = 1, F.F = 0: C is
the section attached to the quotient O_E(o) of the rank-two bundle, so
C.C = deg O_E(o) = 1.  Adjunction then gives g(C) = 1 and g(F) = 0, which is
the internal consistency check for these constants.  chi(O_S) = 0 because S
is ruled over a curve of genus 1.
"""

from __future__ import annotations

from dataclasses import dataclass

C_SQUARED = 1
C_DOT_F = 1
F_SQUARED = 0
CHI_O_S = 0


class SurfaceError(ValueError):
    pass


class ParityViolation(SurfaceError):
    pass


class NegativeGenus(SurfaceError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    a: int  # coefficient of C
    b: int  # coefficient of F

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b)

    def __rmul__(self, n: int) -> "DivisorClass":
        return DivisorClass(n * self.a, n * self.b)

    __mul__ = __rmul__

    def __str__(self):
        if self.a == 0 and self.b == 0:
            return "0"
        terms = []
        for coef, sym in ((self.a, "C"), (self.b, "F")):
            if coef == 0:
                continue
            mag = "" if abs(coef) == 1 else str(abs(coef))
            sign = "-" if coef < 0 else "+"
            terms.append((sign, mag + sym))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


C = DivisorClass(1, 0)
F = DivisorClass(0, 1)
ZERO = DivisorClass(0, 0)


def intersect(D1: DivisorClass, D2: DivisorClass) -> int:
    return (D1.a * D2.a * C_SQUARED
            + (D1.a * D2.b + D2.a * D1.b) * C_DOT_F
            + D1.b * D2.b * F_SQUARED)


def canonical_class() -> DivisorClass:
    """K = -2C + F."""
    return DivisorClass(-2, 1)


def adjunction_genus(D: DivisorClass) -> int:
    """Arithmetic genus from 2g - 2 = D.D + D.K."""
    K = canonical_class()
    twice = intersect(D, D) + intersect(D, K) + 2
    if twice % 2:
        raise ParityViolation(f"D.D + D.K is odd for {D}")
    g = twice // 2
    if g < 0:
        raise NegativeGenus(f"adjunction gives genus {g} for {D}")
    return g


def euler_characteristic(D: DivisorClass) -> int:
    """Riemann-Roch: chi(O(D)) = chi(O_S) + (D.D - D.K)/2."""
    K = canonical_class()
    num = intersect(D, D) - intersect(D, K)
    if num % 2:
        raise ParityViolation(f"D.D - D.K is odd for {D}")
    return CHI_O_S + num // 2


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": str(self.expected),
                "actual": str(self.actual), "passed": self.passed}


@dataclass
class SurfaceReport:
    checks: list[Check]
    assumptions: list[str]
    lattice: dict[str, int]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {"assumptions": self.assumptions, "lattice": self.lattice,
                "checks": [c.as_dict() for c in self.checks], "passed": self.passed}


def verify_df_numerics(corollary_bound: int = 8) -> SurfaceReport:
    """Check the numbers of the genus-7 construction on E^(2).

    H = 3C - K must equal 5C - F, a smooth member Z has genus 7, chi(O(H))
    = 9 so |H| is 8-dimensional once higher cohomology vanishes (assumed,
    not checked), the diagonal class is -2K, and letting E vary adds one
    modulus for a 9-dimensional family, one more than ``corollary_bound``.
    """
    K = canonical_class()
    H = 3 * C - K
    Z = DivisorClass(5, -1)
    Delta = -2 * K
    chi_H = euler_characteristic(H)
    dim_H = chi_H - 1
    family = dim_H + 1
    checks = [
        Check("K = -2C + F", DivisorClass(-2, 1), K),
        Check("H = 3C - K = 5C - F", Z, H),
        Check("K.K", 0, intersect(K, K)),
        Check("K.F", -2, intersect(K, F)),
        Check("g(F) (rational fibre)", 0, adjunction_genus(F)),
        Check("g(C) (section isomorphic to E)", 1, adjunction_genus(C)),
        Check("Z.Z", 15, intersect(Z, Z)),
        Check("Z.K", -3, intersect(Z, K)),
        Check("g(Z)", 7, adjunction_genus(Z)),
        Check("chi(O(H))", 9, chi_H),
        Check("dim |H| (given h1 = h2 = 0)", 8, dim_H),
        Check("Delta = -2K = 4C - 2F", DivisorClass(4, -2), Delta),
        Check("Delta.F (lattice number)", 4, intersect(Delta, F)),
        Check("Z.C_p (degree of Z meeting a translate of C)", 4, intersect(Z, C)),
        Check("family dimension = dim |H| + 1 (moduli of E)", 9, family),
        Check("family dimension exceeds the solvable-cover bound", True, family > corollary_bound),
    ]
    assumptions = [
        "C.C = 1, C.F = 1, F.F = 0",
        "chi(O_S) = 0 (ruled surface over a genus-1 curve)",
        "dim |H| = chi(O(H)) - 1 assumes h1(O(H)) = h2(O(H)) = 0; not verified here",
        "the moduli map on |H| is generically finite; not verified here",
    ]
    lattice = {"C.C": C_SQUARED, "C.F": C_DOT_F, "F.F": F_SQUARED, "chi(O_S)": CHI_O_S}
    return SurfaceReport(checks, assumptions, lattice)
