"""Affine permutation groups and the census of primitive solvable groups.

Points of degree p**k are labelled by vectors of F_p^k: point ``i`` is the
vector of base-p digits of ``i``, least significant digit first.  The same
digits are the polynomial coefficients of the corresponding element of the
field with p**k elements, so affine and semilinear constructions share one
labelling.

Census strategy
---------------
A nontrivial solvable group has a nontrivial abelian normal subgroup (the
last nonzero term of its derived series).  In a primitive group every
nontrivial normal subgroup is transitive, since its orbits form a block
system, and a transitive abelian group acts regularly.  So every primitive
solvable G of degree d contains a regular abelian normal subgroup N with
|N| = d, and G lies in the normalizer of N in S_d, which is the holomorph
N x| Aut(N).  Up to conjugacy in S_d, N is the regular representation of
one of the abelian groups of order d.  The census therefore walks the
subgroups of Aut(N) (up to conjugacy), forms N x| H and keeps those that are
primitive and solvable, both checked directly.  Survivors from different N
are merged with an exact conjugacy test.  For d <= 6 the result is
cross-checked against a plain subgroup-lattice scan of S_d.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm, prod

from .arith import factor_prime_power, is_prime
from .group import (
    PermGroup,
    conjugating_element,
    is_primitive,
    is_solvable,
    is_transitive,
    max_fixed_points,
    subgroup_class_representatives,
    symmetric_group,
    verify_structure,
)
from .perm import Permutation

MAX_DEGREE = 16
AUT_BUDGET = 2000


class DegreeBudgetExceeded(Exception):
    pass


class NonExhaustiveWarning(UserWarning):
    """The census at this degree certifies constructed families only."""


# -- finite fields -----------------------------------------------------------------


def _digits(i: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(i % p)
        i //= p
    return out


def _undigits(v, p: int) -> int:
    n = 0
    for c in reversed(v):
        n = n * p + c
    return n


def _polymulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for j in range(k + 1):
                prod[deg - k + j] = (prod[deg - k + j] - c * mod[j]) % p
    return prod[:k]


@lru_cache(maxsize=None)
def _irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k over
    F_p, coefficients lowest degree first."""
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        mod = tuple(reversed(tail)) + (1,)
        if mod[0] == 0:
            continue
        # Rabin: x^(p^k) = x and gcd(f, x^(p^(k/r)) - x) = 1 for primes r | k
        if _has_irreducible_shape(mod, p, k):
            return mod
    raise AssertionError("no irreducible polynomial found")


def _xpow_frob(mod, p, k, times):
    """x^(p^times) mod (mod) as a coefficient list."""
    y = [0] * k
    y[1] = 1
    for _ in range(times):
        acc = [1] + [0] * (k - 1)
        base, e = y, p
        while e:
            if e & 1:
                acc = _polymulmod(acc, base, mod, p)
            base = _polymulmod(base, base, mod, p)
            e >>= 1
        y = acc
    return y


def _has_irreducible_shape(mod, p, k) -> bool:
    x = [0] * k
    x[1] = 1
    if _xpow_frob(mod, p, k, k) != x:
        return False
    for r in range(2, k + 1):
        if k % r == 0 and is_prime(r):
            if _poly_gcd_nontrivial(mod, _xpow_frob(mod, p, k, k // r), p):
                return False
    return True


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd_nontrivial(mod, xq, p) -> bool:
    """Does gcd(mod, x^q - x) have positive degree?"""
    b = list(xq) + [0]
    b[1] = (b[1] - 1) % p
    a, b = _poly_trim(mod), _poly_trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            a = _poly_trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) > 1


@dataclass(frozen=True)
class GaloisField:
    """The field with p**k elements, elements labelled 0..p**k - 1 by digits."""

    p: int
    k: int

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def modulus(self) -> tuple[int, ...]:
        return _irreducible(self.p, self.k)

    def add(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p)

    def mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        return _undigits(_polymulmod(_digits(a, p, k), _digits(b, p, k), self.modulus, p), p)

    def power(self, a: int, e: int) -> int:
        acc = 1
        for _ in range(e):
            acc = self.mul(acc, a)
        return acc

    def primitive_element(self) -> int:
        for a in range(2, self.q) if self.q > 2 else [1]:
            x, n = a, 1
            while x != 1:
                x = self.mul(x, a)
                n += 1
            if n == self.q - 1:
                return a
        return 1


# -- constructions -------------------------------------------------------------------


def _check_budget(p: int, k: int) -> None:
    if not is_prime(p) or k < 1:
        raise ValueError(f"need a prime p and k >= 1, got p={p}, k={k}")
    if p**k > MAX_DEGREE:
        raise DegreeBudgetExceeded(f"degree {p**k} exceeds budget {MAX_DEGREE}")


def _linear_perm(matrix, p: int, k: int) -> Permutation:
    imgs = []
    for i in range(p**k):
        v = _digits(i, p, k)
        w = [sum(matrix[r][c] * v[c] for c in range(k)) % p for r in range(k)]
        imgs.append(_undigits(w, p))
    return Permutation(imgs)


def _translation(vec, p: int, k: int) -> Permutation:
    return Permutation(
        _undigits([(x + y) % p for x, y in zip(_digits(i, p, k), vec)], p) for i in range(p**k)
    )


def gl_generators(p: int, k: int) -> list[list[list[int]]]:
    """Matrices generating GL(k, p).

    diag(w, 1, ..., 1) with w the least primitive root mod p (omitted for
    p = 2); for k >= 2 also the transvection I + E_{0,1} and the cyclic
    coordinate shift e_i -> e_{i+1}.  Conjugates of the transvection under
    the shift give every adjacent transvection, and those generate SL(k, p);
    the diagonal matrix supplies every determinant.
    """
    gens = []
    if p > 2:
        w = GaloisField(p, 1).primitive_element()
        gens.append([[w if (r == c == 0) else int(r == c) for c in range(k)] for r in range(k)])
    if k >= 2:
        gens.append([[int(r == c or (r == 0 and c == 1)) for c in range(k)] for r in range(k)])
        gens.append([[int(r == (c + 1) % k) for c in range(k)] for r in range(k)])
    return gens


def affine_group(p: int, k: int) -> PermGroup:
    """AGL(k, p) acting on F_p^k: translations and GL(k, p)."""
    _check_budget(p, k)
    e0 = [1] + [0] * (k - 1)
    gens = [_translation(e0, p, k)] + [_linear_perm(m, p, k) for m in gl_generators(p, k)]
    return PermGroup(gens, p**k, name=f"AGL({k},{p})")


def semilinear_group(p: int, k: int) -> PermGroup:
    """AGammaL(1, p^k): x -> a x^(p^i) + b on the field with p**k elements."""
    _check_budget(p, k)
    F = GaloisField(p, k)
    q = F.q
    w = F.primitive_element()
    gens = [
        Permutation(F.add(x, 1) for x in range(q)),
        Permutation(F.mul(w, x) for x in range(q)),
    ]
    if k > 1:
        gens.append(Permutation(F.power(x, p) for x in range(q)))
    return PermGroup(gens, q, name=f"AGammaL(1,{q})")


# -- abelian regular groups and holomorphs -----------------------------------------------


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def abelian_invariants(d: int) -> list[tuple[int, ...]]:
    """Cyclic factor orders (primary decomposition) of every abelian group of order d."""
    factors = []
    n, q = d, 2
    while n > 1:
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if e:
            factors.append([tuple(q**part for part in lam) for lam in _partitions(e)])
        q += 1
    return [tuple(sum(combo, ())) for combo in itertools.product(*factors)] if factors else [()]


class _MixedRadix:
    def __init__(self, orders):
        self.orders = tuple(orders)
        self.size = 1
        for n in self.orders:
            self.size *= n

    def decode(self, i):
        out = []
        for n in self.orders:
            out.append(i % n)
            i //= n
        return out

    def encode(self, v):
        i = 0
        for c, n in zip(reversed(v), reversed(self.orders)):
            i = i * n + c % n
        return i

    def add(self, a, b):
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])


def regular_abelian(orders: tuple[int, ...]) -> PermGroup:
    """The regular representation of C_{n1} x ... x C_{nm} (translations)."""
    R = _MixedRadix(orders)
    gens = []
    for j in range(len(orders)):
        e = [0] * len(orders)
        e[j] = 1
        ej = R.encode(e)
        gens.append(Permutation(R.add(x, ej) for x in range(R.size)))
    return PermGroup(gens, R.size, name="x".join(f"C{n}" for n in orders) or "C1")


@lru_cache(maxsize=None)
def automorphisms(orders: tuple[int, ...]) -> list[Permutation]:
    """Aut of the abelian group as permutations of its points (fixing 0),
    found by trying every assignment of images to the standard generators."""
    R = _MixedRadix(orders)
    elem_order = []
    for x in range(R.size):
        v = R.decode(x)
        o = 1
        for c, n in zip(v, orders):
            o = lcm(o, n // gcd(c, n))
        elem_order.append(o)
    choices = [[x for x in range(R.size) if n % elem_order[x] == 0] for n in orders]
    out = []
    for imgs in itertools.product(*choices):
        perm = []
        for x in range(R.size):
            acc = 0
            for c, a in zip(R.decode(x), imgs):
                for _ in range(c):
                    acc = R.add(acc, a)
            perm.append(acc)
        if len(set(perm)) == R.size:
            out.append(Permutation(perm, check=False))
    return sorted(out)


@dataclass
class CensusGroup:
    group: PermGroup
    flavor: str
    regular_normal: tuple[int, ...]


def _census_from_holomorph(orders: tuple[int, ...], aut_elems: list[Permutation] | None = None
                           ) -> list[CensusGroup]:
    N = regular_abelian(orders)
    d = N.degree
    if aut_elems is None:
        aut_elems = automorphisms(orders)
    Aut = PermGroup._from_raw((a.images for a in aut_elems), d)
    found = []
    for H in subgroup_class_representatives(Aut):
        Hgens = PermGroup._from_raw(H, d)._gens
        G = PermGroup(list(N.generators) + [Permutation(h, check=False) for h in Hgens], d)
        if is_primitive(G) and is_solvable(G):
            label = "x".join(f"C{n}" for n in orders)
            found.append(CensusGroup(G, f"{label}:H{len(H)}", orders))
    return found


def _dedup(groups: list[CensusGroup]) -> list[CensusGroup]:
    kept: list[CensusGroup] = []
    for cg in groups:
        if not any(k.group.order() == cg.group.order() and conjugating_element(k.group, cg.group)
                   for k in kept):
            kept.append(cg)
    kept.sort(key=lambda c: (c.group.order(), c.flavor, c.group.cycle_strings()))
    counts: dict[str, int] = {}
    for c in kept:
        counts[c.flavor] = counts.get(c.flavor, 0) + 1
    seen: dict[str, int] = {}
    for c in kept:
        if counts[c.flavor] > 1:
            i = seen.get(c.flavor, 0)
            seen[c.flavor] = i + 1
            c.flavor += "abcdefghijklmnopqrstuvwxyz"[i]
        c.group.name = c.flavor
    return kept


def census_is_exhaustive(d: int, aut_budget: int = AUT_BUDGET) -> bool:
    return all(_aut_size(orders) <= aut_budget for orders in abelian_invariants(d))


def _aut_size(orders: tuple[int, ...]) -> int:
    pk = factor_prime_power(prod(orders))
    if pk and all(n == pk[0] for n in orders):
        # |GL(k, p)| without enumerating it
        p, k = pk
        return prod(p**k - p**i for i in range(k))
    return len(automorphisms(orders))


def census_entries(d: int, aut_budget: int = AUT_BUDGET) -> tuple[list[CensusGroup], bool]:
    """Census records and an exhaustiveness flag.

    Abelian groups whose automorphism group is too large to walk (only
    C_2^4 at degree 16) are replaced by the subgroups of AGammaL(1, 16)
    containing the translations.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    if d > MAX_DEGREE:
        raise DegreeBudgetExceeded(f"degree {d} exceeds budget {MAX_DEGREE}")
    found: list[CensusGroup] = []
    exhaustive = True
    for orders in abelian_invariants(d):
        if _aut_size(orders) <= aut_budget:
            found.extend(_census_from_holomorph(orders))
            continue
        exhaustive = False
        pk = factor_prime_power(d)
        if pk and all(n == pk[0] for n in orders):
            found.extend(_seeded_semilinear(*pk))
    return _dedup(found), exhaustive


def _seeded_semilinear(p: int, k: int) -> list[CensusGroup]:
    G = semilinear_group(p, k)
    stab = [g for g in G if g(0) == 0]
    orders = (p,) * k
    out = []
    for cg in _census_from_holomorph(orders, aut_elems=stab):
        cg.flavor = f"AGammaL(1,{p**k})-sub:H{cg.group.order() // p**k}"
        out.append(cg)
    return out


def census_primitive_solvable(d: int, aut_budget: int = AUT_BUDGET) -> list[PermGroup]:
    """Primitive solvable subgroups of S_d up to conjugacy.

    Empty when d is not a prime power.  Emits ``NonExhaustiveWarning`` when
    the degree could only be covered by seeded constructions (d = 16).
    """
    entries, exhaustive = census_entries(d, aut_budget)
    if not exhaustive:
        warnings.warn(f"census at degree {d} covers constructed families only",
                      NonExhaustiveWarning, stacklevel=2)
    return [e.group for e in entries]


def census_by_subgroup_scan(d: int) -> list[PermGroup]:
    """Independent census for small d: walk the solvable part of the
    subgroup lattice of S_d up to conjugacy and keep the primitive classes."""
    if d > 6:
        raise DegreeBudgetExceeded("subgroup scan of S_d is limited to d <= 6")
    S = symmetric_group(d)

    def solvable(H: frozenset) -> bool:
        return is_solvable(PermGroup._from_raw(H, d))

    out = []
    for H in subgroup_class_representatives(S, expand=solvable):
        G = PermGroup._from_raw(H, d)
        if is_transitive(G) and is_primitive(G) and is_solvable(G):
            out.append(G)
    return out


# -- the end-to-end fixed point verification -------------------------------------------


def fixed_point_bound(d: int) -> int | None:
    """Largest fixed-point count allowed for a nonidentity element of a
    primitive solvable group of degree d (p^(k-1), or 2 when d = 2^k and
    d - 1 is prime); None when d is not a prime power."""
    pk = factor_prime_power(d)
    if pk is None:
        return None
    p, k = pk
    bound = p ** (k - 1)
    if p == 2 and is_prime(d - 1):
        bound = min(bound, 2)
    return bound


@dataclass
class Section2Row:
    degree: int
    flavor: str
    order: int
    p: int | None
    k: int | None
    bound: int | None
    mersenne: bool
    max_fixed: int
    witness: str
    structure_ok: bool
    exhaustive: bool
    generators: list[str]

    @property
    def violation(self) -> bool:
        return (not self.structure_ok) or self.bound is None or self.max_fixed > self.bound

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "flavor": self.flavor,
            "order": self.order,
            "p": self.p,
            "k": self.k,
            "bound": self.bound,
            "mersenne": self.mersenne,
            "max_fixed_points": self.max_fixed,
            "witness": self.witness,
            "structure_ok": self.structure_ok,
            "exhaustive": self.exhaustive,
            "generators": self.generators,
            "violation": self.violation,
        }


@dataclass
class Section2Report:
    rows: list[Section2Row]
    degrees: list[int]
    empty_degrees: list[int]

    @property
    def violations(self) -> list[Section2Row]:
        return [r for r in self.rows if r.violation]


def census_rows(d: int, aut_budget: int = AUT_BUDGET) -> list[Section2Row]:
    entries, exhaustive = census_entries(d, aut_budget)
    rows = []
    pk = factor_prime_power(d)
    for e in entries:
        G = e.group
        rep = verify_structure(G)
        value, witness = max_fixed_points(G)
        rows.append(Section2Row(
            degree=d,
            flavor=e.flavor,
            order=G.order(),
            p=rep.p,
            k=rep.k,
            bound=fixed_point_bound(d),
            mersenne=bool(pk and pk[0] == 2 and is_prime(d - 1)),
            max_fixed=value,
            witness=str(witness),
            structure_ok=rep.all_pass,
            exhaustive=exhaustive,
            generators=G.cycle_strings(),
        ))
    return rows


def verify_section2(dmax: int, include_seeded: bool = False,
                    aut_budget: int = AUT_BUDGET) -> Section2Report:
    """Census every degree 2..dmax; check structure and fixed-point bounds.

    With ``include_seeded`` the non-exhaustive degree 16 is appended.
    """
    if dmax > 15:
        raise DegreeBudgetExceeded("exhaustive verification runs to degree 15; "
                                   "use include_seeded for degree 16")
    degrees = list(range(2, dmax + 1))
    if include_seeded:
        degrees.append(16)
    rows, empty = [], []
    for d in degrees:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonExhaustiveWarning)
            r = census_rows(d, aut_budget)
        if not r:
            empty.append(d)
        rows.extend(r)
    return Section2Report(rows, degrees, empty)
