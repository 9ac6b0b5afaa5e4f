"""Exhaustive enumeration of monodromy tuples of tiny degree.

A tuple (g_1, ..., g_r) in S_d^r with g_1 g_2 ... g_r = 1 and transitive
generated group is the branch-cycle data of a connected degree-d cover of
P^1 branched at r points.  The last entry is forced by the others, so the
enumeration runs over S_d^(r-1) in lexicographic order of image sequences.

Group-theoretic properties of <g_1, ..., g_r> are conjugation invariant.
The enumerator conjugates each prefix so that g_1 becomes the fixed
representative of its conjugacy class and memoizes subgroup joins on the
conjugated prefix; the number of closures is then bounded by
(#classes) x |S_d| x (#subgroups) instead of the number of tuples.  Every
check on the entries themselves (fixed points, branch contributions,
product relation) is made on the original, unconjugated tuple.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .arith import factor_prime_power
from .group import (
    PermGroup,
    Raw,
    _cycle_shape,
    _extend,
    _inv,
    _mul,
    is_primitive,
    is_solvable,
    is_transitive,
)
from .hurwitz import genus_from_branching, is_mersenne_case, zariski_lower_bound
from .perm import Permutation, branch_contribution, fixed_point_count

MAX_DEGREE = 6
DEFAULT_BUDGET = 2_000_000

FILTERS = ("transitive", "solvable", "primitive")


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class GroupFacts:
    order: int
    transitive: bool
    solvable: bool
    primitive: bool


class _Lattice:
    """Interned subgroups of S_d with memoized joins."""

    def __init__(self, d: int):
        self.d = d
        self.ident = tuple(range(d))
        self.ids: dict[frozenset, int] = {}
        self.sets: list[frozenset] = []
        self.gens: list[list[Raw]] = []
        self.facts: list[GroupFacts | None] = []
        self.joins: dict[tuple[int, Raw], int] = {}
        self.trivial = self._intern(frozenset([self.ident]), [])

    def _intern(self, s: frozenset, gens: list[Raw]) -> int:
        i = self.ids.get(s)
        if i is None:
            i = len(self.sets)
            self.ids[s] = i
            self.sets.append(s)
            self.gens.append(gens)
            self.facts.append(None)
        return i

    def join(self, h: int, g: Raw) -> int:
        key = (h, g)
        j = self.joins.get(key)
        if j is None:
            H = self.sets[h]
            if g in H:
                j = h
            else:
                out, seen, gens = list(H), set(H), list(self.gens[h])
                _extend(out, seen, gens, g)
                j = self._intern(frozenset(seen), gens)
            self.joins[key] = j
        return j

    def facts_of(self, h: int) -> GroupFacts:
        f = self.facts[h]
        if f is None:
            G = PermGroup._from_raw(self.sets[h], self.d, gens=self.gens[h] or None)
            trans = is_transitive(G)
            f = GroupFacts(G.order(), trans, is_solvable(G), trans and is_primitive(G))
            self.facts[h] = f
        return f


class _Normalizer:
    """For every g in S_d a fixed class representative r and an x with
    g = x r x^-1."""

    def __init__(self, elems: list[Raw]):
        self.rep: dict[Raw, Raw] = {}
        self.xinv: dict[Raw, Raw] = {}
        self.x: dict[Raw, Raw] = {}
        for g in elems:
            if g in self.rep:
                continue
            # g is the smallest element of its class, so it becomes the representative
            for x in elems:
                xi = _inv(x)
                c = _mul(_mul(x, g), xi)
                if c not in self.rep:
                    self.rep[c] = g
                    self.x[c] = x
                    self.xinv[c] = xi


@dataclass
class MonodromyTuple:
    degree: int
    entries: tuple[Permutation, ...]
    facts: GroupFacts

    @property
    def contributions(self) -> tuple[int, ...]:
        return tuple(branch_contribution(g) for g in self.entries)

    @property
    def genus(self) -> int:
        return genus_from_branching(self.degree, 0, sum(self.contributions))

    @property
    def group(self) -> PermGroup:
        return PermGroup(list(self.entries), self.degree)

    def product_is_identity(self) -> bool:
        acc = Permutation.identity(self.degree)
        for g in self.entries:
            acc = acc * g
        return acc.is_identity()

    def as_dict(self) -> dict:
        return {
            "entries": [str(g) for g in self.entries],
            "group_order": self.facts.order,
            "transitive": self.facts.transitive,
            "solvable": self.facts.solvable,
            "primitive": self.facts.primitive,
            "genus": self.genus if self.facts.transitive else None,
            "branch_contributions": list(self.contributions),
        }


def tuple_space_size(d: int, r: int, nonidentity: bool = True) -> int:
    n = 1
    for k in range(2, d + 1):
        n *= k
    return (n - 1 if nonidentity else n) ** (r - 1)


def _check_budget(d: int, r: int, budget: int, nonidentity: bool) -> None:
    if d < 1 or r < 1:
        raise ValueError("degree and number of points must be positive")
    if d > MAX_DEGREE:
        raise BudgetExceeded(f"degree {d} exceeds the enumeration limit {MAX_DEGREE}")
    size = tuple_space_size(d, r, nonidentity)
    if size > budget:
        raise BudgetExceeded(f"{size} tuples exceed the budget {budget}")


def _raw_stream(d: int, r: int, nonidentity: bool, lat: _Lattice
                ) -> Iterator[tuple[tuple[Raw, ...], int]]:
    """(entries, subgroup id) for every tuple with product 1, in lexicographic order."""
    elems = sorted(itertools.permutations(range(d)))
    ident = lat.ident
    firsts = [g for g in elems if not (nonidentity and g == ident)]
    norm = _Normalizer(elems)

    if r == 1:
        if not nonidentity:
            yield (ident,), lat.trivial
        return

    def rec(prefix, prod, h, x, xi):
        if len(prefix) == r - 1:
            last = _inv(prod)
            if nonidentity and last == ident:
                return
            yield prefix + (last,), h
            return
        for g in firsts:
            gc = _mul(_mul(xi, g), x)  # x^-1 g x
            yield from rec(prefix + (g,), _mul(prod, g), lat.join(h, gc), x, xi)

    for g1 in firsts:
        rep, x, xi = norm.rep[g1], norm.x[g1], norm.xinv[g1]
        h = lat.join(lat.trivial, rep)
        yield from rec((g1,), g1, h, x, xi)


def _passes(f: GroupFacts, filters: frozenset[str]) -> bool:
    return all(getattr(f, name) for name in filters)


def enumerate_tuples(d: int, r: int, filters: Iterable[str] = ("transitive",),
                     nonidentity: bool = True, budget: int = DEFAULT_BUDGET,
                     limit: int | None = None) -> Iterator[MonodromyTuple]:
    """Stream every tuple (g_1..g_r) of S_d with product 1 passing the filters."""
    filters = frozenset(filters)
    unknown = filters - set(FILTERS)
    if unknown:
        raise ValueError(f"unknown filters {sorted(unknown)}; choose from {FILTERS}")
    _check_budget(d, r, budget, nonidentity)
    lat = _Lattice(d)
    n = 0
    for entries, h in _raw_stream(d, r, nonidentity, lat):
        f = lat.facts_of(h)
        if not _passes(f, filters):
            continue
        yield MonodromyTuple(d, tuple(Permutation(e, check=False) for e in entries), f)
        n += 1
        if limit is not None and n >= limit:
            return


@dataclass
class Violation:
    entries: list[str]
    index: int
    fixed_points: int
    branch_contribution: int
    reason: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ZariskiCheck:
    degree: int
    points: int
    b_bound: int | None
    fixed_bound: int | None
    tuples_total: int = 0
    transitive_tuples: int = 0
    primitive_solvable_tuples: int = 0
    max_fixed_seen: int | None = None
    min_b_seen: int | None = None
    group_orders: Counter = field(default_factory=Counter)
    violations: list[Violation] = field(default_factory=list)

    @property
    def fixed_bound_tight(self) -> bool:
        return self.max_fixed_seen is not None and self.max_fixed_seen == self.fixed_bound

    @property
    def b_bound_tight(self) -> bool:
        return self.min_b_seen is not None and self.min_b_seen == self.b_bound

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "points": self.points,
            "b_bound": self.b_bound,
            "fixed_bound": self.fixed_bound,
            "tuples_total": self.tuples_total,
            "transitive_tuples": self.transitive_tuples,
            "primitive_solvable_tuples": self.primitive_solvable_tuples,
            "max_fixed_seen": self.max_fixed_seen,
            "min_b_seen": self.min_b_seen,
            "fixed_bound_tight": self.fixed_bound_tight,
            "b_bound_tight": self.b_bound_tight,
            "primitive_solvable_group_orders": {str(k): v for k, v in sorted(self.group_orders.items())},
            "violations": [v.as_dict() for v in self.violations],
        }


def check_zariski_on_tuples(d: int, r: int, budget: int = DEFAULT_BUDGET) -> ZariskiCheck:
    """Check the branch and fixed-point bounds on every primitive solvable tuple.

    Every nonidentity entry of such a tuple must move enough points:
    b(g) >= zariski_lower_bound(d) and fix(g) <= p^(k-1) (<= 2 in the
    Mersenne case).  A primitive solvable tuple at a degree that is not a
    prime power is itself a violation.
    """
    _check_budget(d, r, budget, True)
    pk = factor_prime_power(d)
    if pk is not None:
        p, k = pk
        b_bound = zariski_lower_bound(d)
        fixed_bound = p ** (k - 1)
        if is_mersenne_case(d):
            fixed_bound = min(fixed_bound, 2)
    else:
        b_bound = fixed_bound = None
    rep = ZariskiCheck(d, r, b_bound, fixed_bound)
    lat = _Lattice(d)
    fix_cache: dict[Raw, int] = {}
    b_cache: dict[Raw, int] = {}
    for entries, h in _raw_stream(d, r, True, lat):
        rep.tuples_total += 1
        f = lat.facts_of(h)
        if not f.transitive:
            continue
        rep.transitive_tuples += 1
        if not (f.primitive and f.solvable):
            continue
        rep.primitive_solvable_tuples += 1
        rep.group_orders[f.order] += 1
        for i, g in enumerate(entries):
            nfix = fix_cache.get(g)
            if nfix is None:
                nfix = fix_cache[g] = sum(1 for a, b in enumerate(g) if a == b)
                b_cache[g] = d - len(_cycle_shape(g))
            b = b_cache[g]
            if rep.max_fixed_seen is None or nfix > rep.max_fixed_seen:
                rep.max_fixed_seen = nfix
            if rep.min_b_seen is None or b < rep.min_b_seen:
                rep.min_b_seen = b
            reason = None
            if b_bound is None:
                reason = "primitive solvable group at a degree that is not a prime power"
            elif b < b_bound:
                reason = f"branch contribution {b} < {b_bound}"
            elif nfix > fixed_bound:
                reason = f"{nfix} fixed points > {fixed_bound}"
            if reason:
                rep.violations.append(Violation(
                    [str(Permutation(e, check=False)) for e in entries], i, nfix, b, reason))
    return rep


CENSUS_CLASSES = ("transitive", "solvable", "primitive_solvable")


@dataclass
class GenusCensus:
    degree: int
    points: int
    genera: dict[str, Counter]
    conjugacy_classes: dict[str, Counter] | None = None

    def as_dict(self) -> dict:
        def enc(c: Counter) -> dict:
            return {str(k): v for k, v in sorted(c.items())}

        out = {"degree": self.degree, "points": self.points,
               "genera": {k: enc(v) for k, v in self.genera.items()}}
        if self.conjugacy_classes is not None:
            out["conjugacy_reduced"] = {k: enc(v) for k, v in self.conjugacy_classes.items()}
        return out


def genus_census(d: int, r: int, budget: int = DEFAULT_BUDGET) -> GenusCensus:
    """Multiset of genera per group class over all transitive nonidentity tuples.

    For d <= 4 the tuples are also counted up to simultaneous conjugation.
    """
    _check_budget(d, r, budget, True)
    genera = {c: Counter() for c in CENSUS_CLASSES}
    reduced = {c: Counter() for c in CENSUS_CLASSES} if d <= 4 else None
    lat = _Lattice(d)
    conj = None
    if reduced is not None:
        conj = [(x, _inv(x)) for x in itertools.permutations(range(d))]
    seen: set = set()
    for entries, h in _raw_stream(d, r, True, lat):
        f = lat.facts_of(h)
        if not f.transitive:
            continue
        total = sum(d - len(_cycle_shape(g)) for g in entries)
        g = genus_from_branching(d, 0, total)
        classes = ["transitive"]
        if f.solvable:
            classes.append("solvable")
            if f.primitive:
                classes.append("primitive_solvable")
        for c in classes:
            genera[c][g] += 1
        if reduced is not None and entries not in seen:
            orbit = {tuple(_mul(_mul(x, e), xi) for e in entries) for x, xi in conj}
            seen |= orbit
            for c in classes:
                reduced[c][g] += 1
    return GenusCensus(d, r, genera, reduced)
