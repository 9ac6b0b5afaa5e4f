"""Permutation groups by exhaustive element enumeration.

Every structural query works on the full element list of the group, which is
built by a breadth-first closure and capped (``DEFAULT_CAP``).  Exhaustion is
deliberate: the element list is also the oracle against which the
fixed-point and structure statements are checked, so there is no separate
stabilizer-chain layer to trust.

Internally elements are plain tuples of images; ``Permutation`` objects are
only built at the public boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .arith import factor_prime_power, is_prime
from .perm import Permutation, format_permutation

DEFAULT_CAP = 10**6

Raw = tuple  # tuple of images


class GroupError(Exception):
    pass


class OrderExceedsCap(GroupError):
    """The closure grew past the element cap; the group is too big to exhaust."""


class NotTransitive(GroupError):
    pass


class NotPrimitive(GroupError):
    pass


class NotSolvable(GroupError):
    pass


class TrivialGroup(GroupError):
    pass


# -- raw tuple helpers -------------------------------------------------------


def _mul(g: Raw, h: Raw) -> Raw:
    """x -> g(h(x))"""
    return tuple(map(g.__getitem__, h))


def _inv(g: Raw) -> Raw:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def _conj(g: Raw, x: Raw, xinv: Raw) -> Raw:
    """x g x^-1"""
    return tuple(x[g[xinv[i]]] for i in range(len(g)))


def _order(g: Raw) -> int:
    ident = tuple(range(len(g)))
    n, y = 1, g
    while y != ident:
        y = _mul(y, g)
        n += 1
    return n


def _closure(gens: Iterable[Raw], degree: int, cap: int = DEFAULT_CAP) -> list[Raw]:
    ident = tuple(range(degree))
    gens = sorted({g for g in gens if g != ident})
    out = [ident]
    seen = {ident}
    for x in out:  # grows while iterating
        for s in gens:
            y = _mul(x, s)
            if y not in seen:
                if len(out) >= cap:
                    raise OrderExceedsCap(f"closure exceeds cap {cap}")
                seen.add(y)
                out.append(y)
    return out


def _extend(out: list[Raw], seen: set, gens: list[Raw], new: Raw, cap: int = DEFAULT_CAP) -> None:
    """Grow the closed set ``out`` (generated by ``gens``) to include ``new``, in place."""
    if new in seen:
        return
    gens.append(new)
    n_old = len(out)
    for i in range(n_old):
        y = _mul(out[i], new)
        if y not in seen:
            if len(out) >= cap:
                raise OrderExceedsCap(f"closure exceeds cap {cap}")
            seen.add(y)
            out.append(y)
    i = n_old
    while i < len(out):
        x = out[i]
        for s in gens:
            y = _mul(x, s)
            if y not in seen:
                if len(out) >= cap:
                    raise OrderExceedsCap(f"closure exceeds cap {cap}")
                seen.add(y)
                out.append(y)
        i += 1


def _small_generating_set(elems: Iterable[Raw], degree: int) -> list[Raw]:
    """Greedy generating set: scan elements by decreasing order, keep those
    not already generated."""
    ident = tuple(range(degree))
    ordered = sorted((e for e in elems if e != ident), key=lambda e: (-_order(e), e))
    gens: list[Raw] = []
    out, seen = [ident], {ident}
    target = len(ordered) + 1
    for e in ordered:
        if len(out) == target:
            break
        if e not in seen:
            _extend(out, seen, gens, e)
    return gens


# -- the group object ----------------------------------------------------------


class PermGroup:
    """The group generated by a list of permutations of a common degree.

    Element list, order and structural flags are computed on first use and
    cached; the object is otherwise immutable.  Two groups compare equal when
    they have the same degree and the same element set.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 cap: int = DEFAULT_CAP, name: str | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise GroupError("degree required for an empty generator list")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise GroupError("generators must share the group degree")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.cap = cap
        self.name = name
        self._gens: tuple[Raw, ...] = tuple(g.images for g in gens)
        self._cache: dict = {}

    @classmethod
    def _from_raw(cls, elems: Iterable[Raw], degree: int, gens: Sequence[Raw] | None = None,
                  name: str | None = None, cap: int = DEFAULT_CAP) -> "PermGroup":
        """Wrap an element set already known to be closed."""
        elems = frozenset(elems)
        if gens is None:
            gens = _small_generating_set(elems, degree)
        G = cls.__new__(cls)
        G.degree = degree
        G.cap = cap
        G.name = name
        G._gens = tuple(gens) if gens else (tuple(range(degree)),)
        G._cache = {"set": elems}
        return G

    @classmethod
    def from_cycles(cls, degree: int, *cycle_strings: str, name: str | None = None) -> "PermGroup":
        from .perm import parse_permutation

        return cls([parse_permutation(s, degree) for s in cycle_strings], degree, name=name)

    # element access

    def _list(self, cap: int | None = None) -> list[Raw]:
        """Sorted raw element list."""
        if "list" not in self._cache:
            if "set" in self._cache:
                self._cache["list"] = sorted(self._cache["set"])
            else:
                cap = self.cap if cap is None else cap
                self._cache["list"] = sorted(_closure(self._gens, self.degree, cap))
        return self._cache["list"]

    def _set(self) -> frozenset:
        if "set" not in self._cache:
            self._cache["set"] = frozenset(self._list())
        return self._cache["set"]

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(g, check=False) for g in self._gens)

    def order(self) -> int:
        return len(self._set())

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, g: Permutation) -> bool:
        return g.images in self._set()

    def __len__(self) -> int:
        return self.order()

    def __iter__(self):
        return (Permutation(e, check=False) for e in self._list())

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self._set() == other._set()

    def __hash__(self):
        return hash((self.degree, self._set()))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        gens = ", ".join(format_permutation(g) for g in self.generators)
        return f"<PermGroup{label} degree={self.degree} gens=[{gens}]>"

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._set() <= other._set()

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        out = [x]
        for y in out:
            for g in self._gens:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    out.append(z)
        return sorted(out)

    def orbits(self) -> list[list[int]]:
        done: set[int] = set()
        out = []
        for x in range(self.degree):
            if x not in done:
                orb = self.orbit(x)
                done.update(orb)
                out.append(orb)
        return out

    def cycle_strings(self) -> list[str]:
        return [format_permutation(g) for g in self.generators]


def symmetric_group(d: int) -> PermGroup:
    gens = [Permutation.from_cycles([list(range(d))], d)]
    if d > 2:
        gens.append(Permutation.from_cycles([[0, 1]], d))
    return PermGroup(gens, d, name=f"S{d}")


def alternating_group(d: int) -> PermGroup:
    gens = [Permutation.from_cycles([[0, 1, i]], d) for i in range(2, d)]
    return PermGroup(gens, d, name=f"A{d}")


def cyclic_group(d: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles([list(range(d))], d)], d, name=f"C{d}")


def dihedral_group(d: int) -> PermGroup:
    rot = Permutation.from_cycles([list(range(d))], d)
    refl = Permutation([(-i) % d for i in range(d)])
    return PermGroup([rot, refl], d, name=f"D{d}")


# -- basic predicates ----------------------------------------------------------


def elements(G: PermGroup, cap: int | None = None) -> list[Permutation]:
    """All elements, sorted lexicographically by image sequence."""
    return [Permutation(e, check=False) for e in G._list(cap)]


def is_transitive(G: PermGroup) -> bool:
    return len(G.orbit(0)) == G.degree


def is_abelian(G: PermGroup) -> bool:
    gens = G._gens
    return all(_mul(a, b) == _mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


@dataclass(frozen=True)
class BlockSystem:
    """A nontrivial G-invariant partition of the points into equal blocks."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def is_invariant(self, G: PermGroup) -> bool:
        blocks = {frozenset(b) for b in self.blocks}
        return all(frozenset(g[x] for x in b) in blocks for g in G._gens for b in blocks)

    def __str__(self):
        return " | ".join("{" + ",".join(str(x + 1) for x in b) + "}" for b in self.blocks)


def minimal_block_containing(G: PermGroup, pair: tuple[int, int]) -> BlockSystem | None:
    """Finest G-invariant partition in which the two points share a block.

    Returns ``None`` (the whole-set marker) when that partition has a single
    block.  Union-find with the usual pair-propagation closure.
    """
    a, b = pair
    if a == b:
        raise ValueError("pair must consist of distinct points")
    if not is_transitive(G):
        raise NotTransitive("block systems are computed for transitive groups only")
    d = G.degree
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in G._gens:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                queue.append((g[x], g[y]))
    classes: dict[int, list[int]] = {}
    for x in range(d):
        classes.setdefault(find(x), []).append(x)
    if len(classes) == 1:
        return None
    blocks = sorted(tuple(sorted(c)) for c in classes.values())
    return BlockSystem(tuple(blocks))


def find_block_system(G: PermGroup) -> BlockSystem | None:
    """A nontrivial block system of a transitive group, or None if primitive."""
    for x in range(1, G.degree):
        bs = minimal_block_containing(G, (0, x))
        if bs is not None:
            return bs
    return None


def is_primitive(G: PermGroup) -> bool:
    if "primitive" not in G._cache:
        G._cache["primitive"] = is_transitive(G) and find_block_system(G) is None
    return G._cache["primitive"]


# -- subgroups from the element list -------------------------------------------


def _subgroup(G: PermGroup, elems: Iterable[Raw], name: str | None = None) -> PermGroup:
    return PermGroup._from_raw(elems, G.degree, name=name, cap=G.cap)


def _normal_closure_raw(ambient_gens: Sequence[Raw], seeds: Iterable[Raw], degree: int,
                        cap: int = DEFAULT_CAP) -> tuple[list[Raw], set]:
    ident = tuple(range(degree))
    out, seen, gens = [ident], {ident}, []
    for s in seeds:
        _extend(out, seen, gens, s, cap)
    conj = [(a, _inv(a)) for a in ambient_gens]
    i = 0
    while i < len(gens):
        n = gens[i]
        for a, ainv in conj:
            c = _conj(n, a, ainv)
            if c not in seen:
                _extend(out, seen, gens, c, cap)
        i += 1
    return out, seen


def normal_closure(G: PermGroup, seeds: Iterable[Permutation]) -> PermGroup:
    G._list()  # enforce the cap on G itself
    out, seen = _normal_closure_raw(G._gens, (s.images for s in seeds), G.degree, G.cap)
    return _subgroup(G, seen)


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G._gens
    comms = []
    for i, a in enumerate(gens):
        ainv = _inv(a)
        for b in gens[i + 1:]:
            binv = _inv(b)
            comms.append(_mul(_mul(ainv, binv), _mul(a, b)))
    out, seen = _normal_closure_raw(gens, comms, G.degree, G.cap)
    return _subgroup(G, seen)


def derived_series(G: PermGroup) -> list[PermGroup]:
    """G, G', G'', ... ending at the first term equal to its own derived subgroup."""
    if "derived_series" not in G._cache:
        G._list()
        series = [G]
        while True:
            D = derived_subgroup(series[-1])
            if D.order() == series[-1].order():
                break
            series.append(D)
        G._cache["derived_series"] = series
    return list(G._cache["derived_series"])


def is_solvable(G: PermGroup) -> bool:
    if "solvable" not in G._cache:
        G._cache["solvable"] = derived_series(G)[-1].order() == 1
    return G._cache["solvable"]


def stabilizer(G: PermGroup, x: int) -> PermGroup:
    return _subgroup(G, (e for e in G._list() if e[x] == x))


def centralizer_in(A: PermGroup, g: Permutation) -> PermGroup:
    """{a in A : ag = ga}."""
    if g.degree != A.degree:
        raise GroupError("degree mismatch")
    gi = g.images
    return _subgroup(A, (a for a in A._list() if _mul(a, gi) == _mul(gi, a)))


def conjugacy_classes(G: PermGroup) -> list[list[Permutation]]:
    """Conjugacy classes, each sorted, listed by smallest element."""
    return [[Permutation(e, check=False) for e in cls] for cls in _classes_raw(G)]


def _classes_raw(G: PermGroup) -> list[list[Raw]]:
    if "classes" not in G._cache:
        conj = [(a, _inv(a)) for a in G._gens]
        done: set = set()
        classes = []
        for e in G._list():
            if e in done:
                continue
            cls, seen = [e], {e}
            for y in cls:
                for a, ainv in conj:
                    z = _conj(y, a, ainv)
                    if z not in seen:
                        seen.add(z)
                        cls.append(z)
            done |= seen
            classes.append(sorted(cls))
        G._cache["classes"] = classes
    return G._cache["classes"]


def minimal_normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """Inclusion-minimal nontrivial normal subgroups.

    Every minimal normal subgroup is the normal closure of any of its
    nonidentity elements, so closing one representative per conjugacy class
    and keeping the minimal results finds them all.
    """
    if "min_normal" not in G._cache:
        ident = tuple(range(G.degree))
        closures = set()
        for cls in _classes_raw(G):
            if cls[0] == ident:
                continue
            _, seen = _normal_closure_raw(G._gens, [cls[0]], G.degree, G.cap)
            closures.add(frozenset(seen))
        minimal = [N for N in closures if not any(M < N for M in closures)]
        minimal.sort(key=lambda N: (len(N), sorted(N)))
        G._cache["min_normal"] = [_subgroup(G, N) for N in minimal]
    return list(G._cache["min_normal"])


def is_elementary_abelian(A: PermGroup) -> tuple[bool, int | None]:
    """(True, p) when A is abelian with every nonidentity element of order p.

    The trivial group gives (True, None).
    """
    if A.order() == 1:
        return True, None
    if not is_abelian(A):
        return False, None
    ident = tuple(range(A.degree))
    orders = {_order(e) for e in A._list() if e != ident}
    if len(orders) == 1:
        (p,) = orders
        if is_prime(p):
            return True, p
    return False, None


def max_fixed_points(G: PermGroup) -> tuple[int, Permutation]:
    """Maximum number of fixed points over the nonidentity elements, with the
    first element (in sorted order) attaining it."""
    ident = tuple(range(G.degree))
    best, witness = -1, None
    for e in G._list():
        if e == ident:
            continue
        n = sum(1 for i, y in enumerate(e) if i == y)
        if n > best:
            best, witness = n, e
    if witness is None:
        raise TrivialGroup("the trivial group has no nonidentity elements")
    return best, Permutation(witness, check=False)


# -- structure of primitive solvable groups ------------------------------------


@dataclass
class StructureReport:
    degree: int
    order: int
    p: int | None
    k: int | None
    minimal_normal_subgroups: list[PermGroup]
    unique_minimal_normal: bool
    elementary_abelian: bool
    complemented: bool  # G = A G_x and A meets G_x trivially
    regular: bool
    stabilizer_core_free: bool
    point: int = 0
    witnesses: dict[str, list[str]] = field(default_factory=dict)

    @property
    def clauses(self) -> dict[str, bool]:
        return {
            "unique_minimal_normal": self.unique_minimal_normal,
            "elementary_abelian": self.elementary_abelian,
            "complemented": self.complemented,
            "regular": self.regular,
        }

    @property
    def degree_is_prime_power_order(self) -> bool:
        return (self.p is not None and self.k is not None and self.p ** self.k == self.degree
                and bool(self.minimal_normal_subgroups)
                and self.minimal_normal_subgroups[0].order() == self.degree)

    @property
    def all_pass(self) -> bool:
        return all(self.clauses.values()) and self.degree_is_prime_power_order

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "p": self.p,
            "k": self.k,
            "clauses": self.clauses,
            "stabilizer_core_free": self.stabilizer_core_free,
            "minimal_normal_orders": [N.order() for N in self.minimal_normal_subgroups],
            "all_pass": self.all_pass,
            "witnesses": self.witnesses,
        }


def verify_structure(G: PermGroup, x: int = 0) -> StructureReport:
    """Check the four structural clauses for a primitive solvable group.

    A is taken to be the first minimal normal subgroup; the report records
    whether it is the only one, whether it is elementary abelian, whether it
    complements the stabilizer of ``x``, and whether it acts regularly.
    """
    G._list()
    if not is_primitive(G):
        raise NotPrimitive(repr(G))
    if not is_solvable(G):
        raise NotSolvable(repr(G))
    mins = minimal_normal_subgroups(G)
    A = mins[0]
    elem, p = is_elementary_abelian(A)
    Gx = stabilizer(G, x)
    ident = tuple(range(G.degree))
    A_set, Gx_set = A._set(), Gx._set()
    meet_trivial = A_set & Gx_set == {ident}
    complemented = meet_trivial and A.order() * Gx.order() == G.order()
    if complemented:
        product = {_mul(a, h) for a in A_set for h in Gx_set}
        complemented = product == G._set()
    regular = sorted(a[x] for a in A._list()) == list(range(G.degree))
    core_free = all(not (N._set() <= Gx_set) for N in mins)
    k = None
    if p is not None:
        pk = factor_prime_power(A.order())
        k = pk[1] if pk is not None and pk[0] == p else None
    return StructureReport(
        degree=G.degree,
        order=G.order(),
        p=p,
        k=k,
        minimal_normal_subgroups=mins,
        unique_minimal_normal=len(mins) == 1,
        elementary_abelian=elem and p is not None,
        complemented=complemented,
        regular=regular,
        stabilizer_core_free=core_free,
        point=x,
        witnesses={
            "A_generators": A.cycle_strings(),
            "stabilizer_generators": Gx.cycle_strings(),
        },
    )


# -- conjugacy -------------------------------------------------------------------


def _cycle_shape(g: Raw) -> tuple[int, ...]:
    seen = [False] * len(g)
    lens = []
    for s in range(len(g)):
        if not seen[s]:
            n, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = g[x]
                n += 1
            lens.append(n)
    return tuple(sorted(lens))


def _shape_profile(G: PermGroup) -> tuple:
    from collections import Counter

    return tuple(sorted(Counter(_cycle_shape(e) for e in G._list()).items()))


def conjugating_element(G: PermGroup, H: PermGroup) -> Permutation | None:
    """Some x in S_d with x G x^-1 = H, or None.  Exact; G must be transitive.

    For transitive G a conjugator is pinned down by x(0) and the images of the
    generators, so the search runs over those choices with pruning by partial
    consistency.  The first generator's image only needs to range over
    H-conjugacy class representatives.
    """
    if G.degree != H.degree or G.order() != H.order():
        return None
    if not is_transitive(G):
        raise NotTransitive("conjugacy search needs a transitive group")
    if not is_transitive(H) or _shape_profile(G) != _shape_profile(H):
        return None
    d = G.degree
    gens = list(G._gens)
    H_set = H._set()
    reps = {cls[0] for cls in _classes_raw(H)}
    cands = []
    for i, g in enumerate(gens):
        shape = _cycle_shape(g)
        pool = reps if i == 0 else H._list()
        cands.append([h for h in sorted(pool) if _cycle_shape(h) == shape])

    def propagate(xmap, ymap, pairs):
        xmap, ymap = list(xmap), list(ymap)
        stack = [p for p in range(d) if xmap[p] >= 0]
        while stack:
            p = stack.pop()
            for g, h in pairs:
                q, img = g[p], h[xmap[p]]
                if xmap[q] < 0:
                    if ymap[img] >= 0:
                        return None
                    xmap[q], ymap[img] = img, q
                    stack.append(q)
                elif xmap[q] != img:
                    return None
        return xmap, ymap

    def search(i, xmap, ymap, pairs):
        if i == len(gens):
            return xmap
        for h in cands[i]:
            res = propagate(xmap, ymap, pairs + [(gens[i], h)])
            if res is not None:
                found = search(i + 1, res[0], res[1], pairs + [(gens[i], h)])
                if found is not None:
                    return found
        return None

    for q in range(d):
        xmap, ymap = [-1] * d, [-1] * d
        xmap[0], ymap[q] = q, 0
        found = search(0, xmap, ymap, [])
        if found is not None:
            x = tuple(found)
            xi = _inv(x)
            assert all(_conj(g, x, xi) in H_set for g in gens)
            return Permutation(x, check=False)
    return None


def are_conjugate(G: PermGroup, H: PermGroup) -> bool:
    return conjugating_element(G, H) is not None


# -- subgroup lattice up to conjugacy ----------------------------------------------


def subgroup_class_representatives(
    G: PermGroup, expand: Callable[[frozenset], bool] | None = None
) -> list[frozenset]:
    """Representatives of the G-conjugacy classes of subgroups of G.

    Every subgroup K > 1 is <H, g> for a maximal subgroup H of K, so joining
    each class representative with one element from every double coset HgH
    reaches every class.  ``expand`` may veto growing past a subgroup; this is
    sound for subgroup-closed properties such as solvability, whose members
    are always reached through members.
    """
    d = G.degree
    elems = G._list()
    ident = tuple(range(d))
    conj = [(c, _inv(c)) for c in elems]
    known: set[frozenset] = set()
    reps: list[frozenset] = []
    queue: list[tuple[frozenset, list[Raw]]] = []

    def add(K: frozenset, gens: list[Raw]):
        if K in known:
            return
        known.update(frozenset(_conj(k, c, ci) for k in K) for c, ci in conj)
        reps.append(K)
        queue.append((K, gens))

    add(frozenset([ident]), [])
    while queue:
        H, hgens = queue.pop(0)
        if expand is not None and not expand(H):
            continue
        H_list = sorted(H)
        covered: set = set(H)
        for g in elems:
            if g in covered:
                continue
            for a in H_list:
                ag = _mul(a, g)
                for b in H_list:
                    covered.add(_mul(ag, b))
            out, seen, gens = list(H_list), set(H), list(hgens)
            _extend(out, seen, gens, g, G.cap)
            add(frozenset(seen), gens)
    reps.sort(key=lambda K: (len(K), sorted(K)))
    return reps
