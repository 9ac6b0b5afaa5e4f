"""Exact permutations of {0, ..., d-1}.

Points are 0-indexed internally and 1-indexed in every text form, so
``parse_permutation("(1 2)", 3)`` swaps the internal points 0 and 1.
Composition follows function notation: ``compose(g, h)(x) == g(h(x))``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Raised for malformed permutation data or text."""


class DegreeMismatch(PermutationError):
    pass


class Permutation:
    """An immutable bijection of ``range(degree)``.

    The degree is explicit: the identity on 4 points and the identity on
    5 points are different values.  Ordering is lexicographic on
    ``(degree, images)``, which is the canonical element order used by
    every group listing in this package.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check:
            if not images:
                raise PermutationError("degree must be at least 1")
            if sorted(images) != list(range(len(images))):
                raise PermutationError(f"{images} is not a bijection of [0, {len(images)})")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be at least 1")
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-indexed disjoint cycles; unmentioned points are fixed."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise PermutationError(f"point {x + 1} out of range 1..{degree}")
                if x in seen:
                    raise PermutationError(f"point {x + 1} repeated")
                seen.add(x)
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return (len(self.images), self.images) < (len(other.images), other.images)

    def __le__(self, other: "Permutation") -> bool:
        return self == other or self < other

    def __repr__(self):
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_permutation(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (0-indexed), each starting at its smallest point,
        sorted by that point; fixed points included as 1-cycles."""
        return _cycles(self.images)


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths; fixed points appear as parts equal to 1.

    ``parts`` is stored in non-increasing order.
    """

    parts: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise PermutationError(f"cycle lengths must be positive: {self.parts}")
        if sum(self.parts) != self.degree:
            raise PermutationError(f"parts {self.parts} do not sum to {self.degree}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int, degree: int | None = None) -> "CycleType":
        """``CycleType.of(2, 2, degree=5)`` pads with fixed points."""
        total = sum(parts)
        degree = total if degree is None else degree
        return cls(tuple(parts) + (1,) * (degree - total), degree)

    @property
    def fixed_points(self) -> int:
        return self.parts.count(1)

    @property
    def branch_contribution(self) -> int:
        return self.degree - len(self.parts)

    @property
    def nontrivial_parts(self) -> tuple[int, ...]:
        return tuple(p for p in self.parts if p >= 2)

    def __str__(self):
        return "{" + ",".join(map(str, self.parts)) + "}"


def _cycles(images: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        out.append(tuple(cyc))
    return out


def _check_same_degree(g: Permutation, h: Permutation) -> None:
    if g.degree != h.degree:
        raise DegreeMismatch(f"degrees differ: {g.degree} vs {h.degree}")


def compose(g: Permutation, h: Permutation) -> Permutation:
    """The permutation ``x -> g(h(x))``."""
    _check_same_degree(g, h)
    return Permutation(map(g.images.__getitem__, h.images), check=False)


def inverse(g: Permutation) -> Permutation:
    inv = [0] * g.degree
    for i, x in enumerate(g.images):
        inv[x] = i
    return Permutation(inv, check=False)


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """``h g h^-1``."""
    return compose(compose(h, g), inverse(h))


def order(g: Permutation) -> int:
    from math import lcm

    return lcm(*(len(c) for c in g.cycles()))


def fixed_point_count(g: Permutation) -> int:
    return sum(1 for i, x in enumerate(g.images) if i == x)


def fixed_points(g: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(g.images) if i == x)


def cycle_type(g: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in g.cycles()), g.degree)


def branch_contribution(g: Permutation) -> int:
    """Sum of (length - 1) over the cycles of g, i.e. d minus the number of cycles."""
    return g.degree - len(g.cycles())


def sign(g: Permutation) -> int:
    """Sign from the parity of the inversion count (independent of cycles)."""
    im = g.images
    n = len(im)
    inversions = sum(1 for i in range(n) for j in range(i + 1, n) if im[i] > im[j])
    return -1 if inversions % 2 else 1


def cycle_type_counts(g: Permutation) -> Counter:
    return Counter(cycle_type(g).parts)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-indexed disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Points may be separated by spaces or commas.  The empty string and
    ``"()"`` both denote the identity.
    """
    if degree < 1:
        raise PermutationError("degree must be at least 1")
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise PermutationError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        tokens = body.replace(",", " ").split()
        try:
            points = [int(t) - 1 for t in tokens]
        except ValueError:
            raise PermutationError(f"non-integer point in {text!r}") from None
        if points:
            cycles.append(points)
    return Permutation.from_cycles(cycles, degree)


def format_permutation(g: Permutation) -> str:
    """Canonical 1-indexed cycle notation: fixed points omitted, cycles
    sorted by smallest point, identity rendered as ``()``."""
    parts = [c for c in g.cycles() if len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in parts)
