"""Permutations of {0, ..., n-1} stored as image tuples.

Composition is left-to-right throughout the package: ``(p * q)(i) == q(p(i))``,
i.e. ``p`` acts first.  Points are written on the left of the caret in comments
(``i^p``) to match that convention.  Conjugation is ``p ** g == g.inverse() * p * g``,
so that ``(i^g)^(p**g) == (i^p)^g``.
"""

from __future__ import annotations

from math import lcm
from typing import Iterable, Iterator


class Perm:
    """An immutable permutation given by its image tuple.

    ``Perm((1, 2, 0))`` maps 0 -> 1, 1 -> 2, 2 -> 0.  Degree 0 and degree 1
    permutations are allowed.  Instances are hashable and totally ordered by
    their image tuples, which is the element order used for deterministic
    searches elsewhere.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation of 0..n-1: %r" % (images,))

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    # -- basic protocol ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """Image of a point."""
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __le__(self, other: "Perm") -> bool:
        return self.images <= other.images

    def __repr__(self) -> str:
        return "Perm(%s)" % (self.cycle_string() or "()")

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "Perm") -> "Perm":
        """Left-to-right composition: apply self, then other."""
        q = other.images
        if len(q) != len(self.images):
            raise ValueError(
                "degree mismatch: %d vs %d" % (len(self.images), len(q))
            )
        return Perm(map(q.__getitem__, self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, g):
        """Conjugate by a permutation, or integer power.

        ``p ** g`` with ``g`` a Perm is ``g^-1 * p * g``; ``p ** k`` with an
        int exponent is the k-th power (k may be negative).
        """
        if isinstance(g, Perm):
            return g.inverse() * self * g
        k = g
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    # -- structure ----------------------------------------------------------

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, least point first, sorted by least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            pt = self.images[start]
            while pt != start:
                cyc.append(pt)
                seen[pt] = True
                pt = self.images[pt]
            out.append(tuple(cyc))
        return out

    def fixed_point_count(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def min_moved_point(self) -> int | None:
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def cycle_string(self, one_based: bool = False) -> str:
        """Cycle notation, e.g. ``(0,1,2)(3,4)`` (or 1-based on request)."""
        shift = 1 if one_based else 0
        return "".join(
            "(" + ",".join(str(pt + shift) for pt in cyc) + ")"
            for cyc in self.cycles()
        )


def identity(degree: int) -> Perm:
    return Perm(range(degree))


def from_cycles(degree: int, cycles: Iterable[Iterable[int]]) -> Perm:
    """Build a permutation from disjoint 0-based cycles."""
    images = list(range(degree))
    for cyc in cycles:
        cyc = list(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not 0 <= a < degree:
                raise ValueError("cycle point %d out of range" % a)
            if images[a] != a:
                raise ValueError("cycles are not disjoint at point %d" % a)
            images[a] = b
    return Perm(images)


def parse_cycles(text: str, degree: int, one_based: bool = True) -> Perm:
    """Parse cycle notation like ``(1,2,3)(4,5)``.

    Whitespace is ignored; the empty string and ``()`` both denote the
    identity.  Points are 1-based by default, matching the catalogue format.
    """
    text = "".join(text.split())
    if text in ("", "()"):
        return identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("malformed cycle notation: %r" % text)
    shift = 1 if one_based else 0
    cycles = []
    for chunk in text[1:-1].split(")("):
        if not chunk:
            continue
        try:
            pts = [int(tok) - shift for tok in chunk.split(",")]
        except ValueError:
            raise ValueError("malformed cycle %r" % chunk) from None
        if len(pts) != len(set(pts)):
            raise ValueError("repeated point in cycle %r" % chunk)
        cycles.append(pts)
    return from_cycles(degree, cycles)


def all_perms(degree: int) -> Iterator[Perm]:
    """All permutations of the given degree in lexicographic order."""
    from itertools import permutations

    for images in permutations(range(degree)):
        yield Perm(images)
