"""Finite permutation groups with deterministic stabiliser chains.

The stabiliser chain is built by the classical (non-randomised) Schreier-Sims
procedure.  New base points are always the smallest point moved by the
offending residue, so chains, strong generating sets, orders and memberships
are reproducible across runs.  A base prefix can be forced, which is how point
and pointwise stabilisers are extracted.

Hard limits guard every potentially explosive operation (element enumeration,
class materialisation); exceeding a limit raises :class:`CapExceeded` rather
than silently degrading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .perm import Perm, identity


class CapExceeded(Exception):
    """An operation would exceed a configured size cap."""


@dataclass(frozen=True)
class Caps:
    """Size limits for expensive operations.

    All limits are inclusive.  ``element_cap`` bounds full element
    enumeration, ``class_cap`` bounds materialised conjugacy classes.
    """

    point_cap: int = 10**5
    group_cap: int = 10**7
    element_cap: int = 10**7
    class_cap: int = 2 * 10**6
    graph_cap: int = 2 * 10**4
    exact_cap: int = 2000


DEFAULT_CAPS = Caps()


class _Level:
    """One level of a stabiliser chain: a base point, the strong generators
    fixing all earlier base points, and a transversal of the orbit of the
    base point under those generators (coset representative u maps the base
    point to the orbit point)."""

    __slots__ = ("point", "gens", "transversal", "orbit_list", "_done_pairs")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {point: identity(degree)}
        self.orbit_list: list[int] = [point]
        self._done_pairs: set[tuple[int, int]] = set()


class StabChain:
    """Deterministic stabiliser chain for a permutation group.

    ``base_prefix`` forces the initial base points (used for stabiliser
    extraction); levels whose orbit stays trivial are kept, they are harmless
    and keep indexing predictable.
    """

    def __init__(self, degree: int, gens: Sequence[Perm], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.levels: list[_Level] = []
        for pt in base_prefix:
            if not 0 <= pt < degree:
                raise ValueError("base point %d out of range" % pt)
            self.levels.append(_Level(pt, degree))
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree %d does not match %d" % (g.degree, degree))
            self._add_element(g)

    @classmethod
    def _adopt(cls, degree: int, levels: list[_Level]) -> "StabChain":
        """Wrap existing (complete) levels as a chain without reprocessing."""
        chain = cls.__new__(cls)
        chain.degree = degree
        chain.levels = levels
        return chain

    def suffix_chain(self, idx: int) -> "StabChain":
        """The chain of the pointwise stabiliser of the first ``idx`` base points."""
        return StabChain._adopt(self.degree, self.levels[idx:])

    # -- construction --------------------------------------------------------

    def _strip(self, g: Perm, start: int) -> tuple[Perm, int]:
        """Sift g through levels[start:]; return (residue, stop level)."""
        h = g
        for idx in range(start, len(self.levels)):
            level = self.levels[idx]
            image = h.images[level.point]
            if image == level.point:
                continue
            u = level.transversal.get(image)
            if u is None:
                return h, idx
            h = h * u.inverse()
        return h, len(self.levels)

    def _add_element(self, g: Perm) -> None:
        residue, idx = self._strip(g, 0)
        if residue.is_identity():
            return
        self._insert(residue, 0, idx)

    def _insert(self, h: Perm, lo: int, j: int) -> None:
        """Install a new strong generator h, known to fix base[0..j-1].

        h joins the generator set of every level from lo to j inclusive (the
        per-level sets represent the nested sets S_lo >= ... >= S_j of the
        classical algorithm), then the affected levels are re-completed from
        the deepest up.
        """
        if j == len(self.levels):
            self.levels.append(_Level(h.min_moved_point(), self.degree))
        for l in range(lo, j + 1):
            self.levels[l].gens.append(h)
        for l in range(j, lo - 1, -1):
            self._complete_level(l)

    def _complete_level(self, idx: int) -> None:
        """Re-establish the Schreier-Sims condition at one level.

        Every Schreier generator of the level must sift to the identity
        through the deeper chain; offenders are inserted deeper (at levels
        idx+1 .. stop) and the deeper levels are completed recursively.
        Processed (orbit point, generator) pairs are remembered: once
        certified they stay certified, because deeper levels only ever grow.
        """
        level = self.levels[idx]
        self._rebuild_orbit(level)
        i = 0
        while i < len(level.orbit_list):
            beta = level.orbit_list[i]
            for gen_idx, s in enumerate(level.gens):
                key = (beta, gen_idx)
                if key in level._done_pairs:
                    continue
                level._done_pairs.add(key)
                u = level.transversal[beta]
                gamma = s.images[beta]
                schreier = u * s * level.transversal[gamma].inverse()
                if schreier.is_identity():
                    continue
                residue, j = self._strip(schreier, idx + 1)
                if residue.is_identity():
                    continue
                self._insert(residue, idx + 1, j)
            i += 1

    def _rebuild_orbit(self, level: _Level) -> None:
        """Extend the orbit/transversal of a level after adding generators."""
        queue = list(level.orbit_list)
        qi = 0
        while qi < len(queue):
            beta = queue[qi]
            qi += 1
            u = level.transversal[beta]
            for s in level.gens:
                gamma = s.images[beta]
                if gamma not in level.transversal:
                    level.transversal[gamma] = u * s
                    level.orbit_list.append(gamma)
                    queue.append(gamma)

    # -- queries --------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for level in self.levels:
            n *= len(level.transversal)
        return n

    def base(self) -> list[int]:
        return [level.point for level in self.levels]

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._strip(g, 0)
        return residue.is_identity()

    def strong_gens_from(self, idx: int) -> list[Perm]:
        """Strong generators fixing the first ``idx`` base points pointwise."""
        seen: set[Perm] = set()
        out: list[Perm] = []
        for level in self.levels[idx:]:
            for g in level.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def iter_elements(self) -> Iterator[Perm]:
        """All elements, each exactly once, as products over the transversals.

        The factorisation mirrors :meth:`_strip`: an element is
        u_(k-1) * ... * u_0 with u_i drawn from level i, deepest level
        multiplied first, so distinct representative choices give distinct
        elements."""

        def rec(idx: int, prefix: Perm) -> Iterator[Perm]:
            if idx < 0:
                yield prefix
                return
            level = self.levels[idx]
            for pt in sorted(level.transversal):
                yield from rec(idx - 1, prefix * level.transversal[pt])

        if not self.levels:
            yield identity(self.degree)
            return
        yield from rec(len(self.levels) - 1, identity(self.degree))


class PermGroup:
    """A permutation group given by generators on {0, ..., degree-1}.

    The stabiliser chain is built lazily and cached.  Equality of groups is
    not structural; use :meth:`same_group` for element-set comparison.
    """

    def __init__(self, degree: int, gens: Iterable[Perm], caps: Caps = DEFAULT_CAPS):
        self.degree = degree
        self.gens = [g for g in gens if not g.is_identity()]
        for g in self.gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.caps = caps
        self._chain: StabChain | None = None
        self._elements: list[Perm] | None = None

    # -- chain-backed basics ---------------------------------------------------

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, self.gens)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def is_trivial(self) -> bool:
        return not self.gens

    def identity(self) -> Perm:
        return identity(self.degree)

    def same_group(self, other: "PermGroup") -> bool:
        """Same element set (degrees must match)."""
        if self.degree != other.degree:
            return False
        return (
            self.order() == other.order()
            and all(other.contains(g) for g in self.gens)
        )

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.gens)

    # -- orbits ------------------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        """Orbit of a point, in BFS discovery order from the point."""
        seen = {point}
        out = [point]
        qi = 0
        while qi < len(out):
            beta = out[qi]
            qi += 1
            for g in self.gens:
                gamma = g.images[beta]
                if gamma not in seen:
                    seen.add(gamma)
                    out.append(gamma)
        return out

    def orbit_transversal(self, point: int) -> dict[int, Perm]:
        """Orbit with coset representatives u mapping ``point`` to each orbit point."""
        transversal = {point: identity(self.degree)}
        queue = [point]
        qi = 0
        while qi < len(queue):
            beta = queue[qi]
            qi += 1
            u = transversal[beta]
            for g in self.gens:
                gamma = g.images[beta]
                if gamma not in transversal:
                    transversal[gamma] = u * g
                    queue.append(gamma)
        return transversal

    def orbits(self) -> list[list[int]]:
        """All orbits on points, scanned in point order."""
        assigned = [False] * self.degree
        out = []
        for pt in range(self.degree):
            if assigned[pt]:
                continue
            orb = self.orbit(pt)
            for beta in orb:
                assigned[beta] = True
            out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def is_primitive(self) -> bool:
        """Transitive with no nontrivial block system.

        For each point beta > 0 the minimal block containing {0, beta} is
        grown by the usual union-find closure; the group is primitive when
        every such block is the whole point set.  Groups of degree <= 2 are
        primitive by convention.
        """
        n = self.degree
        if not self.is_transitive():
            return False
        if n <= 2:
            return True
        for beta in range(1, n):
            if self._block_through(beta) < n:
                return False
        return True

    def _block_through(self, beta: int) -> int:
        """Size of the minimal block containing {0, beta}."""
        parent = list(range(self.degree))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        parent[beta] = 0
        queue = [(0, beta)]
        while queue:
            a, b = queue.pop()
            for g in self.gens:
                ra, rb = find(g.images[a]), find(g.images[b])
                if ra != rb:
                    parent[rb] = ra
                    queue.append((ra, rb))
        root = find(0)
        return sum(1 for pt in range(self.degree) if find(pt) == root)

    # -- stabilisers ----------------------------------------------------------------

    def point_stabiliser(self, point: int) -> "PermGroup":
        """Stabiliser of one point, from a chain with that point first in the base."""
        return self.pointwise_stabiliser([point])

    def pointwise_stabiliser(self, points: Sequence[int]) -> "PermGroup":
        """Pointwise stabiliser of a point sequence."""
        chain = StabChain(self.degree, self.gens, base_prefix=list(points))
        gens = chain.strong_gens_from(len(points))
        sub = PermGroup(self.degree, gens, caps=self.caps)
        # the deeper part of the prefixed chain already is the stabiliser's chain
        sub._chain = chain.suffix_chain(len(points))
        return sub

    # -- element enumeration ------------------------------------------------------

    def elements(self) -> list[Perm]:
        """All elements, sorted by image tuple.  Guarded by ``element_cap``."""
        if self._elements is None:
            n = self.order()
            if n > self.caps.element_cap:
                raise CapExceeded(
                    "element enumeration of order %d exceeds cap %d"
                    % (n, self.caps.element_cap)
                )
            self._elements = sorted(self.chain.iter_elements())
        return self._elements

    def random_element(self, rng) -> Perm:
        """Product of uniformly chosen transversal representatives."""
        g = identity(self.degree)
        for level in self.chain.levels:
            pts = sorted(level.transversal)
            g = g * level.transversal[pts[rng.randrange(len(pts))]]
        return g


# -- conjugacy ---------------------------------------------------------------------


@dataclass
class ConjClassData:
    """One conjugacy class of prime-order elements.

    ``rep`` is the lexicographically least element of the class.  The element
    set is materialised (as a frozenset of Perms) whenever the class size is
    within ``class_cap``.
    """

    rep: Perm
    order: int
    class_size: int
    elements: frozenset[Perm] | None = field(repr=False, default=None)


def conjugacy_class(G: PermGroup, x: Perm, cap: int | None = None) -> frozenset[Perm]:
    """The class x^G, materialised by conjugation-orbit BFS over the generators."""
    if cap is None:
        cap = G.caps.class_cap
    inv_gens = [(g, g.inverse()) for g in G.gens]
    seen = {x}
    queue = [x]
    qi = 0
    while qi < len(queue):
        y = queue[qi]
        qi += 1
        for g, g_inv in inv_gens:
            z = g_inv * y * g
            if z not in seen:
                if len(seen) >= cap:
                    raise CapExceeded("conjugacy class larger than cap %d" % cap)
                seen.add(z)
                queue.append(z)
    return frozenset(seen)


def prime_order_class_reps(G: PermGroup, caps: Caps | None = None) -> list[ConjClassData]:
    """Conjugacy classes of prime-order elements of G.

    Requires full element enumeration (guarded by ``element_cap``); class
    representatives are the lexicographically least class members, and the
    classes come out sorted by (element order, class size, representative).
    """
    caps = caps or G.caps
    if G.order() > caps.element_cap:
        raise CapExceeded(
            "order %d exceeds element enumeration cap %d" % (G.order(), caps.element_cap)
        )
    classified: set[Perm] = set()
    out: list[ConjClassData] = []
    for x in G.elements():  # sorted, so reps are lex-least in their class
        if x in classified or x.is_identity():
            continue
        o = x.order()
        if not _is_prime(o):
            continue
        cls = conjugacy_class(G, x, cap=caps.class_cap)
        classified.update(cls)
        keep = cls if len(cls) <= caps.class_cap else None
        out.append(ConjClassData(rep=x, order=o, class_size=len(cls), elements=keep))
    out.sort(key=lambda c: (c.order, c.class_size, c.rep.images))
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- subgroup searches ----------------------------------------------------------------

# Element-order histograms of the named isomorphism shapes used in searches.
# Keys are element orders, values are counts; these fingerprints distinguish
# the groups from all other groups of the same order.
SHAPE_HISTOGRAMS: dict[str, dict[int, int]] = {
    "S4": {1: 1, 2: 9, 3: 8, 4: 6},
    "Q8": {1: 1, 2: 1, 4: 6},
    "D8": {1: 1, 2: 5, 4: 2},
    "F42": {1: 1, 2: 7, 3: 14, 6: 14, 7: 6},
}


@dataclass(frozen=True)
class Sylow:
    p: int


@dataclass(frozen=True)
class Normaliser:
    K: PermGroup


@dataclass(frozen=True)
class Closure:
    elements: tuple[Perm, ...]


@dataclass(frozen=True)
class OrderShape:
    """Search for a subgroup of the given order; ``shape`` optionally names an
    element-order histogram from SHAPE_HISTOGRAMS (or gives one directly)."""

    order: int
    shape: str | None = None


SubgroupSpec = Sylow | Normaliser | Closure | OrderShape


def find_subgroup(G: PermGroup, spec: SubgroupSpec) -> PermGroup:
    """Deterministic subgroup construction/search.

    All searches scan elements in lexicographic image-tuple order and return
    the first (least) witness, so repeated runs agree.  Raises ``LookupError``
    when an OrderShape search exhausts its candidates.
    """
    if isinstance(spec, Sylow):
        return _sylow(G, spec.p)
    if isinstance(spec, Normaliser):
        return _normaliser(G, spec.K)
    if isinstance(spec, Closure):
        return _closure_group(G.degree, spec.elements, G.caps)
    if isinstance(spec, OrderShape):
        return _order_shape_search(G, spec.order, spec.shape)
    raise TypeError("unknown subgroup spec %r" % (spec,))


def _closure_elements(
    degree: int, elems: Iterable[Perm], cap: int, abort_above: int | None = None
) -> set[Perm] | None:
    """Element set of the generated subgroup, or None if it exceeds abort_above."""
    gens = [g for g in elems if not g.is_identity()]
    seen = {identity(degree)}
    queue = [identity(degree)]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for g in gens:
            y = x * g
            if y not in seen:
                if abort_above is not None and len(seen) >= abort_above:
                    return None
                if len(seen) >= cap:
                    raise CapExceeded("closure exceeds element cap %d" % cap)
                seen.add(y)
                queue.append(y)
    return seen


def _closure_group(degree: int, elems: Sequence[Perm], caps: Caps) -> PermGroup:
    return PermGroup(degree, [g for g in elems if not g.is_identity()], caps=caps)


def reduced_generators(degree: int, elements: Iterable[Perm], caps: Caps = DEFAULT_CAPS) -> list[Perm]:
    """A short generating list for the group generated by ``elements``.

    Scans in sorted order, keeping an element only when it enlarges the group
    generated so far.  Deterministic.
    """
    gens: list[Perm] = []
    current = 1
    pool = sorted(set(elements))
    target_chain = StabChain(degree, pool)
    target = target_chain.order()
    for x in pool:
        if x.is_identity():
            continue
        if current < target:
            trial = StabChain(degree, gens + [x])
            n = trial.order()
            if n > current:
                gens.append(x)
                current = n
        if current == target:
            break
    return gens


def _normaliser(G: PermGroup, K: PermGroup) -> PermGroup:
    """N_G(K) by exhaustive scan of G's elements (guarded by element_cap)."""
    k_elements = frozenset(K.elements())
    normalising = []
    for g in G.elements():
        g_inv = g.inverse()
        if all(g_inv * k * g in k_elements for k in K.gens):
            normalising.append(g)
    gens = reduced_generators(G.degree, normalising, G.caps)
    return PermGroup(G.degree, gens, caps=G.caps)


def _sylow(G: PermGroup, p: int) -> PermGroup:
    """A Sylow p-subgroup, grown deterministically through normalisers.

    Start from the least p-element; while the current p-subgroup P is not
    full, pass to N_G(P), whose p-elements outside P extend P (P is normal
    there, so the extension stays a p-group).
    """
    if not _is_prime(p):
        raise ValueError("%d is not prime" % p)
    n = G.order()
    p_part = 1
    while n % p == 0:
        n //= p
        p_part *= p
    if p_part == 1:
        return PermGroup(G.degree, [], caps=G.caps)

    def p_element(x: Perm) -> Perm | None:
        o = x.order()
        m = o
        while m % p == 0:
            m //= p
        if m == o:  # no p-part at all
            return None
        y = x ** m
        return None if y.is_identity() else y

    first = None
    for x in G.elements():
        y = p_element(x)
        if y is not None:
            first = min(y, first) if first is not None else y
    assert first is not None
    P = PermGroup(G.degree, [first], caps=G.caps)
    while P.order() < p_part:
        N = _normaliser(G, P)
        extended = False
        for x in N.elements():
            y = p_element(x)
            if y is not None and not P.contains(y):
                P = PermGroup(G.degree, P.gens + [y], caps=G.caps)
                extended = True
                break
        if not extended:  # cannot happen for correct inputs
            raise RuntimeError("Sylow growth stalled below full order")
    return P


def element_order_histogram(elements: Iterable[Perm]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for x in elements:
        o = x.order()
        hist[o] = hist.get(o, 0) + 1
    return hist


def _order_shape_search(G: PermGroup, order: int, shape: str | None) -> PermGroup:
    """First subgroup of the given order (and optional shape) in witness order.

    Tries cyclic subgroups first, then two-generated subgroups ``<x, y>``
    with (x, y) scanned in lexicographic order.  When a shape histogram is
    given, x and y are restricted to the two smallest element orders above 1
    occurring in the target (any group containing such orders is generated by
    some such pair exactly when a witness exists in this family; both shapes
    used by the package, S4 and Q8, are).  The order of x*y must divide the
    target order, a cheap necessary filter.
    """
    if G.order() % order != 0:
        raise LookupError("no subgroup: order %d does not divide %d" % (order, G.order()))
    want_hist = SHAPE_HISTOGRAMS[shape] if isinstance(shape, str) else shape

    def check(elems: set[Perm]) -> bool:
        if len(elems) != order:
            return False
        if want_hist is not None and element_order_histogram(elems) != want_hist:
            return False
        return True

    elements = G.elements()
    by_order: dict[int, list[Perm]] = {}
    for x in elements:
        if not x.is_identity() and order % x.order() == 0:
            by_order.setdefault(x.order(), []).append(x)

    for x in by_order.get(order, []):
        elems = _closure_elements(G.degree, [x], G.caps.element_cap, abort_above=order)
        if elems is not None and check(elems):
            return PermGroup(G.degree, [x], caps=G.caps)

    if want_hist is not None:
        orders = sorted(o for o in want_hist if o > 1)
        order_pairs = [(a, b) for i, a in enumerate(orders) for b in orders[i:]]
    else:
        order_pairs = [(None, None)]  # unrestricted

    def candidates(o):
        if o is None:
            out = []
            for lst in by_order.values():
                out.extend(lst)
            return sorted(out)
        return by_order.get(o, [])

    for o1, o2 in order_pairs:
        for x in candidates(o1):
            for y in candidates(o2):
                if y == x:
                    continue
                if order % (x * y).order() != 0:
                    continue
                elems = _closure_elements(
                    G.degree, [x, y], G.caps.element_cap, abort_above=order
                )
                if elems is not None and check(elems):
                    return PermGroup(G.degree, [x, y], caps=G.caps)
    raise LookupError("no subgroup of order %d with requested shape" % order)
