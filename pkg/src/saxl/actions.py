"""Constructions of the permutation actions under study.

Three families of transitive actions are built here, each as a
:class:`LabelledAction` that ties every point index to a meaningful label:

* symmetric and alternating groups acting on k-element subsets,
* the action of an arbitrary group on the right cosets of a subgroup
  (with canonical coset representatives, so point labels are reproducible),
* the two families of labelled actions of the groups lying between
  PSL(2,q) and PGammaL(2,q): the action on unordered pairs of points of
  the projective line PG(1,q), and the action on orthogonal pairs of
  nondegenerate 1-spaces of a unitary plane over GF(q^2), whose points
  are labelled by field scalars.

Every constructor checks the group order and the point-0 stabiliser order
against closed forms before returning, so a successfully constructed action
is certified.  A catalogue loader ingests fixture groups from a small text
format and applies the same verify-on-load policy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .gf import FqElem, FqField, field_create, split_prime_power
from .group import CapExceeded, Caps, DEFAULT_CAPS, PermGroup
from .perm import Perm, from_cycles, parse_cycles

ALPHA = "alpha"

FAMILIES = ("PSL2", "PGL2", "PSigmaL2", "PGammaL2", "DeltaPhi")


@dataclass(frozen=True)
class OmegaPoint:
    """A labelled point of an action domain.

    kind is one of "k_subset", "proj_pair", "c3_point", "coset_index"; the
    payload is a sorted tuple of integers, a pair of normalized homogeneous
    coordinates, a canonical scalar log (or the string "alpha"), or a coset
    index, respectively.
    """

    kind: str
    payload: object


@dataclass(frozen=True)
class GroupVariant:
    """One of the groups between PSL(2,q) and PGammaL(2,q).

    family "DeltaPhi" is the extension of PSL(2,q) by delta*phi^j, which is
    a valid group-defining coset exactly when 0 < j < f and f/gcd(f,j) is
    even; the other families ignore j.
    """

    family: str
    q: int
    j: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown family %r" % (self.family,))
        p, f = split_prime_power(self.q)
        if self.family == "DeltaPhi":
            if p == 2:
                raise ValueError("DeltaPhi variants need odd q")
            if not (0 < self.j < f) or (f // math.gcd(f, self.j)) % 2:
                raise ValueError(
                    "DeltaPhi(j=%d) is not a valid variant for q=%d" % (self.j, self.q)
                )
        elif self.j:
            raise ValueError("j is only meaningful for the DeltaPhi family")

    @property
    def p(self) -> int:
        return split_prime_power(self.q)[0]

    @property
    def f(self) -> int:
        return split_prime_power(self.q)[1]

    def describe(self) -> str:
        if self.family == "DeltaPhi":
            return "DeltaPhi(j=%d,q=%d)" % (self.j, self.q)
        return "%s(%d)" % (self.family, self.q)


@dataclass(eq=False)
class LabelledAction:
    """A transitive permutation group together with its point labels."""

    group: PermGroup
    labels: tuple
    name: str
    stab0: PermGroup | None = None
    expected_group_order: int | None = None
    expected_stab_order: int | None = None
    warnings: tuple = ()
    label_index: dict = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if len(self.labels) != self.group.degree:
            raise ValueError("label count does not match degree")
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.label_index) != len(self.labels):
            raise ValueError("labels are not distinct")
        if not self.group.is_transitive():
            raise ValueError("action is not transitive")

    @property
    def degree(self) -> int:
        return len(self.labels)

    def stabiliser0(self) -> PermGroup:
        """The stabiliser of point 0 (explicit generators when available)."""
        if self.stab0 is None:
            self.stab0 = self.group.point_stabiliser(0)
        return self.stab0

    def index_of(self, label: OmegaPoint) -> int:
        return self.label_index[label]


def _verify_orders(action: LabelledAction) -> LabelledAction:
    """Check the constructed group and stabiliser against their closed forms."""
    if action.expected_group_order is not None:
        got = action.group.order()
        if got != action.expected_group_order:
            raise AssertionError(
                "%s: group order %d, expected %d"
                % (action.name, got, action.expected_group_order)
            )
    if action.expected_stab_order is not None:
        got = action.stabiliser0().order()
        if got != action.expected_stab_order:
            raise AssertionError(
                "%s: point stabiliser order %d, expected %d"
                % (action.name, got, action.expected_stab_order)
            )
    return action


# -- k-subset actions --------------------------------------------------------------


def ksubset_action(
    n: int, k: int, even_only: bool = False, caps: Caps = DEFAULT_CAPS
) -> LabelledAction:
    """S_n (or A_n) acting on the k-element subsets of {0, ..., n-1}.

    k = 1 gives the natural action.  Labels are sorted tuples in
    lexicographic order, so the action is reproducible.
    """
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    degree = math.comb(n, k)
    if degree > caps.point_cap:
        raise CapExceeded("degree %d exceeds point cap %d" % (degree, caps.point_cap))
    order = math.factorial(n) // (2 if even_only else 1)
    if order > caps.group_cap:
        raise CapExceeded("group order %d exceeds cap %d" % (order, caps.group_cap))

    subsets = list(combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}

    def induced(g: Perm) -> Perm:
        return Perm(index[tuple(sorted(g.images[i] for i in s))] for s in subsets)

    if even_only:
        if n < 3:
            raise ValueError("alternating groups need n >= 3")
        long_cycle = (
            from_cycles(n, [tuple(range(n))])
            if n % 2
            else from_cycles(n, [tuple(range(1, n))])
        )
        base_gens = [from_cycles(n, [(0, 1, 2)]), long_cycle]
        name = "A%d/%d-subsets" % (n, k)
    else:
        base_gens = [from_cycles(n, [(0, 1)]), from_cycles(n, [tuple(range(n))])]
        name = "S%d/%d-subsets" % (n, k)

    group = PermGroup(degree, [induced(g) for g in base_gens], caps=caps)
    labels = tuple(OmegaPoint("k_subset", s) for s in subsets)
    stab_order, rem = divmod(order, degree)
    if rem:
        raise AssertionError("order %d not divisible by degree %d" % (order, degree))
    return _verify_orders(
        LabelledAction(
            group,
            labels,
            name,
            expected_group_order=order,
            expected_stab_order=stab_order,
        )
    )


# -- coset actions ------------------------------------------------------------------


def _coset_canonical(chain, g: Perm) -> Perm:
    """The canonical representative of the right coset H*g.

    Greedily minimises the base images over the coset using H's stabiliser
    chain; the result is independent of the representative, so its image
    tuple is usable as a dictionary key for the coset.
    """
    for level in chain.levels:
        images = g.images
        best_pt = min(level.transversal, key=lambda pt: images[pt])
        u = level.transversal[best_pt]
        if not u.is_identity():
            g = u * g
    return g


def coset_action(
    G: PermGroup,
    H: PermGroup,
    name: str = "coset",
    caps: Caps = DEFAULT_CAPS,
) -> LabelledAction:
    """The action of G on the right cosets of H, with point 0 = H itself.

    The kernel is the core of H in G; the returned action is the faithful-
    or-not image group, whose point-0 stabiliser is certified (by an exact
    order count) to be the image of H.
    """
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    order_g, order_h = G.order(), H.order()
    index = order_g // order_h
    if index > caps.point_cap:
        raise CapExceeded("index %d exceeds point cap %d" % (index, caps.point_cap))

    chain_h = H.chain
    start = _coset_canonical(chain_h, G.identity())
    reps = [start]
    seen = {start.images: 0}
    images_per_gen = [[] for _ in G.gens]
    qi = 0
    while qi < len(reps):
        rep = reps[qi]
        qi += 1
        for gi, gen in enumerate(G.gens):
            nxt = _coset_canonical(chain_h, rep * gen)
            at = seen.get(nxt.images)
            if at is None:
                at = len(reps)
                seen[nxt.images] = at
                reps.append(nxt)
            images_per_gen[gi].append(at)
    if len(reps) != index:
        raise AssertionError(
            "coset enumeration found %d cosets, expected %d" % (len(reps), index)
        )

    group = PermGroup(index, [Perm(imgs) for imgs in images_per_gen], caps=caps)
    stab_gens = []
    for h in H.gens:
        col = [seen[_coset_canonical(chain_h, rep * h).images] for rep in reps]
        stab_gens.append(Perm(col))
    stab0 = PermGroup(index, stab_gens, caps=caps)

    order_image = group.order()
    kernel_order, rem = divmod(order_g, order_image)
    if rem:
        raise AssertionError("image order %d does not divide |G|" % order_image)
    # orbit-stabiliser: |image| = index * |stab|, which certifies that the
    # image of H (all of whose generators fix point 0) is the full stabiliser
    if order_image != index * stab0.order():
        raise AssertionError("point-0 stabiliser is larger than the image of H")

    labels = tuple(OmegaPoint("coset_index", i) for i in range(index))
    warnings = ()
    if kernel_order > 1:
        warnings = ("action has kernel of order %d" % kernel_order,)
    action = LabelledAction(
        group,
        labels,
        name,
        stab0=stab0,
        expected_group_order=order_image,
        expected_stab_order=order_h // kernel_order,
        warnings=warnings,
    )
    action._cache["kernel_order"] = kernel_order
    action._cache["coset_reps"] = reps
    return _verify_orders(action)


# -- the projective-pair (C2) family -------------------------------------------------

_INF = "inf"  # the 1-space <e2>, i.e. homogeneous coordinates (0, 1)


def _proj_sort_key(t) -> int:
    """Deterministic order on projective points: <e2>, then <e1>, then logs."""
    if t is _INF:
        return -2
    return -1 if t.is_zero() else t.log


def _proj_payload(t) -> tuple:
    if t is _INF:
        return (0, 1)
    return (1, t.as_int())


def _mobius_apply(M, t):
    """Image of the projective point (1, t) or <e2> under a matrix row action."""
    (a, b), (c, d) = M
    if t is _INF:
        x, y = c, d
    else:
        x, y = a + t * c, b + t * d
    if x.is_zero():
        return _INF
    return y / x


def _frobenius_point(t, j: int):
    return t if t is _INF else t.frobenius(j)


def _mat_mul(A, B):
    (a, b), (c, d) = A
    (e, f_), (g, h) = B
    return ((a * e + b * g, a * f_ + b * h), (c * e + d * g, c * f_ + d * h))


def _mat_inv(A):
    (a, b), (c, d) = A
    det = a * d - b * c
    inv = det.inverse()
    return ((d * inv, -b * inv), (-c * inv, a * inv))


def _mat_conj_transpose(A, f: int):
    (a, b), (c, d) = A
    return ((a.frobenius(f), c.frobenius(f)), (b.frobenius(f), d.frobenius(f)))


def psl2_c2_action(variant: GroupVariant, caps: Caps = DEFAULT_CAPS) -> LabelledAction:
    """The chosen group acting on unordered pairs of points of PG(1,q).

    Point 0 is the pair {<e1>, <e2>}.  Labels hold normalized homogeneous
    coordinates (first nonzero coordinate 1).  Degree q(q+1)/2.
    """
    q = variant.q
    if q < 4:
        raise ValueError("need q >= 4")
    p, f = variant.p, variant.f
    degree = q * (q + 1) // 2
    if degree > caps.point_cap:
        raise CapExceeded("degree %d exceeds point cap %d" % (degree, caps.point_cap))

    F = field_create(p, f)
    lam = F.gen()
    one, zero = F.one(), F.zero()
    points = sorted([_INF] + list(F.elements()), key=_proj_sort_key)
    point_pos = {(_proj_sort_key(t)): i for i, t in enumerate(points)}
    pairs = [(i, j) for i in range(len(points)) for j in range(i + 1, len(points))]
    pair_index = {pr: k for k, pr in enumerate(pairs)}

    def pair_of(t1, t2) -> int:
        i, j = point_pos[_proj_sort_key(t1)], point_pos[_proj_sort_key(t2)]
        return pair_index[(i, j) if i < j else (j, i)]

    def perm_of_matrix(M) -> Perm:
        moved = [_mobius_apply(M, t) for t in points]
        return Perm(pair_of(moved[i], moved[j]) for i, j in pairs)

    def perm_of_frobenius(j: int) -> Perm:
        moved = [_frobenius_point(t, j) for t in points]
        return Perm(pair_of(moved[i], moved[j_]) for i, j_ in pairs)

    mat_u = ((one, one), (zero, one))
    mat_d = ((lam, zero), (zero, lam.inverse()))
    mat_s = ((zero, one), (-one, zero))
    mat_delta = ((lam, zero), (zero, one))

    psl_gens = [perm_of_matrix(m) for m in (mat_u, mat_d, mat_s)]
    delta = perm_of_matrix(mat_delta)
    phi = perm_of_frobenius(1)

    h = math.gcd(2, q - 1)
    psl_order = q * (q * q - 1) // h
    torus_swap = [psl_gens[1], psl_gens[2]]
    family = variant.family
    if family == "PSL2":
        gens, extra_stab = psl_gens, []
        order, stab_order = psl_order, 2 * (q - 1) // h
    elif family == "PGL2":
        gens, extra_stab = psl_gens + [delta], [delta]
        order, stab_order = q * (q * q - 1), 2 * (q - 1)
    elif family == "PSigmaL2":
        gens, extra_stab = psl_gens + [phi], [phi]
        order, stab_order = f * psl_order, f * 2 * (q - 1) // h
    elif family == "PGammaL2":
        gens, extra_stab = psl_gens + [delta, phi], [delta, phi]
        order, stab_order = f * q * (q * q - 1), 2 * f * (q - 1)
    else:  # DeltaPhi(j)
        dphi = delta * phi ** variant.j
        gens, extra_stab = psl_gens + [dphi], [dphi]
        e = f // math.gcd(f, variant.j)
        order, stab_order = e * psl_order, e * (q - 1)
    if order > caps.group_cap:
        raise CapExceeded("group order %d exceeds cap %d" % (order, caps.group_cap))

    labels = tuple(
        OmegaPoint("proj_pair", (_proj_payload(points[i]), _proj_payload(points[j])))
        for i, j in pairs
    )
    warnings = ()
    if q == 5:
        warnings = ("point stabiliser is not maximal for q = 5; action is imprimitive",)
    return _verify_orders(
        LabelledAction(
            PermGroup(degree, gens, caps=caps),
            labels,
            "%s/proj-pairs" % variant.describe(),
            stab0=PermGroup(degree, torus_swap + extra_stab, caps=caps),
            expected_group_order=order,
            expected_stab_order=stab_order,
            warnings=warnings,
        )
    )


# -- the unitary-model (C3) family ---------------------------------------------------


def c3_canonical_log(F2: FqField, q: int, log: int) -> int:
    """Canonical scalar label: min(b, -b^(-q)) in log order, for b = lambda^log."""
    m = F2.q - 1
    partner = (m // 2 - q * log) % m
    return min(log, partner)


def c3_label_logs(F2: FqField, q: int) -> list[int]:
    """Ascending canonical logs of the scalar points (b with b^{q+1} != -1)."""
    m = F2.q - 1
    half = m // 2
    out = []
    for log in range(m):
        if (log * (q + 1)) % m == half:
            continue  # b^{q+1} = -1: not a point
        if c3_canonical_log(F2, q, log) == log:
            out.append(log)
    return out


def su2_conjugator(F2: FqField, q: int):
    """A matrix C with C * conj(C)^T antisymmetric, so C^-1 SL2(q) C = SU2(q).

    Entries are chosen deterministically: b0 is the least-log solution of
    b0^{q+1} = -1 and eps = lambda^{(q+1)/2} (so eps^q = -eps).
    """
    lam = F2.gen()
    b0 = F2.from_log((q - 1) // 2)
    eps = F2.from_log((q + 1) // 2)
    return ((b0, F2.one()), (-eps, eps * b0 ** (-q)))


def psl2_c3_action(variant: GroupVariant, caps: Caps = DEFAULT_CAPS) -> LabelledAction:
    """The chosen group acting on orthogonal pairs of nondegenerate 1-spaces.

    The model is unitary: the socle is realised as the image of SU(2,q)
    (conjugate of SL(2,q) preserving the identity hermitian form on a plane
    over GF(q^2)).  Point 0 is alpha = {<u>, <v>}; every other point is
    omega_b = {<u+bv>, <u-b^{-q}v>} for a scalar b with b^{q+1} != -1,
    stored under the canonical log min(b, -b^{-q}).  Degree q(q-1)/2.
    """
    q = variant.q
    p, f = variant.p, variant.f
    if p == 2 or q < 5:
        raise ValueError("the unitary-model action needs odd q >= 5")
    degree = q * (q - 1) // 2
    if degree > caps.point_cap:
        raise CapExceeded("degree %d exceeds point cap %d" % (degree, caps.point_cap))

    F2 = field_create(p, 2 * f)
    m = F2.q - 1
    lam = F2.gen()
    one, zero = F2.one(), F2.zero()
    scalar_logs = c3_label_logs(F2, q)
    if len(scalar_logs) + 1 != degree:
        raise AssertionError("scalar label count %d != degree - 1" % len(scalar_logs))
    labels = (OmegaPoint("c3_point", ALPHA),) + tuple(
        OmegaPoint("c3_point", log) for log in scalar_logs
    )
    pos = {log: i + 1 for i, log in enumerate(scalar_logs)}

    def point_of(t: FqElem | None) -> int:
        # t = image scalar; None or zero means a coordinate vanished -> alpha
        if t is None or t.is_zero():
            return 0
        return pos[c3_canonical_log(F2, q, t.log)]

    def perm_of_matrix(M) -> Perm:
        (a, b_), (c, d) = M
        images = [0 if a.is_zero() else point_of(b_ / a)]
        for log in scalar_logs:
            t = F2.from_log(log)
            x, y = a + t * c, b_ + t * d
            images.append(0 if x.is_zero() else point_of(y / x))
        return Perm(images)

    def perm_of_frobenius(j: int) -> Perm:
        images = [0]
        for log in scalar_logs:
            images.append(pos[c3_canonical_log(F2, q, (log * p**j) % m)])
        return Perm(images)

    C = su2_conjugator(F2, q)
    C_inv = _mat_inv(C)
    mu = lam ** (q + 1)  # a primitive element of the GF(q) subfield
    sl2_gens = (
        ((one, one), (zero, one)),
        ((mu, zero), (zero, mu.inverse())),
        ((zero, one), (-one, zero)),
    )
    su_mats = [_mat_mul(_mat_mul(C_inv, M), C) for M in sl2_gens]
    for M in su_mats:
        (a, b_), (c, d) = M
        if not (a * d - b_ * c == one):
            raise AssertionError("conjugated generator does not have determinant 1")
        (w, x), (y, z) = _mat_mul(M, _mat_conj_transpose(M, f))
        if not (w == one and z == one and x.is_zero() and y.is_zero()):
            raise AssertionError("conjugated generator is not unitary")

    mat_t = ((lam ** (q - 1), zero), (zero, lam ** (1 - q)))  # SU2 torus
    mat_w = ((zero, one), (-one, zero))  # SU2 swap of <u>, <v>
    mat_b = ((lam ** (q - 1), zero), (zero, one))  # diagonal coset rep in GU2

    psl_gens = [perm_of_matrix(M) for M in su_mats]
    torus, swap = perm_of_matrix(mat_t), perm_of_matrix(mat_w)
    delta = perm_of_matrix(mat_b)
    phi = perm_of_frobenius(1)

    psl_order = q * (q * q - 1) // 2
    family = variant.family
    if family == "PSL2":
        gens, extra_stab = psl_gens, []
        order, stab_order = psl_order, q + 1
    elif family == "PGL2":
        gens, extra_stab = psl_gens + [delta], [delta]
        order, stab_order = q * (q * q - 1), 2 * (q + 1)
    elif family == "PSigmaL2":
        gens, extra_stab = psl_gens + [phi], [phi]
        order, stab_order = f * psl_order, f * (q + 1)
    elif family == "PGammaL2":
        gens, extra_stab = psl_gens + [delta, phi], [delta, phi]
        order, stab_order = 2 * f * psl_order, 2 * f * (q + 1)
    else:  # DeltaPhi(j)
        dphi = delta * phi ** variant.j
        gens, extra_stab = psl_gens + [dphi], [dphi]
        e = f // math.gcd(f, variant.j)
        order, stab_order = e * psl_order, e * (q + 1)
    if order > caps.group_cap:
        raise CapExceeded("group order %d exceeds cap %d" % (order, caps.group_cap))

    return _verify_orders(
        LabelledAction(
            PermGroup(degree, gens, caps=caps),
            labels,
            "%s/unitary-pairs" % variant.describe(),
            stab0=PermGroup(degree, [torus, swap] + extra_stab, caps=caps),
            expected_group_order=order,
            expected_stab_order=stab_order,
        )
    )


# -- catalogue ingestion --------------------------------------------------------------


class CatalogueError(ValueError):
    pass


@dataclass
class CatalogueEntry:
    name: str
    group: PermGroup
    subgroup: PermGroup | None
    expected_order: int
    expected_suborder: int | None


def load_catalogue(path: str | Path, caps: Caps = DEFAULT_CAPS) -> dict[str, CatalogueEntry]:
    """Parse a catalogue file and verify every entry's declared orders.

    Format, one record per group: ``name <id>``, ``degree <n>``, one or more
    ``gen <cycles>`` lines, optional ``sub gen <cycles>`` lines, and a
    terminating ``expect order <N>[ suborder <M>]`` line.  Cycle notation is
    1-based, e.g. ``(1,2,3)(4,5)``.  Blank lines and ``#`` comments are
    ignored.  Parse problems and order mismatches raise
    :class:`CatalogueError` with the offending line number.
    """
    text = Path(path).read_text(encoding="utf-8")
    entries: dict[str, CatalogueEntry] = {}
    name = None
    degree = None
    gens: list[Perm] = []
    sub_gens: list[Perm] = []

    def fail(lineno: int, msg: str):
        raise CatalogueError("line %d: %s" % (lineno, msg))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("name "):
            if name is not None:
                fail(lineno, "record %r has no 'expect' line" % name)
            name = line[5:].strip()
            degree, gens, sub_gens = None, [], []
            if not name:
                fail(lineno, "empty name")
            if name in entries:
                fail(lineno, "duplicate name %r" % name)
        elif line.startswith("degree "):
            if name is None:
                fail(lineno, "'degree' outside a record")
            try:
                degree = int(line[7:])
            except ValueError:
                fail(lineno, "bad degree %r" % line[7:])
        elif line.startswith("sub gen "):
            if degree is None:
                fail(lineno, "'sub gen' before 'degree'")
            try:
                sub_gens.append(parse_cycles(line[8:], degree, one_based=True))
            except ValueError as exc:
                fail(lineno, "bad cycle notation: %s" % exc)
        elif line.startswith("gen "):
            if degree is None:
                fail(lineno, "'gen' before 'degree'")
            try:
                gens.append(parse_cycles(line[4:], degree, one_based=True))
            except ValueError as exc:
                fail(lineno, "bad cycle notation: %s" % exc)
        elif line.startswith("expect order "):
            if name is None or degree is None or not gens:
                fail(lineno, "'expect' before a complete record")
            rest = line[13:].split()
            suborder = None
            try:
                if len(rest) == 1:
                    expected = int(rest[0])
                elif len(rest) == 3 and rest[1] == "suborder":
                    expected, suborder = int(rest[0]), int(rest[2])
                else:
                    raise ValueError
            except ValueError:
                fail(lineno, "malformed expect line")
            if (suborder is None) != (not sub_gens):
                fail(lineno, "suborder and 'sub gen' lines must come together")
            group = PermGroup(degree, gens, caps=caps)
            got = group.order()
            if got != expected:
                fail(lineno, "entry %r: order %d, declared %d" % (name, got, expected))
            subgroup = None
            if sub_gens:
                for g in sub_gens:
                    if not group.contains(g):
                        fail(lineno, "entry %r: 'sub gen' not inside the group" % name)
                subgroup = PermGroup(degree, sub_gens, caps=caps)
                got_sub = subgroup.order()
                if got_sub != suborder:
                    fail(
                        lineno,
                        "entry %r: subgroup order %d, declared %d"
                        % (name, got_sub, suborder),
                    )
            entries[name] = CatalogueEntry(name, group, subgroup, expected, suborder)
            name = None
        else:
            fail(lineno, "unrecognised directive %r" % line.split()[0])
    if name is not None:
        raise CatalogueError("record %r has no 'expect' line" % name)
    return entries


def bundled_catalogue_path() -> Path:
    """Path of the catalogue file shipped with the package."""
    return Path(__file__).resolve().parent / "data" / "catalogue.txt"
