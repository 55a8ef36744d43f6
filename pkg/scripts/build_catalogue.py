"""Regenerate the bundled fixture catalogue and its expectations file.

Run from the repository root:

    python3 scripts/build_catalogue.py

Writes ``src/saxl/data/catalogue.txt`` (groups + distinguished subgroups in
cycle notation) and ``src/saxl/data/table_rows.json`` (the regular-suborbit
count and exact non-base probability each coset action must reproduce).
Every construction is verified on the spot: declared orders, subgroup
membership, primitivity of the coset action, and agreement of the engine's
(r, Q) with the frozen row values.  The script is deterministic, so the
generated files are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from saxl.actions import coset_action, load_catalogue
from saxl.engine import q_exact, regular_suborbit_count
from saxl.group import PermGroup
from saxl.perm import Perm, from_cycles, identity

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "saxl" / "data"

# Frozen row expectations: regular suborbit count and exact Q as (num, den).
EXPECTED_ROWS = {
    "S7_AGL17": (1, (13, 20)),
    "A9_ASL23": (2, (17, 35)),
    "M11_2S4": (1, (39, 55)),
    "L2_17_S4": (3, (5, 17)),
    "PGL2_13_S4": (2, (43, 91)),
    "PGL2_11_S4": (1, (31, 55)),
    "L3_3_13_3": (2, (11, 24)),
    "L3_3_O3": (5, (19, 39)),
}


def conj(h: Perm, g: Perm) -> Perm:
    return g.inverse() * h * g


def two_generators(degree: int, elements: list[Perm]) -> list[Perm]:
    """A deterministic two-element generating set of the given subgroup."""
    target = len(elements)
    pool = [g for g in elements if not g.is_identity()]
    for a, b in itertools.combinations(pool, 2):
        if PermGroup(degree, [a, b]).order() == target:
            return [a, b]
    raise RuntimeError("no two-element generating set found")


# -- individual constructions -------------------------------------------------------


def s7_agl17():
    """S7 with the one-dimensional affine group over the 7-element field."""
    deg = 7
    gens = [from_cycles(deg, [range(7)]), from_cycles(deg, [(0, 1)])]
    shift = Perm((x + 1) % 7 for x in range(7))
    scale = Perm(3 * x % 7 for x in range(7))
    return deg, gens, 5040, [shift, scale], 42


def a9_asl23():
    """A9 with the affine group 3^2:SL(2,3) on the nine-point affine plane."""
    deg = 9
    gens = [from_cycles(deg, [range(9)]), from_cycles(deg, [(0, 1, 2)])]

    def affine(mat, vec):
        (a, b), (c, d) = mat
        imgs = []
        for y in range(3):
            for x in range(3):
                xx = (x * a + y * c + vec[0]) % 3
                yy = (x * b + y * d + vec[1]) % 3
                imgs.append(xx + 3 * yy)
        return Perm(imgs)

    ident = ((1, 0), (0, 1))
    sub = [
        affine(ident, (1, 0)),
        affine(ident, (0, 1)),
        affine(((0, -1), (1, 0)), (0, 0)),
        affine(((1, 1), (0, 1)), (0, 0)),
    ]
    return deg, gens, 181440, sub, 216


def m11_entries():
    """M11 on 11 points, plus the normaliser of a quaternion subgroup.

    The subgroup is found exhaustively: take the first pair of order-4
    elements generating a quaternion group of order 8, then filter the 7920
    group elements for those normalising it.
    """
    deg = 11
    gens = [
        from_cycles(deg, [range(11)]),
        from_cycles(deg, [(2, 6, 10, 7), (3, 9, 4, 5)]),
    ]
    group = PermGroup(deg, gens)
    assert group.order() == 7920, group.order()
    elements = group.elements()

    buckets: dict[Perm, list[Perm]] = {}
    for g in elements:
        if g.order() == 4:
            buckets.setdefault(g * g, []).append(g)
    bucket = buckets[min(buckets)]
    a = bucket[0]
    b = next(g for g in bucket if g != a and g != a.inverse())
    quaternion = PermGroup(deg, [a, b])
    assert quaternion.order() == 8
    q_elems = frozenset(quaternion.elements())
    assert sum(1 for g in q_elems if g.order() == 2) == 1  # quaternion, not dihedral
    norm = [g for g in elements if conj(a, g) in q_elems and conj(b, g) in q_elems]
    assert len(norm) == 48, len(norm)
    sub_gens = two_generators(deg, norm)
    return deg, gens, 7920, sub_gens


def mobius(q: int, a: int, b: int, c: int, d: int) -> Perm:
    """z -> (az+b)/(cz+d) on the projective line over the prime field;
    point 0 is infinity, point 1+z is the finite value z."""
    imgs = []
    for i in range(q + 1):
        num, den = (a, c) if i == 0 else ((a * (i - 1) + b) % q, (c * (i - 1) + d) % q)
        imgs.append(0 if den == 0 else 1 + num * pow(den, -1, q) % q)
    return Perm(imgs)


def four_group_normaliser(q: int, pgl: bool):
    """The projective group over the prime field q with the normaliser of a
    Klein four-group inside the simple socle (a symmetric-group-shaped
    subgroup of order 24)."""
    deg = q + 1
    u = mobius(q, 1, 1, 0, 1)
    s = mobius(q, 0, -1 % q, 1, 0)
    gens = [u, s]
    socle = PermGroup(deg, gens)
    assert socle.order() == q * (q * q - 1) // 2
    if pgl:
        lam = next(
            x
            for x in range(2, q)
            if all(pow(x, k, q) != 1 for k in range(1, q - 1))
        )
        gens = [u, s, mobius(q, lam, 0, 0, 1)]
    group = PermGroup(deg, gens)
    socle_elems = socle.elements()
    involutions = [g for g in socle_elems if g.order() == 2]
    four = None
    for a, b in itertools.combinations(involutions, 2):
        if a * b == b * a:
            four = (a, b)
            break
    a, b = four
    v_set = frozenset((identity(deg), a, b, a * b))
    norm = [g for g in group.elements() if conj(a, g) in v_set and conj(b, g) in v_set]
    assert len(norm) == 24, len(norm)
    return deg, gens, group.order(), two_generators(deg, norm)


def pg2_map():
    """Points of the projective plane over the 3-element field (first nonzero
    coordinate 1, lexicographic order) and the matrix-to-permutation map."""
    points = [
        v
        for v in itertools.product(range(3), repeat=3)
        if any(v) and next(x for x in v if x) == 1
    ]
    index = {v: i for i, v in enumerate(points)}

    def perm_of(mat) -> Perm:
        imgs = []
        for v in points:
            w = tuple(sum(v[i] * mat[i][j] for i in range(3)) % 3 for j in range(3))
            if next(x for x in w if x) == 2:
                w = tuple(2 * x % 3 for x in w)
            imgs.append(index[w])
        return Perm(imgs)

    return points, perm_of


def l3_3_entries():
    """The special linear group on the 13 points of its projective plane,
    with (a) the normaliser of a 13-element cyclic subgroup and (b) the
    orthogonal-form stabiliser of order 24."""
    points, perm_of = pg2_map()
    deg = len(points)
    transvections = []
    for i, j in itertools.permutations(range(3), 2):
        mat = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
        mat[i][j] = 1
        transvections.append(perm_of(mat))
    group = PermGroup(deg, transvections)
    assert group.order() == 5616, group.order()
    gens = transvections

    c13 = next(g for g in group.elements() if g.order() == 13)
    c_set = frozenset(PermGroup(deg, [c13]).elements())
    norm = [g for g in group.elements() if conj(c13, g) in c_set]
    assert len(norm) == 39, len(norm)
    singer_gens = two_generators(deg, norm)

    orth = []
    for flat in itertools.product(range(3), repeat=9):
        mat = [flat[0:3], flat[3:6], flat[6:9]]
        det = (
            mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
            - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
            + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0])
        ) % 3
        if det != 1:
            continue
        if all(
            sum(mat[r][k] * mat[s][k] for k in range(3)) % 3 == (1 if r == s else 0)
            for r in range(3)
            for s in range(r, 3)
        ):
            orth.append(perm_of(mat))
    assert len(orth) == 24, len(orth)
    orth_gens = two_generators(deg, orth)
    return deg, gens, 5616, singer_gens, orth_gens


# -- assembly ----------------------------------------------------------------------


def format_entry(name, degree, gens, order, sub_gens=None, suborder=None) -> str:
    lines = ["name %s" % name, "degree %d" % degree]
    lines += ["gen %s" % g.cycle_string(one_based=True) for g in gens]
    if sub_gens is not None:
        lines += ["sub gen %s" % g.cycle_string(one_based=True) for g in sub_gens]
        lines.append("expect order %d suborder %d" % (order, suborder))
    else:
        lines.append("expect order %d" % order)
    return "\n".join(lines) + "\n"


def main() -> int:
    deg, gens, order, sub, suborder = s7_agl17()
    entries = [("S7_AGL17", deg, gens, order, sub, suborder)]

    deg, gens, order, sub, suborder = a9_asl23()
    entries.append(("A9_ASL23", deg, gens, order, sub, suborder))

    deg, gens, order, sub = m11_entries()
    entries.append(("M11", deg, gens, order, None, None))
    entries.append(("M11_2S4", deg, gens, order, sub, 48))

    deg, gens, order, sub = four_group_normaliser(17, pgl=False)
    entries.append(("L2_17_S4", deg, gens, order, sub, 24))
    deg, gens, order, sub = four_group_normaliser(13, pgl=True)
    entries.append(("PGL2_13_S4", deg, gens, order, sub, 24))
    deg, gens, order, sub = four_group_normaliser(11, pgl=True)
    entries.append(("PGL2_11_S4", deg, gens, order, sub, 24))

    deg, gens, order, singer, orth = l3_3_entries()
    entries.append(("L3_3_13_3", deg, gens, order, singer, 39))
    entries.append(("L3_3_O3", deg, gens, order, orth, 24))

    header = (
        "# Fixture groups for the coset-action rows, in cycle notation.\n"
        "# Regenerate with scripts/build_catalogue.py; do not edit by hand.\n"
    )
    text = header + "\n" + "\n".join(format_entry(*e) for e in entries)
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    (DATA_DIR / "catalogue.txt").write_text(text, encoding="utf-8")

    rows = {
        name: {"r": r, "q": {"num": num, "den": den}}
        for name, (r, (num, den)) in EXPECTED_ROWS.items()
    }
    (DATA_DIR / "table_rows.json").write_text(
        json.dumps(rows, indent=2) + "\n", encoding="utf-8"
    )

    # round-trip: load what we wrote and check every frozen row
    loaded = load_catalogue(DATA_DIR / "catalogue.txt")
    bad = 0
    for name, (r_want, (num, den)) in EXPECTED_ROWS.items():
        entry = loaded[name]
        action = coset_action(entry.group, entry.subgroup, name)
        r = regular_suborbit_count(action)
        q = q_exact(action)
        primitive = action.group.is_primitive()
        ok = r == r_want and q == Fraction(num, den) and primitive
        bad += not ok
        print(
            "%-12s n=%4d r=%d Q=%s primitive=%s %s"
            % (name, action.degree, r, q, primitive, "ok" if ok else "MISMATCH")
        )
    assert "M11" in loaded and loaded["M11"].subgroup is None
    print("wrote %s and table_rows.json" % (DATA_DIR / "catalogue.txt"))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
