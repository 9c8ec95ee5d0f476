#!/usr/bin/env python3
"""Census data for the 105 triple-transposition involutions of S7 under
conjugation by a projective-linear subgroup, a Singer 7-cycle, and the
two-coset-stabilizer A4, plus the 6-dimensional companion-matrix control
split.  Letters 0..6 are the nonzero vectors 1..7 of GF(2)^3."""

import itertools
import json
import pathlib
import sys

import numpy as np

import permtools as pt

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "out"


def mat_perm(rows):
    """Letter permutation of the linear map v -> v*M on GF(2)^3."""
    img = [0] * 8
    for v in range(1, 8):
        low = v & -v
        img[v] = img[v & (v - 1)] ^ rows[low.bit_length() - 1]
    return pt.perm([img[v] - 1 for v in range(1, 8)])


def gl3_elements():
    for rows in itertools.product(range(1, 8), repeat=3):
        m = np.zeros((3, 3), dtype=np.uint8)
        for i in range(3):
            for j in range(3):
                m[i, j] = rows[i] >> j & 1
        r = m.copy()
        rank = 0
        for c in range(3):
            piv = None
            for i in range(rank, 3):
                if r[i, c]:
                    piv = i
                    break
            if piv is None:
                continue
            r[[rank, piv]] = r[[piv, rank]]
            for i in range(3):
                if i != rank and r[i, c]:
                    r[i] ^= r[rank]
            rank += 1
        if rank == 3:
            yield list(rows)


def cycle_type(p):
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        l = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = int(p[j])
            l += 1
        out.append(l)
    return tuple(sorted(out, reverse=True))


def conj_orbits(acting, points):
    """Orbit sizes of <acting> conjugating the given perms."""
    index = {pt.key(p): i for i, p in enumerate(points)}
    seen = [False] * len(points)
    sizes = []
    for i in range(len(points)):
        if seen[i]:
            continue
        frontier = [i]
        seen[i] = True
        size = 0
        while frontier:
            nxt = []
            for j in frontier:
                size += 1
                for g in acting:
                    c = pt.compose(pt.compose(pt.inverse(g), points[j]), g)
                    k = index[pt.key(c)]
                    if not seen[k]:
                        seen[k] = True
                        nxt.append(k)
            frontier = nxt
        sizes.append(size)
    return sorted(sizes)


def coset_action(l_perms, gens7):
    """Action of A7 generators on right cosets of the 168-element subgroup.

    Returns (list of coset keys, perms of the coset indices) where a coset's
    key is the minimum element key of the coset."""
    def coset_key(x):
        return min(pt.key(pt.compose(l, x)) for l in l_perms)

    ident = pt.identity(7)
    keys = [coset_key(ident)]
    reps = [ident]
    index = {keys[0]: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens7:
                x = pt.compose(reps[i], g)
                k = coset_key(x)
                if k not in index:
                    index[k] = len(reps)
                    reps.append(x)
                    keys.append(k)
                    nxt.append(len(reps) - 1)
        frontier = nxt
    assert len(reps) == 15
    perms = []
    for g in gens7:
        perms.append(pt.perm([index[coset_key(pt.compose(r, g))] for r in reps]))
    return perms


def paired_stab_gens(pairs, p, n):
    """Schreier generators fixing point p, acting on 0..n-1 through the first
    member of each (action perm, companion perm) pair."""
    ident = (pt.identity(n), pt.identity(7))

    def pcompose(a, b):
        return (pt.compose(a[0], b[0]), pt.compose(a[1], b[1]))

    def pinv(a):
        return (pt.inverse(a[0]), pt.inverse(a[1]))

    trans = {p: ident}
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for g in pairs:
                r = int(g[0][q])
                if r not in trans:
                    trans[r] = pcompose(trans[q], g)
                    nxt.append(r)
        frontier = nxt
    out = {}
    for q in trans:
        for g in pairs:
            r = pcompose(trans[q], g)
            sg = pcompose(r, pinv(trans[int(r[0][p])]))
            assert int(sg[0][p]) == p
            out[pt.key(sg[0]) + pt.key(sg[1])] = sg
    return [sg for sg in out.values() if not pt.is_identity(sg[0]) or not pt.is_identity(sg[1])]


def companion_control():
    """Split dimensions of the 6-dim GF(2) companion matrix of the degree-6
    cyclotomic-style product (x^3+x+1)(x^3+x^2+1)."""
    poly = 0b1111111
    c = np.zeros((6, 6), dtype=np.uint8)
    for i in range(5):
        c[i, i + 1] = 1
    for j in range(6):
        c[5, j] = poly >> j & 1

    def poly_at(bits):
        acc = np.zeros((6, 6), dtype=np.uint8)
        p = np.eye(6, dtype=np.uint8)
        k = 0
        while bits >> k:
            if bits >> k & 1:
                acc ^= p
            p = p @ c % 2
            k += 1
        return acc

    def nullity(m):
        r = m.copy()
        rank = 0
        for col in range(6):
            piv = None
            for i in range(rank, 6):
                if r[i, col]:
                    piv = i
                    break
            if piv is None:
                continue
            r[[rank, piv]] = r[[piv, rank]]
            for i in range(6):
                if i != rank and r[i, col]:
                    r[i] ^= r[rank]
            rank += 1
        return 6 - rank

    return [nullity(poly_at(0b1011)), nullity(poly_at(0b1101))]


def main():
    letters = list(range(7))
    s7 = [pt.perm(p) for p in itertools.permutations(letters)]
    invs = [p for p in s7 if cycle_type(p) == (2, 2, 2, 1)]
    assert len(invs) == 105

    gl3 = list(gl3_elements())
    assert len(gl3) == 168
    l_perms = [mat_perm(rows) for rows in gl3]
    l_set = {pt.key(p) for p in l_perms}
    assert len(l_set) == 168

    psl_orbits = conj_orbits(l_perms, invs)
    print("projective-group orbit sizes on 105:", psl_orbits)
    assert psl_orbits == [7, 42, 56]

    singer = mat_perm([2, 4, 3])
    assert pt.perm_order(singer) == 7
    assert pt.key(singer) in l_set
    c7_orbits = conj_orbits([singer], invs)
    print("Singer orbit sizes on 105:", c7_orbits)
    assert c7_orbits == [7] * 15

    a7_gens = [pt.cycle(7, [0, 1, 2]), pt.cycle(7, [0, 1, 2, 3, 4, 5, 6])]
    ch = pt.Chain(7)
    for g in a7_gens:
        ch.add(g)
    assert ch.order() == 2520
    coset_perms = coset_action(l_perms, a7_gens)
    ch15 = pt.Chain(15)
    for p in coset_perms:
        ch15.add(p)
    assert ch15.order() == 2520

    pairs = list(zip(coset_perms, a7_gens))
    stab0 = paired_stab_gens(pairs, 0, 15)
    ch168 = pt.Chain(7)
    for s in stab0:
        ch168.add(s[1])
    assert ch168.order() == 168
    for s in stab0:
        assert pt.key(s[1]) in l_set

    a4_pairs = paired_stab_gens(stab0, 1, 15)
    a4_chain7 = pt.Chain(7)
    a4_chain15 = pt.Chain(15)
    for s in a4_pairs:
        a4_chain7.add(s[1])
        a4_chain15.add(s[0])
    assert a4_chain7.order() == 12
    assert a4_chain15.order() == 12
    a4_elems7 = list(a4_chain7.elements())
    for g in a4_elems7:
        if pt.perm_order(g) == 3:
            assert cycle_type(g) == (3, 3, 1)
    a4_fix15 = sorted(
        {
            sum(1 for q in range(15) if int(g[q]) == q)
            for g in a4_chain15.elements()
            if pt.perm_order(g) == 3
        }
    )
    print("two-coset-stabilizer 3-element fix counts on 15:", a4_fix15)
    assert a4_fix15 == [3]

    a4_gens7 = [s[1] for s in a4_pairs]
    a4_orbits = conj_orbits(a4_gens7, invs)
    print("A4 orbit sizes on 105:", a4_orbits)
    assert a4_orbits == [3, 3, 3, 4, 4, 4] + [12] * 7

    control = companion_control()
    print("companion control split:", control)
    assert control == [3, 3]

    co1 = json.loads((OUT / "leechco1.json").read_text())
    assert co1["stabilizers"]["two_point_stab_three_fix15"] == a4_fix15

    psl_gens = []
    chl = pt.Chain(7)
    for p in l_perms:
        if chl.add(p):
            psl_gens.append(p)
        if chl.order() == 168:
            break
    assert chl.order() == 168

    a4_min = sorted(pt.key(g) for g in a4_chain7.elements())[0]
    report = {
        "involution_count": 105,
        "psl32_orbits_105": psl_orbits,
        "singer_orbits_105": c7_orbits,
        "a4_orbits_105": a4_orbits,
        "a4_orbit_count": len(a4_orbits),
        "a4_fix15": a4_fix15,
        "companion_control_split": control,
        "psl32_gens_7": [[int(v) for v in g] for g in psl_gens],
        "singer_gen_7": [int(v) for v in singer],
        "a4_gens_7": [[int(v) for v in g] for g in a4_gens7],
        "a4_element_min_key": a4_min.hex(),
    }
    OUT.mkdir(exist_ok=True)
    (OUT / "derive_counts.json").write_text(
        json.dumps(report, indent=1, sort_keys=True) + "\n"
    )
    print("report written")


if __name__ == "__main__":
    sys.exit(main())
