#!/usr/bin/env python3
"""Find a 4x4 GF(2) generator pair for the 2520-element group acting on
PG(3,2), extend the action GF(8)-linearly to 585 projective lines, and freeze
the orbit and stabilizer data that the independent 24-dimensional run must
agree with.  Writes MeatAxe fixtures and a JSON report."""

import hashlib
import json
import pathlib
import random
import sys

import permtools as pt

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "out"
FIXTURES = HERE.parent / "data" / "fixtures"

SEED = 0xA7A7A7
GF8_MOD = 0b1011


def gf8_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000:
            a ^= GF8_MOD
    return r


MUL = [[gf8_mul(a, b) for b in range(8)] for a in range(8)]


def rand_invertible(rng):
    while True:
        rows = [rng.randrange(1, 16) for _ in range(4)]
        m = list(rows)
        ok = True
        for c in range(4):
            piv = None
            for r in range(c, 4):
                if m[r] >> c & 1:
                    piv = r
                    break
            if piv is None:
                ok = False
                break
            m[c], m[piv] = m[piv], m[c]
            for r in range(4):
                if r != c and m[r] >> c & 1:
                    m[r] ^= m[c]
        if ok:
            return rows


def perm15(rows):
    """Permutation of the 15 nonzero GF(2)^4 vectors, acting v -> v*M."""
    img = [0] * 16
    for v in range(1, 16):
        low = v & -v
        img[v] = img[v & (v - 1)] ^ img_of_basis(rows, low)
    return pt.perm([img[v] - 1 for v in range(1, 16)])


def img_of_basis(rows, low):
    k = low.bit_length() - 1
    return rows[k]


def vec12_images(rows):
    """Full 4096-entry table for the GF(8)^4 action of a 0/1 matrix.

    Vectors are 12-bit ints, three bits per coordinate, low coordinate in the
    low bits.  Addition in GF(8)^4 is XOR, and a 0/1 matrix acts GF(2)-linearly
    on this encoding, so the table builds incrementally from the 12 basis
    images."""
    basis = [0] * 12
    for k in range(4):
        row = rows[k]
        pat = 0
        for j in range(4):
            if row >> j & 1:
                pat |= 1 << (3 * j)
        for b in range(3):
            basis[3 * k + b] = pat << b
    img = [0] * 4096
    for v in range(1, 4096):
        low = v & -v
        img[v] = img[v & (v - 1)] ^ basis[low.bit_length() - 1]
    return img


def scale_tables():
    """scale[s][v] = s*v componentwise in GF(8)^4, for s in 1..7."""
    tabs = []
    for s in range(1, 8):
        basis = [0] * 12
        for k in range(4):
            for b in range(3):
                d = MUL[s][1 << b]
                basis[3 * k + b] = d << (3 * k)
        t = [0] * 4096
        for v in range(1, 4096):
            low = v & -v
            t[v] = t[v & (v - 1)] ^ basis[low.bit_length() - 1]
        tabs.append(t)
    return tabs


SCALE = scale_tables()


def line_keys():
    """Canonical representative (minimum scalar multiple) for each nonzero
    vector, plus the sorted list of the 585 distinct representatives."""
    key = [0] * 4096
    for v in range(1, 4096):
        key[v] = min(t[v] for t in SCALE)
    reps = sorted(set(key[1:]))
    assert len(reps) == 585
    return key, reps


def line_perm(rows, key, reps, index):
    img = vec12_images(rows)
    return pt.perm([index[key[img[reps[i]]]] for i in range(585)])


def schreier_stab_gens(gens, p, n):
    """Generators of the stabilizer of p in <gens> acting on 0..n-1."""
    ident = pt.identity(n)
    trans = {p: ident}
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for g in gens:
                r = g[q]
                if r not in trans:
                    trans[r] = pt.compose(trans[q], g)
                    nxt.append(r)
        frontier = nxt
    out = {}
    for q in trans:
        for g in gens:
            r = pt.compose(trans[q], g)
            sg = pt.compose(r, pt.inverse(trans[r[p]]))
            assert sg[p] == p
            out[pt.key(sg)] = sg
    out.pop(pt.key(ident), None)
    return list(out.values())


def derived_order(gens, n):
    comms = {}
    for g in gens:
        for h in gens:
            c = pt.compose(pt.compose(h, g), pt.inverse(pt.compose(g, h)))
            comms[pt.key(c)] = c
    cur = list(comms.values())
    while True:
        ch = pt.Chain(n)
        for c in cur:
            ch.add(c)
        grew = False
        for g in gens:
            gi = pt.inverse(g)
            for c in list(cur):
                conj = pt.compose(pt.compose(gi, c), g)
                if not ch.contains(conj):
                    cur.append(conj)
                    ch.add(conj)
                    grew = True
        if not grew:
            return ch.order()


def find_pair(rng):
    trials = 0
    while True:
        trials += 1
        assert trials < 100000
        x = rand_invertible(rng)
        y = rand_invertible(rng)
        px, py = perm15(x), perm15(y)
        ch = pt.Chain(15)
        ch.add(px)
        ch.add(py)
        if ch.order() == 2520:
            return x, y, px, py, trials


def orbit_of(start, perms, n):
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for q in frontier:
            for g in perms:
                r = g[q]
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def mtx_text(rows):
    lines = ["1 2 4 4"]
    for r in rows:
        lines.append("".join(str(r >> j & 1) for j in range(4)))
    return "\n".join(lines) + "\n"


def write_fixture(name, rows):
    text = mtx_text(rows)
    path = FIXTURES / name
    path.write_text(text)
    return hashlib.sha256(text.encode()).hexdigest()


def main():
    rng = random.Random(SEED)
    x, y, px, py, trials = find_pair(rng)
    print(f"pair found after {trials} trials: x={x} y={y}")

    key, reps = line_keys()
    index = {r: i for i, r in enumerate(reps)}
    lx = line_perm(x, key, reps, index)
    ly = line_perm(y, key, reps, index)

    seen = [False] * 585
    orbit_sizes = []
    orbit_reps = []
    for i in range(585):
        if seen[i]:
            continue
        orb = orbit_of(i, [lx, ly], 585)
        for j in orb:
            seen[j] = True
        orbit_sizes.append(len(orb))
        orbit_reps.append(i)
    orbit_sizes_sorted = sorted(orbit_sizes)
    print("orbit sizes:", orbit_sizes_sorted)
    assert orbit_sizes_sorted == [15, 210, 360]

    full = pt.Chain(585)
    full.add(lx)
    full.add(ly)
    image_order = full.order()
    print("image order on 585:", image_order)
    assert image_order == 2520

    stab_orders = sorted(2520 // s for s in orbit_sizes_sorted)
    by_size = dict(zip(orbit_sizes, orbit_reps))
    p15 = by_size[15]

    sg168 = schreier_stab_gens([lx, ly], p15, 585)
    ch168 = pt.Chain(585)
    for g in sg168:
        ch168.add(g)
    assert ch168.order() == 168
    d168 = derived_order(sg168, 585)
    print("point stabilizer on 15-orbit: order 168, derived", d168)
    assert d168 == 168

    orb15 = sorted(int(q) for q in orbit_of(p15, [lx, ly], 585))
    pos = {q: i for i, q in enumerate(orb15)}
    r15x = pt.perm([pos[int(lx[q])] for q in orb15])
    r15y = pt.perm([pos[int(ly[q])] for q in orb15])

    sg168r = schreier_stab_gens([r15x, r15y], pos[p15], 15)
    other = next(q for q in range(15) if q != pos[p15])
    orb14 = orbit_of(other, sg168r, 15)
    assert len(orb14) == 14
    sg12 = schreier_stab_gens(sg168r, other, 15)
    ch12 = pt.Chain(15)
    for g in sg12:
        ch12.add(g)
    assert ch12.order() == 12
    a4_fix = set()
    a4_elems = list(ch12.elements())
    assert len(a4_elems) == 12
    for g in a4_elems:
        if pt.perm_order(g) == 3:
            a4_fix.add(sum(1 for q in range(15) if g[q] == q))
    print("two-point stabilizer 3-element fix counts:", sorted(a4_fix))
    assert a4_fix == {3}

    buckets = {}
    ch15 = pt.Chain(15)
    ch15.add(r15x)
    ch15.add(r15y)
    assert ch15.order() == 2520
    for g in ch15.elements():
        if pt.perm_order(g) == 3:
            f = sum(1 for q in range(15) if g[q] == q)
            buckets[f] = buckets.get(f, 0) + 1
    print("order-3 fix buckets on 15:", buckets)
    assert buckets == {0: 70, 3: 280}

    co1 = json.loads((OUT / "leechco1.json").read_text())
    for comp in co1["census"].values():
        assert sorted(comp) == orbit_sizes_sorted
    assert co1["stabilizers"]["three_fix15_class_sizes"] == {
        str(k): v for k, v in buckets.items()
    }
    assert co1["stabilizers"]["two_point_stab_three_fix15"] == sorted(a4_fix)

    FIXTURES.mkdir(parents=True, exist_ok=True)
    sha_x = write_fixture("alt7-4f2-x.mtx", x)
    sha_y = write_fixture("alt7-4f2-y.mtx", y)

    report = {
        "seed": SEED,
        "search_trials": trials,
        "generators": {"x": x, "y": y},
        "orders": {
            "x": pt.perm_order(px),
            "y": pt.perm_order(py),
            "xy": pt.perm_order(pt.compose(py, px)),
        },
        "group_order_15": 2520,
        "image_order_585": image_order,
        "census_585": orbit_sizes_sorted,
        "stabilizer_orders": stab_orders,
        "point_stab_derived_order": d168,
        "two_point_stab_order": 12,
        "two_point_stab_three_fix15": sorted(a4_fix),
        "three_fix15_class_sizes": {str(k): v for k, v in buckets.items()},
        "fixtures": {"alt7-4f2-x.mtx": sha_x, "alt7-4f2-y.mtx": sha_y},
    }
    OUT.mkdir(exist_ok=True)
    (OUT / "a7gen.json").write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    print("report written")


if __name__ == "__main__":
    sys.exit(main())
