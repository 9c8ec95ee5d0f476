#!/usr/bin/env python3
"""Construct a double cover of S7 inside the rank-6 Clifford algebra over
GF(9), of the isoclinism type whose triple-transposition involutions lift to
involutions.  Freezes the upstairs census data (210 order-2 lifts, preimage
conjugation orbits for the three downstairs subgroups) and ships the smallest
vector-orbit permutation representation as a MeatAxe permutation fixture."""

import hashlib
import json
import pathlib
import random
import sys

import numpy as np

import permtools as pt

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "out"
FIXTURES = HERE.parent / "data" / "fixtures"

SEED = 0x25C07E

# GF(9) = GF(3)[i], i^2 = -1.  Matrices are (re, im) pairs of int16 arrays.


def gmat(re, im=None):
    re = np.asarray(re, dtype=np.int16) % 3
    if im is None:
        im = np.zeros_like(re)
    return re, np.asarray(im, dtype=np.int16) % 3


def gmul(a, b):
    ar, ai = a
    br, bi = b
    return ((ar @ br - ai @ bi) % 3, (ar @ bi + ai @ br) % 3)


def gadd(a, b):
    return ((a[0] + b[0]) % 3, (a[1] + b[1]) % 3)


def gscale(s, a):
    sr, si = s
    return ((sr * a[0] - si * a[1]) % 3, (sr * a[1] + si * a[0]) % 3)


def gkron(a, b):
    ar, ai = a
    br, bi = b
    return (
        (np.kron(ar, br) - np.kron(ai, bi)) % 3,
        (np.kron(ar, bi) + np.kron(ai, br)) % 3,
    )


def geq(a, b):
    return bool((a[0] == b[0]).all() and (a[1] == b[1]).all())


def gkey(a):
    return a[0].tobytes() + a[1].tobytes()


def gneg(a):
    return ((-a[0]) % 3, (-a[1]) % 3)


def gident(n):
    return gmat(np.eye(n, dtype=np.int16))


def gorder(a, ident, bound=64):
    p = a
    for n in range(1, bound + 1):
        if geq(p, ident):
            return n
        p = gmul(p, a)
    raise AssertionError("order bound exceeded")


def ginv(a, ident):
    p = a
    prev = ident
    for _ in range(64):
        if geq(p, ident):
            return prev
        prev = p
        p = gmul(p, a)
    raise AssertionError("inverse bound exceeded")


def pauli():
    s1 = gmat([[0, 1], [1, 0]])
    s2 = gmat([[0, 0], [0, 0]], [[0, 2], [1, 0]])
    s3 = gmat([[1, 0], [0, 2]])
    return s1, s2, s3


def gammas():
    s1, s2, s3 = pauli()
    i2 = gident(2)
    gs = [
        gkron(gkron(s1, i2), i2),
        gkron(gkron(s2, i2), i2),
        gkron(gkron(s3, s1), i2),
        gkron(gkron(s3, s2), i2),
        gkron(gkron(s3, s3), s1),
        gkron(gkron(s3, s3), s2),
    ]
    i8 = gident(8)
    for a in gs:
        assert geq(gmul(a, a), i8)
    for x in range(6):
        for y in range(x + 1, 6):
            assert geq(gmul(gs[x], gs[y]), gneg(gmul(gs[y], gs[x])))
    return gs


def gram():
    g = np.zeros((6, 6), dtype=np.int16)
    for i in range(6):
        g[i, i] = 2
        if i:
            g[i, i - 1] = g[i - 1, i] = 2
    return g


def congruence_diagonalize(g):
    """E with E g E^T diagonal over GF(3), pivoting past vanishing leading
    minors by row/column swaps or additions."""
    n = g.shape[0]
    m = g.copy() % 3
    e = np.eye(n, dtype=np.int16)
    for k in range(n):
        if m[k, k] % 3 == 0:
            piv = None
            for i in range(k + 1, n):
                if m[i, i] % 3:
                    piv = i
                    break
            if piv is not None:
                m[[k, piv]] = m[[piv, k]]
                m[:, [k, piv]] = m[:, [piv, k]]
                e[[k, piv]] = e[[piv, k]]
            else:
                j = next(i for i in range(k + 1, n) if m[k, i] % 3)
                m[k] = (m[k] + m[j]) % 3
                m[:, k] = (m[:, k] + m[:, j]) % 3
                e[k] = (e[k] + e[j]) % 3
        assert m[k, k] % 3
        inv = pow(int(m[k, k]), -1, 3)
        for i in range(k + 1, n):
            if m[i, k] % 3:
                f = (-m[i, k] * inv) % 3
                m[i] = (m[i] + f * m[k]) % 3
                m[:, i] = (m[:, i] + f * m[:, k]) % 3
                e[i] = (e[i] + f * e[k]) % 3
    assert ((m - np.diag(np.diag(m))) % 3 == 0).all()
    assert ((e @ g @ e.T - m) % 3 == 0).all()
    return e, np.diag(m) % 3


def gf3_inverse(a):
    n = a.shape[0]
    m = np.concatenate([a.copy() % 3, np.eye(n, dtype=np.int16)], axis=1)
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i, c] % 3)
        m[[c, piv]] = m[[piv, c]]
        m[c] = m[c] * pow(int(m[c, c]), -1, 3) % 3
        for i in range(n):
            if i != c and m[i, c] % 3:
                m[i] = (m[i] - m[i, c] * m[c]) % 3
    return m[:, n:]


def root_matrix():
    """S over GF(9) with S^T S equal to the Gram matrix."""
    g = gram()
    e, d = congruence_diagonalize(g)
    einv = gf3_inverse(e)
    sq = {1: (1, 0), 2: (0, 1)}
    re = np.zeros((6, 6), dtype=np.int16)
    im = np.zeros((6, 6), dtype=np.int16)
    for k in range(6):
        r, i = sq[int(d[k])]
        re[k] = (r * einv.T[k]) % 3
        im[k] = (i * einv.T[k]) % 3
    s = (re, im)
    gg = gmul((re.T % 3, im.T % 3), s)
    assert (gg[0] % 3 == g % 3).all() and (gg[1] % 3 == 0).all()
    return s


def coxeter_lifts():
    gs = gammas()
    s = root_matrix()
    i8 = gident(8)
    ts = []
    for j in range(6):
        acc = gmat(np.zeros((8, 8), dtype=np.int16))
        for k in range(6):
            coef = (np.int16(s[0][k, j]), np.int16(s[1][k, j]))
            acc = gadd(acc, gscale(coef, gs[k]))
        ts.append(acc)
    minus = gneg(i8)
    g3 = gram()
    for x in range(6):
        assert geq(gmul(ts[x], ts[x]), minus)
        for y in range(x + 1, 6):
            anti = gadd(gmul(ts[x], ts[y]), gmul(ts[y], ts[x]))
            want = gscale((np.int16(2 * g3[x, y] % 3), np.int16(0)), i8)
            assert geq(anti, want)
    triple = gmul(gmul(ts[0], ts[2]), ts[4])
    assert geq(gmul(triple, triple), i8)
    return ts


def pair_bfs(ts):
    """Closure of the (matrix, letter-perm) generator pairs.  Keyed by the
    whole pair, so the final size certifies that the matrix determines the
    downstairs permutation."""
    i8 = gident(8)
    perm_gens = [pt.cycle(7, [j, j + 1]) for j in range(6)]
    ident = (i8, pt.identity(7))
    elems = {gkey(i8) + pt.key(ident[1]): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m, p in frontier:
            for t, q in zip(ts, perm_gens):
                m2 = gmul(m, t)
                e2 = (m2, pt.compose(p, q))
                k = gkey(m2) + pt.key(e2[1])
                if k not in elems:
                    elems[k] = e2
                    nxt.append(e2)
        frontier = nxt
    return elems


def conj_orbit_sizes(invs, conjugators, ident):
    index = {gkey(m): i for i, m in enumerate(invs)}
    pairs = [(ginv(c, ident), c) for c in conjugators]
    seen = [False] * len(invs)
    sizes = []
    for i in range(len(invs)):
        if seen[i]:
            continue
        seen[i] = True
        frontier = [i]
        size = 0
        while frontier:
            nxt = []
            for j in frontier:
                size += 1
                for ci, c in pairs:
                    m2 = gmul(gmul(ci, invs[j]), c)
                    k = index[gkey(m2)]
                    if not seen[k]:
                        seen[k] = True
                        nxt.append(k)
            frontier = nxt
        sizes.append(size)
    return sorted(sizes)


def closure7(gens):
    ident = pt.identity(7)
    out = {pt.key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = pt.compose(p, g)
                k = pt.key(q)
                if k not in out:
                    out[k] = q
                    nxt.append(q)
        frontier = nxt
    return out


def vec_key(v):
    return v[0].tobytes() + v[1].tobytes()


def vec_orbit(v0, ts, cap):
    seen = {vec_key(v0)}
    frontier = [v0]
    order = [v0]
    while frontier:
        nxt = []
        for v in frontier:
            for t in ts:
                w = ((v[0] @ t[0] - v[1] @ t[1]) % 3, (v[0] @ t[1] + v[1] @ t[0]) % 3)
                k = vec_key(w)
                if k not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(k)
                    nxt.append(w)
                    order.append(w)
        frontier = nxt
    return order


def orbit_perms(orbit, ts):
    index = {vec_key(v): i for i, v in enumerate(orbit)}
    perms = []
    for t in ts:
        img = []
        for v in orbit:
            w = ((v[0] @ t[0] - v[1] @ t[1]) % 3, (v[0] @ t[1] + v[1] @ t[0]) % 3)
            img.append(index[vec_key(w)])
        perms.append(pt.perm(img))
    return perms


def main():
    rng = random.Random(SEED)
    ts = coxeter_lifts()
    i8 = gident(8)
    print("lifts built: orders", [gorder(t, i8) for t in ts])

    elems = pair_bfs(ts)
    print("group size:", len(elems))
    assert len(elems) == 10080
    assert len({gkey(m) for m, _ in elems.values()}) == 10080
    downstairs = {pt.key(p) for _, p in elems.values()}
    assert len(downstairs) == 5040
    kernel = [m for m, p in elems.values() if pt.is_identity(p)]
    assert len(kernel) == 2
    z = gneg(i8)
    assert any(geq(m, z) for m in kernel)
    assert geq(gmul(ts[0], ts[0]), z)

    invs = []
    for m, p in elems.values():
        if geq(gmul(m, m), i8) and not geq(m, i8):
            invs.append((m, p))
    inv_mats = [m for m, _ in invs if not geq(m, z)]
    print("order-2 elements excluding the center:", len(inv_mats))
    assert len(inv_mats) == 210
    from derive_counts import cycle_type

    for m, p in invs:
        if geq(m, z):
            continue
        assert cycle_type(p) == (2, 2, 2, 1)

    dc = json.loads((OUT / "derive_counts.json").read_text())
    by_perm = {}
    for m, p in elems.values():
        by_perm.setdefault(pt.key(p), m)

    def lift(perm_list):
        return by_perm[pt.key(pt.perm(perm_list))]

    psl_set = closure7([pt.perm(g) for g in dc["psl32_gens_7"]])
    assert len(psl_set) == 168
    psl_lifts = [lift(g) for g in dc["psl32_gens_7"]]
    psl_orbits = conj_orbit_sizes(inv_mats, psl_lifts, i8)
    print("projective-preimage orbit sizes on 210:", psl_orbits)
    assert psl_orbits == [14, 56, 56, 84]

    c7_lift = lift(dc["singer_gen_7"])
    c7_orbits = conj_orbit_sizes(inv_mats, [c7_lift], i8)
    print("Singer-preimage orbit count:", len(c7_orbits))
    assert c7_orbits == [7] * 30

    a4_lifts = [lift(g) for g in dc["a4_gens_7"]]
    a4_orbits = conj_orbit_sizes(inv_mats, a4_lifts, i8)
    print("A4-preimage orbit sizes on 210:", a4_orbits)
    assert sum(a4_orbits) == 210
    assert len(a4_orbits) == 23
    assert len(psl_orbits) + len(c7_orbits) + len(a4_orbits) == 57

    best = None
    cands = []
    for k in range(8):
        v = np.zeros(8, dtype=np.int16), np.zeros(8, dtype=np.int16)
        v[0][k] = 1
        cands.append(v)
    v = np.ones(8, dtype=np.int16), np.zeros(8, dtype=np.int16)
    cands.append(v)
    for _ in range(40):
        re = np.array([rng.randrange(3) for _ in range(8)], dtype=np.int16)
        im = np.array([rng.randrange(3) for _ in range(8)], dtype=np.int16)
        if (re % 3 == 0).all() and (im % 3 == 0).all():
            continue
        cands.append((re, im))
    for v in cands:
        cap = len(best) if best is not None else 1 << 30
        orb = vec_orbit(v, ts, cap)
        if orb is not None and (best is None or len(orb) < len(best)):
            best = orb
    print("smallest vector orbit:", len(best))
    perms = orbit_perms(best, ts)
    ch = pt.Chain(len(best))
    for p in perms:
        ch.add(p)
    assert ch.order() == 10080

    zperm = pt.compose(perms[0], perms[0])
    assert not any(int(zperm[i]) == i for i in range(len(best)))

    degree = len(best)
    lines = [f"12 1 {degree} 6"]
    for p in perms:
        lines.extend(str(int(v) + 1) for v in p)
    text = "\n".join(lines) + "\n"
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "cover2s7-perm.mtx").write_text(text)
    sha = hashlib.sha256(text.encode()).hexdigest()

    report = {
        "seed": SEED,
        "group_order": 10080,
        "downstairs_order": 5040,
        "lift_orders": [gorder(t, i8) for t in ts],
        "central_involution_is_square_of_first_lift": True,
        "order2_noncentral": len(inv_mats),
        "psl32_preimage_orbits_210": psl_orbits,
        "singer_preimage_orbits_210": c7_orbits,
        "a4_preimage_orbits_210": a4_orbits,
        "a4_preimage_orbit_count": len(a4_orbits),
        "rep_count_total": len(psl_orbits) + len(c7_orbits) + len(a4_orbits),
        "perm_degree": degree,
        "fixtures": {"cover2s7-perm.mtx": sha},
    }
    OUT.mkdir(exist_ok=True)
    (OUT / "cover2s7.json").write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    print("report written, degree", degree)


if __name__ == "__main__":
    sys.exit(main())
