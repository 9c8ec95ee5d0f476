"""Permutation-group helpers shared by the oracle scripts.

Permutations are numpy int32 arrays mapping index -> image, composed left
to right: compose(p, q)[x] = q[p[x]].
"""

import numpy as np


def perm(seq):
    return np.asarray(seq, dtype=np.int32)


def compose(p, q):
    return q[p]


def inverse(p):
    r = np.empty_like(p)
    r[p] = np.arange(len(p), dtype=p.dtype)
    return r


def identity(n):
    return np.arange(n, dtype=np.int32)


def is_identity(p):
    return bool((p == np.arange(len(p), dtype=p.dtype)).all())


def key(p):
    return p.tobytes()


def perm_order(p):
    n = 1
    q = p
    while not is_identity(q):
        q = compose(q, p)
        n += 1
    return n


def cycle(n, pts):
    p = identity(n)
    for i in range(len(pts)):
        p[pts[i]] = pts[(i + 1) % len(pts)]
    return p


class Chain:
    """Incremental Schreier-Sims: levels hold explicit generator lists and
    Schreier-vector-free transversals (full permutations, affordable at the
    degrees the oracles use)."""

    def __init__(self, degree):
        self.degree = degree
        self.levels = []  # [base_pt, gens list, {pt: transversal perm}]

    def _rebuild(self, li):
        base, gens, orbit = self.levels[li]
        frontier = list(orbit)
        while frontier:
            nxt = []
            for p in frontier:
                t = orbit[p]
                for g in gens:
                    q = int(g[p])
                    if q not in orbit:
                        orbit[q] = compose(t, g)
                        nxt.append(q)
            frontier = nxt

    def _strip(self, g, frm=0):
        for i in range(frm, len(self.levels)):
            base, gens, orbit = self.levels[i]
            img = int(g[base])
            if img not in orbit:
                return g, i
            g = compose(g, inverse(orbit[img]))
        return g, len(self.levels)

    def _extend(self, g):
        for b in range(self.degree):
            if g[b] != b:
                self.levels.append([b, [], {b: identity(self.degree)}])
                return
        raise AssertionError("identity passed to _extend")

    def add(self, g):
        g = perm(g)
        res, j = self._strip(g)
        if is_identity(res):
            return False
        if j == len(self.levels):
            self._extend(res)
        for l in range(j + 1):
            self.levels[l][1].append(res)
        for l in range(j, -1, -1):
            self._verify(l)
        return True

    def _verify(self, li):
        self._rebuild(li)
        base, gens, orbit = self.levels[li]
        for p in list(orbit):
            tp = orbit[p]
            for g in list(gens):
                s = compose(compose(tp, g), inverse(orbit[int(g[p])]))
                if is_identity(s):
                    continue
                res, j = self._strip(s, li + 1)
                if is_identity(res):
                    continue
                if j == len(self.levels):
                    self._extend(res)
                for l in range(li + 1, j + 1):
                    self.levels[l][1].append(res)
                for l in range(j, li, -1):
                    self._verify(l)

    def order(self):
        n = 1
        for base, gens, orbit in self.levels:
            n *= len(orbit)
        return n

    def contains(self, g):
        res, _ = self._strip(perm(g))
        return is_identity(res)

    def elements(self):
        """Stream every group element as a product of transversal perms."""
        tables = [list(lv[2].values()) for lv in self.levels]

        def walk(li, acc):
            if li < 0:
                yield acc
                return
            for t in tables[li]:
                yield from walk(li - 1, compose(acc, t))

        yield from walk(len(tables) - 1, identity(self.degree))


def group_order(gens):
    gens = [perm(g) for g in gens]
    if not gens:
        return 1
    ch = Chain(len(gens[0]))
    for g in gens:
        ch.add(g)
    return ch.order()


def orbit_of(point, gens):
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = int(g[p])
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def conjugacy_class(x, gens):
    """Closure of {x} under conjugation by the generators; keys are tuples."""
    gens = [perm(g) for g in gens]
    start = perm(x)
    seen = {key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(compose(inverse(g), p), g)
                k = key(q)
                if k not in seen:
                    seen[k] = q
                    nxt.append(q)
        frontier = nxt
    return list(seen.values())


def conj_orbit_count(targets, actors):
    """Orbit sizes of the conjugation action of <actors> on the target list."""
    actors = [perm(a) for a in actors]
    index = {key(perm(t)): i for i, t in enumerate(targets)}
    targets = [perm(t) for t in targets]
    seen = [False] * len(targets)
    sizes = []
    for start in range(len(targets)):
        if seen[start]:
            continue
        seen[start] = True
        frontier = [targets[start]]
        size = 1
        while frontier:
            nxt = []
            for p in frontier:
                for a in actors:
                    q = compose(compose(inverse(a), p), a)
                    i = index[key(q)]
                    if not seen[i]:
                        seen[i] = True
                        size += 1
                        nxt.append(q)
            frontier = nxt
        sizes.append(size)
    return sorted(sizes)


def self_test():
    s7 = [cycle(7, [0, 1]), cycle(7, list(range(7)))]
    assert group_order(s7) == 5040
    a7 = [cycle(7, [0, 1, 2]), cycle(7, list(range(7)))]
    assert group_order(a7) == 2520
    a9 = [cycle(9, [0, 1, 2]), cycle(9, list(range(9)))]
    assert group_order(a9) == 181440
    ch = Chain(7)
    for g in a7:
        ch.add(g)
    assert ch.contains(cycle(7, [0, 1, 2]))
    assert not ch.contains(cycle(7, [0, 1]))
    assert len(conjugacy_class(cycle(7, list(range(7))), s7)) == 720


if __name__ == "__main__":
    self_test()
    print("permtools self_test ok")
