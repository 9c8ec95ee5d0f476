"""Diagnostic: order spectrum of the generated matrix group and the
distribution of the first battery word's order over candidate pairs."""

import random
import time
from collections import Counter

import leechco1 as L


def main():
    gens = L.build_generators()
    rng = random.Random(0xD1A6)
    slots = [g.copy() for g in gens] * 2
    acc = L.I24.copy()

    def rand_elt(steps=1):
        nonlocal acc
        for _ in range(steps):
            i = rng.randrange(len(slots))
            j = rng.randrange(len(slots))
            while j == i:
                j = rng.randrange(len(slots))
            slots[i] = L.mmul(slots[i], slots[j])
            acc = L.mmul(acc, slots[i])
        return acc.copy()

    for _ in range(200):
        rand_elt()

    spectrum = Counter()
    invs = []
    threes = []
    t0 = time.time()
    for n in range(4000):
        x = rand_elt(3)
        o = L.morder(x)
        spectrum[o] += 1
        if o % 2 == 0 and len(invs) < 500:
            invs.append(L.mpow(x, o // 2))
        if o % 3 == 0 and len(threes) < 500:
            threes.append(L.mpow(x, o // 3))
    print("element order spectrum over 4000 samples:")
    print(dict(sorted(spectrum.items())))
    print(f"({time.time() - t0:.0f}s)")

    e_orders = Counter()
    ab40 = 0
    tried = 0
    t0 = time.time()
    while ab40 < 400 and tried < 400000:
        tried += 1
        a = invs[rng.randrange(len(invs))]
        b = threes[rng.randrange(len(threes))]
        ab = L.mmul(a, b)
        if L.morder(ab) != 40:
            continue
        ab40 += 1
        ab2 = L.mmul(ab, b)
        c = L.word_chain([ab, ab, ab2])
        d = ab2
        e = L.word_chain([c, d, c, d, c, d, d, c, d])
        e_orders[L.morder(e)] += 1
    print(f"order-40 pairs: {ab40} of {tried} tried ({time.time() - t0:.0f}s)")
    print("battery word order distribution:")
    print(dict(sorted(e_orders.items())))


if __name__ == "__main__":
    main()
