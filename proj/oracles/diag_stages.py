"""Diagnostic: for pairs passing the first two filters, where does the
battery bail out?"""

import random
from collections import Counter

import leechco1 as L


def main():
    gens = L.build_generators()
    rng = random.Random(0xD1A7)
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

    invs = []
    threes = []
    while len(invs) < 500 or len(threes) < 500:
        x = rand_elt(3)
        o = L.morder(x)
        if o % 2 == 0 and len(invs) < 500:
            invs.append(L.mpow(x, o // 2))
        if o % 3 == 0 and len(threes) < 500:
            threes.append(L.mpow(x, o // 3))

    last_keys = Counter()
    details = Counter()
    hits = 0
    tried = 0
    while hits < 60 and tried < 2000000:
        tried += 1
        a = invs[rng.randrange(len(invs))]
        b = threes[rng.randrange(len(threes))]
        if L.morder(L.mmul(a, b)) != 40:
            continue
        fast, elts = L.Words(a, b).run_fast()
        if fast["order_e"] != 22:
            continue
        hits += 1
        if elts is not None:
            last_keys["PASS"] += 1
            details["PASS"] += 1
            continue
        keys = list(fast.keys())
        last = keys[-1]
        last_keys[last] += 1
        if last == "order_conj24":
            details[f"triple={fast['order_conj66']},{fast['order_conj28']},{fast['order_conj24']}"] += 1
        else:
            details[f"{last}={fast[last]}"] += 1
    print(f"e22 candidates: {hits} of {tried} pairs")
    print("bail stage:", dict(last_keys))
    print("bail detail:", dict(details))


if __name__ == "__main__":
    main()
