#!/usr/bin/env python3
"""Emit data/elements.script: the element definitions of the source text's
computation sections in script form, with expected orders where the 24-dim
GF(2) oracle run (or the text itself) pins them."""

import pathlib

HERE = pathlib.Path(__file__).resolve().parent
DATA = HERE.parent / "data"

L = []


def e(name, word, tag="co1-exact", order=None):
    suffix = f" order={order}" if order is not None else ""
    L.append(f"{name} = {word}  # {tag}{suffix}")


def blank():
    L.append("")


L.append("#! base a b")
L.append("#! extern T z " + " ".join(f"d{i}" for i in range(1, 13)) + " " +
         " ".join(f"p{i}" for i in range(1, 13)))
blank()

e("c", "ababab^2")
e("d", "ab^2")
e("e", "cdcdcd^2cd", order=22)
e("i0", "e^11", order=2)
e("i1", "i0^(ab)", order=2)
e("i01", "i0i1", order=35)
e("i5", "(i0i1)^7", order=5)
e("i7", "(i0i1)^5", order=7)
e("f", "abababab^2abab^2ab^2", order=33)
e("t1", "f^11", order=3)
e("c66", "(ab^2)^7(ab)^29", order=66)
e("t2", "t1^c66", order=3)
e("c28", "(ab)^19(ab^2)^31", order=28)
e("c24", "ab^2(ab)^28(ab^2)^28(ab)^36", order=24)
e("t3", "t1^c28", order=3)
e("t5", "t1^c24", order=3)
e("c6", "(t2i7^2)^2", order=6)
e("t6", "t2^c6", order=3)
e("ct7", "(t6i7t6i7^2)^3")
e("t7", "((t6i7)^2)^ct7", order=2)
e("t8", "(i0t7)^4(t7i7)^2", order=3)
blank()

e("t3p", "i7t3(i7i7^t3)^3", order=3)
e("t5p", "i7t5(i7i7^t5)^3", order=3)
e("i0p", "i7i0(i7^6i7^i0)^3", order=2)
e("t8p", "i7t8(i7^2i7^t8)^3", order=3)
blank()

e("t9", "(i5t3pt5pi5t3pt5pi5)^3", order=2)
e("t10", "t3pt5pi5^2", order=7)
e("t11", "t10^6t9t10^3", order=3)
e("w", "a^2i7^2a^2i7^4a^2i7^8")
e("wp", "a^2i7^6a^2i7^10a^2i7^12")
e("i8", "(wt10)^7")
e("i10", "(wt10i7^2)^7")
e("c9", "t3^4t5t3^4t5^2t3^2")
blank()

first = ["", "(i0p)^(t3p)"]
e("o0", "t3p^0")
e("o1", "(i0p)^(t3p)")
e("o2", "t3p^2")
e("o3", "t3p^2t5p(t3p^2)^(i0p)")
idx = 10
for g1 in first:
    for g2 in ["", "t3p^2", "t5p^2", "t3p^2t5p"]:
        for g3 in ["", "t11t9", "(t11t9)^2"]:
            word = g1 + g2 + g3
            e(f"o{idx}", word if word else "t3p^0")
            idx += 1
assert idx == 34
for g1 in first:
    for g2 in ["(t3p)^4", "t5p", "t3p^2t5p(t3p^2)^(i0p)"]:
        e(f"o{idx}", g1 + g2)
        idx += 1
assert idx == 40
a4_mid = ["", "(t3p)^4", "(t3p)^2", "t5p", "(t5p)^2", "(t3p)^2t5p",
          "(t3p)^2t5p((t3p)^2)^(i0p)", "t10", "(t3p)^4t10", "(t3p)^2t10"]
for g1 in first:
    for g2 in a4_mid:
        word = g1 + g2
        e(f"o{idx}", word if word else "t3p^0")
        idx += 1
assert idx == 60
for g2 in ["t5pt10", "(t3p)^4t5pt10", "(t3p)^2t5pt10"]:
    e(f"o{idx}", g2)
    idx += 1
assert idx == 63
for k in list(range(4)) + list(range(10, 63)):
    e(f"oi{k}", f"o{k}^-1")
blank()

e("h", "(ab)^34(abab^2)^3(ab)^6", order=2)
e("i", "(ab^2)^35((ababab^2)^2ab)^4(ab^2)^5", order=6)
e("k1", "hihi^2", order=8)
e("k2", "hihihi^2", order=16)
e("k", "(k1k2)^3k2k1k2", order=22)
e("k9", "(k^((ab)^6))^11i0p", order=9)
e("k3", "k9^4(ab)^-6", order=30)
e("k4", "(ab)^37(ab^2)^21(ababab^2)^5(ab^2)^28(ab)^10", order=23)
blank()

e("s1", "i0p(t3pi0p)^3", order=2)
e("ct3pp", "(i5t3pt5pi5)^3", order=7)
e("t3pp", "t3p^ct3pp", order=3)
e("s2", "t5pt3pp", order=3)
e("s3", "s1t8p", order=6)
e("cf1", "(hi)^10(ih)^5", order=30)
e("cf2", "(hi)^18(ih)^11", order=88)
e("f1", "((hi^2)^2)^cf1", order=5)
e("f2", "((hi^2)^2)^cf2", order=5)
e("f4", "f1f2(f1f2f1f2^2)^2", order=11)
e("f5", "(f1f2)^4f2f1f2", order=22)
e("n0", "(f1f2)^8")
for i in range(1, 10):
    e(f"n{i}", f"n0^(f4^{i})" if i > 1 else "n0^f4")
e("s2img", "((f1f2^2)^2)^(f4^8f5^8f4^9)")
e("s3img", "(f1f2f1f2^2)^(f4^5f5^7f4^8f5^7)")
e("s2lift", "n0n2n4n5n6n8n9s2img")
e("s3lift", "n3n4n5n7n8n9s3img")
e("u2", "zd2d5d6d7d9d10d12p3p4p5p6p7p9s2lift", tag="monster-only")
e("u3", "d1d2d3d6d7d8d9d12p1p3p5p8p9p10p12s3lift", tag="monster-only")
e("zp", "z^(k3T^-1k4T^-1)", tag="monster-only")
blank()

e("q1", "t1^((ab)^4(ab^2)^17(ab)^4)", order=3)
e("q2", "t1^((ab)^4(ab^2)^32(ab)^38)", order=3)
e("q3", "(q1q2)^((u3^2q1q2)^2)", tag="monster-only")
e("q4", "(q1q2)^((u3^2q1q2)^3)", tag="monster-only")
e("q5", "(q1q2)^((u3^2q1q2)^5)", tag="monster-only")
e("q6seed", "(q3q4q5^2)^8", tag="monster-only")
e("q6", "q6seed^(q5q4q5q4^2q5^2)", tag="monster-only")
e("q7", "q6^(q4q5q4q5^2)", tag="monster-only")
e("q6p", "u2u3^4q6u2u3^4(u2u3^4)^q6", tag="monster-only")
e("q7p", "u2u3^4q7u2u3^4(u2u3^4)^q7", tag="monster-only")
e("q6pp", "q6p^-1u3^6q6pu3^6", tag="monster-only")
e("q7pp", "q7p^-1u3^6q7pu3^6", tag="monster-only")
e("q1p", "u2u3^4q1u2u3^4(u2u3^4)^q1", tag="monster-only")
e("q2p", "u2u3^4q2u2u3^4(u2u3^4)^q2", tag="monster-only")
e("u5", "u3^2", tag="monster-only")
e("u6", "q1pq2p", tag="monster-only")
e("r1", "(u5u6u5u6^2)^9", tag="monster-only")
for i in range(2, 6):
    e(f"r{i}", f"r1^((u5u6)^{i - 1})" if i > 2 else "r1^(u5u6)",
      tag="monster-only")
for i in range(1, 6):
    e(f"r{i}p", f"(r{i}u3^6)^2", tag="monster-only")
e("q6ppa", "q6pp^(r2pr5p)", tag="monster-only")
e("q6ppb", "q6pp^(r1pr3p)", tag="monster-only")
e("q7ppa", "q7pp^r5p", tag="monster-only")
e("q7ppb", "q7pp^(r1pr2pr3p)", tag="monster-only")
e("q7ppp", "q7pp^(r1pr2pr3p)", tag="monster-only")
e("i7post", "(i7^2)^(k3T^-1k4T^-1)", tag="monster-only")
e("q7home", "q7ppp^(Tk4^-1Tk3^-1)", tag="monster-only")
e("q10", "(t1^4)^((ab)^10(ab^2)^26(ab)^7)", order=3)
e("q11", "(t1^4)^((ab)^18(ab^2)^21(ab)^17)", order=3)
e("q10p", "u2u3^8q10u2u3^8(u2u3^8)^q10", tag="monster-only")
e("q11p", "u2u3^8q11u2u3^8(u2u3^8)^q11", tag="monster-only")
e("u7", "q10pq11p", tag="monster-only")
e("r10", "((u5u7)^3u7u5u7)^21", tag="monster-only")
e("wpp", "r10i7^6r10i7^10r10i7^12", tag="monster-only")
e("i9", "(wppt11^4)^3", tag="monster-only")
e("i9p", "r1^2i9", tag="monster-only")
blank()

e("j0", "a^4u3^6", tag="monster-only")
for n in range(4, 28):
    mm, nn = divmod(n, 7)
    parts = []
    if nn:
        parts.append(f"(q7ppp)^{nn}" if nn > 1 else "q7ppp")
    if mm:
        parts.append(f"((q7ppp)^u2)^{mm}" if mm > 1 else "(q7ppp)^u2")
    e(f"j{n}", f"j0^({''.join(parts)})", tag="monster-only")
blank()

e("m0", "i8", tag="monster-only")
e("m1", "i8^(i7^2)", tag="monster-only")
e("m2", "i8^(i7^4)", tag="monster-only")
e("m3", "m0m1", tag="monster-only")
e("m4", "m0m2", tag="monster-only")
e("m5", "m1m2", tag="monster-only")
e("m6", "m0m1m2", tag="monster-only")
e("case_test", "Tk4^-1Tk3^-1m0k3T^-1k4T^-1j4", tag="monster-only")

DATA.mkdir(exist_ok=True)
(DATA / "elements.script").write_text("\n".join(L) + "\n")
print(f"wrote {len([x for x in L if x and not x.startswith('#!')])} entries")
