#!/usr/bin/env python3
"""Emit data/claims.json: the checked-in table of expected values for the
scenario harness, one row per claim, each with an anchor (section + own-words
descriptor), a provenance class, and a typed expected value."""

import json
import pathlib
import re

HERE = pathlib.Path(__file__).resolve().parent
DATA = HERE.parent / "data"
OUT = HERE / "out"

co1 = json.loads((OUT / "leechco1.json").read_text())
a7 = json.loads((OUT / "a7gen.json").read_text())
dc = json.loads((OUT / "derive_counts.json").read_text())
cover = json.loads((OUT / "cover2s7.json").read_text())
psl = json.loads((OUT / "psl28.json").read_text())

STATED = {
    "e", "i0", "i01", "i5", "i7", "f", "t1", "c66", "c28", "c24", "c6",
    "t7", "t8", "k", "k9", "ct3pp", "f1", "f2", "f4", "cf1", "cf2",
    "q1", "q2", "q10", "q11",
}
DIRECT = {"i1", "t2", "t3", "t5", "t6", "t3pp"}

QUOTES = {
    "e": "word built first from the two base generators, required to have "
         "order 22 so that its 11th power lies in the wanted involution class",
    "i01": "product of the two seed involutions, required to have order 35 "
           "so that its powers give commuting elements of orders 5 and 7",
    "f": "word found by searching for order 33, whose 11th power is the "
         "first order-3 representative",
    "c66": "conjugator located during the commuting-element search; its "
           "recorded ambient order is 66 and the 24-dimensional image "
           "realizes the divisor 33",
    "c28": "conjugator of recorded order 28 giving the second commuting "
           "order-3 element",
    "c24": "conjugator of recorded order 24 giving the third commuting "
           "order-3 element",
    "c6": "conjugator of recorded order 6 used inside the rank-2 subgroup "
          "search",
    "cf1": "conjugator whose recorded order 30 is measured in the big group; "
           "the 24-dimensional image has order 15",
    "cf2": "conjugator whose recorded order 88 is measured in the big group; "
           "the 24-dimensional image has order 22",
    "f5": "element named with order 11 in the degree-12 quotient; the "
          "faithful 24-dimensional image has order 22, which the table "
          "stores to keep the check exact",
    "f4": "element of order 11 in the degree-12 quotient, and the same "
          "order holds in the 24-dimensional image",
    "k": "change-of-coordinates word required to have order 22 in the "
         "quotient so its 11th power is a class-2C representative",
    "k9": "product required to have order 9 modulo the centre before its "
          "fourth power is used as a conjugator",
}

SECTION = {}
for name in ("c", "d", "e", "i0", "i1", "i01", "i5", "i7", "f", "t1", "c66",
             "t2", "c28", "c24", "t3", "t5", "c6", "t6", "ct7", "t7", "t8"):
    SECTION[name] = "3"
for name in ("t3p", "t5p", "i0p", "t8p"):
    SECTION[name] = "4"
for name in ("t9", "t10", "t11", "w", "wp", "i8", "i10", "c9"):
    SECTION[name] = "5"
for name in ("h", "i", "k1", "k2", "k", "k9", "k3", "k4"):
    SECTION[name] = "7"
for name in ("s1", "ct3pp", "t3pp", "s2", "s3", "cf1", "cf2", "f1", "f2",
             "f4", "f5"):
    SECTION[name] = "8"
for name in ("q1", "q2", "q10", "q11"):
    SECTION[name] = "9"


def expected_int(v):
    return {"type": "int", "value": int(v)}


def expected_multiset(vs):
    return {"type": "multiset", "value": sorted(int(v) for v in vs)}


def expected_bool(v):
    return {"type": "bool", "value": bool(v)}


def expected_poly(mask):
    return {"type": "poly", "value": int(mask)}


def expected_polyset(masks):
    return {"type": "poly-multiset", "value": sorted(int(m) for m in masks)}


claims = []


def add(cid, scenario, section, quote, provenance, expected):
    assert quote, cid
    claims.append({
        "id": cid,
        "scenario": scenario,
        "section": section,
        "quote": quote,
        "provenance": provenance,
        "expected": expected,
    })


add("s0.identity", "S0", "3",
    "a generator multiplied by its inverse has order 1", "direct",
    expected_int(1))

AMBIENT = {"c66": 33, "cf1": 15, "cf2": 22}

entry_re = re.compile(r"^(\S+) = .*# (co1-exact|monster-only)(?: order=(\d+))?$")
for line in (DATA / "elements.script").read_text().splitlines():
    m = entry_re.match(line)
    if not m or not m.group(3):
        continue
    name, order = m.group(1), int(m.group(3))
    order = AMBIENT.get(name, order)
    prov = "stated" if name in STATED else (
        "direct" if name in DIRECT else "derived")
    quote = QUOTES.get(
        name, f"expected order of {name}, frozen from the generator-battery "
              "measurement on the shipped 24-dimensional generators")
    add(f"s0.order.{name}", "S0", SECTION.get(name, "3"), quote, prov,
        expected_int(order))

add("s1.minpoly", "S1", "5",
    "the acting order-7 matrix has the degree-6 all-ones minimal polynomial",
    "stated", expected_poly(0b1111111))
add("s1.factors", "S1", "5",
    "that polynomial splits over GF(2) into the two irreducible cubics",
    "stated", expected_polyset([0b1011, 0b1101]))
add("s1.split.dims", "S1", "2",
    "the 24-dimensional module splits as two 12-dimensional homogeneous "
    "components, four copies of each 3-dimensional constituent",
    "stated", expected_multiset([12, 12]))
add("s1.split.invariant", "S1", "5",
    "each component is carried to itself by the acting matrix", "derived",
    expected_bool(True))
add("s1.control.dims", "S1", "5",
    "control case: the degree-6 companion matrix of the same polynomial "
    "splits as 3 plus 3",
    "derived", expected_multiset(dc["companion_control_split"]))

add("s2.points", "S2", "2",
    "the 4-dimensional GF(8) module has 585 one-dimensional subspaces",
    "stated", expected_int(585))
add("s2.census.co1.comp0", "S2", "2",
    "line-orbit census on the first homogeneous component, rebased to GF(8)",
    "stated", expected_multiset([15, 210, 360]))
add("s2.census.co1.comp1", "S2", "2",
    "line-orbit census on the second homogeneous component, rebased to GF(8)",
    "stated", expected_multiset([15, 210, 360]))
add("s2.census.alt7", "S2", "2",
    "line-orbit census for the directly shipped degree-4 GF(2) generator "
    "pair, extended to GF(8)",
    "stated", expected_multiset(a7["census_585"]))
add("s2.image.co1", "S2", "2",
    "the three restricted words generate an image of order 2520 on the lines",
    "stated", expected_int(2520))
add("s2.image.alt7", "S2", "2",
    "the shipped degree-4 pair generates an image of order 2520 on the lines",
    "stated", expected_int(a7["image_order_585"]))
add("s2.stab.orders", "S2", "2",
    "one point stabilizer from each orbit has order 168, 12 and 7 "
    "respectively",
    "stated", expected_multiset(a7["stabilizer_orders"]))
add("s2.stab168.perfect", "S2", "2",
    "the order-168 stabilizer equals its own derived subgroup", "derived",
    expected_bool(True))
add("s2.paths.agree", "S2", "2",
    "every available data path reports the same orbit-size multiset",
    "derived", expected_bool(True))

add("s3.base.involutions", "S3", "6",
    "the degree-7 alternating group has 105 triple-transposition involutions",
    "direct", expected_int(105))
add("s3.base.psl.orbits", "S3", "6",
    "orbit sizes of the order-168 stabilizer on the 105 involutions, "
    "computed exhaustively; these are the downstairs sizes underneath the "
    "doubled upstairs census",
    "derived", expected_multiset(dc["psl32_orbits_105"]))
add("s3.base.c7.orbits", "S3", "6",
    "the order-7 stabilizer splits the 105 involutions into 15 orbits of "
    "length 7",
    "derived", expected_multiset(dc["singer_orbits_105"]))
add("s3.base.a4.orbits", "S3", "6",
    "orbit sizes of the chosen two-point-stabilizer copy of the order-12 "
    "group on the 105 involutions",
    "derived", expected_multiset(dc["a4_orbits_105"]))
add("s3.base.a4.count", "S3", "6",
    "that order-12 group has 13 orbits downstairs", "derived",
    expected_int(dc["a4_orbit_count"]))
add("s3.cover.class210", "S3", "6",
    "the double cover holds 210 noncentral involutions over the "
    "triple-transposition class",
    "stated", expected_int(cover["order2_noncentral"]))
add("s3.cover.psl.orbits", "S3", "6",
    "the order-168 stabilizer has orbits of lengths 14, 56, 56 and 84 on "
    "those 210",
    "stated", expected_multiset(cover["psl32_preimage_orbits_210"]))
add("s3.cover.c7.orbits", "S3", "6",
    "the order-7 stabilizer gives 30 orbits of length 7 upstairs",
    "stated", expected_multiset(cover["singer_preimage_orbits_210"]))
add("s3.cover.a4.count", "S3", "6",
    "the order-12 stabilizer gives 20 plus 3 orbits upstairs",
    "stated", expected_int(cover["a4_preimage_orbit_count"]))
add("s3.cover.reps", "S3", "6",
    "orbit representatives total 4 plus 30 plus 23, the 57 conjugating "
    "elements",
    "stated", expected_int(cover["rep_count_total"]))

add("s4.group.order", "S4", "11",
    "the simple group acting on the 9-point projective line has order 504",
    "direct", expected_int(psl["group_order"]))
add("s4.borel.order", "S4", "11",
    "the point stabilizer 2^3:7 has order 56", "direct",
    expected_int(psl["borel_order"]))
add("s4.inverting.group", "S4", "11",
    "exactly 7 involutions in the group invert the chosen order-7 element",
    "derived", expected_int(psl["inverting_involutions_group"]))
add("s4.inverting.a9", "S4", "11",
    "the full degree-9 alternating group contains no further inverting "
    "involutions: the exhaustive stream finds the same 7",
    "derived", expected_int(psl["inverting_involutions_a9"]))
add("s4.hits", "S4", "11",
    "for each inverting involution exactly one nontrivial unipotent element "
    "makes a product of order 3",
    "derived", expected_multiset(psl["order3_hits_per_involution"]))
add("s4.criterion.group", "S4", "11",
    "inside the 504-group: every inverting involution has an order-3 "
    "product partner and generates the whole group with the Borel",
    "derived", expected_bool(psl["criterion_inside_group"]))
add("s4.criterion.a9", "S4", "11",
    "over the whole degree-9 alternating group the order-3 product "
    "condition holds exactly when the generated subgroup has order 504",
    "derived", expected_bool(psl["criterion_over_a9"]))
add("s4.a9.scanned", "S4", "11",
    "the exhaustive sweep streams all 181440 even permutations", "direct",
    expected_int(psl["a9_elements_scanned"]))

seen = set()
for c in claims:
    assert c["id"] not in seen
    seen.add(c["id"])

doc = {"schema": "amalgamkit-claims-1", "claims": claims}
(DATA / "claims.json").write_text(json.dumps(doc, indent=2) + "\n")
print(f"wrote {len(claims)} claims")
