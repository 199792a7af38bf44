import itertools

import pytest

from mfc.diagram import (Diagram, DiagramError, NotAdmissible, basic_degrees,
                         canonical_key, classify, classify_component,
                         connected_components, diagram_name, diagram_symbol,
                         diagrams_isomorphic, enumerate_admissible,
                         group_order, has_forbidden_subdiagram, parse_symbol)


def names(diagrams):
    return sorted(diagram_name(d) for d in diagrams)


def test_parse_linear_symbol():
    d = parse_symbol("3[3]3[4]2")
    assert d.orders == (3, 3, 2)
    assert d.edges == ((0, 1, 3), (1, 2, 4))


def test_parse_single_vertex():
    d = parse_symbol("2")
    assert d.orders == (2,) and d.edges == ()
    assert classify(d)[0].name == "Z2"


def test_parse_union():
    d = parse_symbol("2[3]2 + 4")
    comps = connected_components(d)
    assert [classify_component(c).name for c in comps] == ["A2", "Z4"]


def test_parse_q2_means_no_edge():
    d = parse_symbol("3[2]5")
    assert d.edges == ()
    assert names([d]) == ["Z3+Z5"]


def test_parse_errors():
    for bad in ("", "3[3]", "x17", "1[3]2", "2[1]2", "Z1", "G7"):
        with pytest.raises(DiagramError):
            parse_symbol(bad)


def test_components_empty_and_connected():
    assert connected_components(parse_symbol("1")) == []
    assert len(connected_components(parse_symbol("D4"))) == 1


def test_classify_table_rows():
    assert classify_component(parse_symbol("3[4]3")).name == "G5"
    assert classify_component(parse_symbol("3[4]3")).degrees == (6, 12)
    assert classify_component(parse_symbol("2[4]6")).name == "G(6,1,2)"
    assert classify_component(parse_symbol("2[4]6")).degrees == (6, 12)
    assert classify_component(parse_symbol("H3")).degrees == (2, 6, 10)
    assert classify_component(parse_symbol("E6")).degrees == (2, 5, 6, 8, 9, 12)
    assert classify_component(parse_symbol("D4")).degrees == (2, 4, 4, 6)
    assert classify_component(parse_symbol("G(4,1,3)")).degrees == (4, 8, 12)


def test_classify_not_admissible():
    with pytest.raises(NotAdmissible):
        parse_symbol("3[3]3[3]3[3]2")  # odd edge with unequal orders
    with pytest.raises(NotAdmissible):
        classify_component(parse_symbol("5[5]5"))
    with pytest.raises(NotAdmissible):
        classify_component(parse_symbol("2[3]2[3]2[3]2[5]2"))  # H5
    branched = Diagram((3, 3, 3, 3), ((0, 1, 3), (0, 2, 3), (0, 3, 3)))
    with pytest.raises(NotAdmissible):
        classify_component(branched)


def test_classify_reversal_invariance():
    for sym in ("3[3]3[4]2", "2[4]6", "2[3]2[4]2", "4[4]3", "2[3]2[4]3"):
        d = parse_symbol(sym)
        rev = d.relabeled(tuple(reversed(range(d.rank))))
        assert classify_component(d) == classify_component(rev)
        assert diagrams_isomorphic(d, rev)


def test_symbol_roundtrip_up_to_reversal():
    for sym in ("3[3]3[4]2", "2[4]6", "H4", "G25", "2[3]2[3]2+4", "5"):
        d = parse_symbol(sym)
        again = parse_symbol(diagram_symbol(d))
        assert diagrams_isomorphic(d, again)


def test_basic_degrees_and_order():
    assert basic_degrees(parse_symbol("G25")) == (6, 9, 12)
    assert group_order(parse_symbol("G25")) == 648
    assert basic_degrees(parse_symbol("1")) == ()
    assert group_order(parse_symbol("1")) == 1
    assert basic_degrees(parse_symbol("2[3]2 + 4")) == (2, 3, 4)


def test_order_matches_coset_enumeration():
    # classification degrees vs an independent Todd-Coxeter run
    from mfc.group import GroupTable, todd_coxeter
    for sym in ("3[3]3", "2[4]3", "A3", "B3", "H3", "3[4]3", "G25",
                "2[3]2[4]2", "D4"):
        d = parse_symbol(sym)
        t = GroupTable(d, todd_coxeter(d, 20000))
        assert t.order == group_order(d), sym


def test_forbidden_subdiagram_examples():
    assert has_forbidden_subdiagram(parse_symbol("E6"), ["D4", "F4", "H4"])
    for m, n in ((2, 1), (2, 4), (3, 3), (5, 2)):
        sym = "Z%d" % m if n == 1 else "G(%d,1,%d)" % (m, n)
        assert not has_forbidden_subdiagram(parse_symbol(sym),
                                            ["D4", "F4", "H4"])
    assert has_forbidden_subdiagram(parse_symbol("G26"),
                                    ["D4", "F4", "H4", "G25", "G26"])
    assert not has_forbidden_subdiagram(parse_symbol("G26"), ["D4", "F4", "H4"])
    assert has_forbidden_subdiagram(parse_symbol("G32"), ["G25"])
    assert not has_forbidden_subdiagram(parse_symbol("G32"), ["D4", "F4", "H4"])
    assert has_forbidden_subdiagram(parse_symbol("E8"), ["D4"])
    assert has_forbidden_subdiagram(parse_symbol("H4"), ["H4"])
    assert not has_forbidden_subdiagram(parse_symbol("H3"), ["D4", "F4", "H4"])


def test_forbidden_monotone_under_superdiagrams():
    # adding vertices/edges (passing to a superdiagram) never flips true->false
    chain = ["D4", "D5", "D6", "E6", "E7", "E8"]
    fams = ["D4", "F4", "H4"]
    values = [has_forbidden_subdiagram(parse_symbol(s), fams) for s in chain]
    assert values[0] and all(values)
    assert has_forbidden_subdiagram(parse_symbol("D4") + parse_symbol("Z5"), fams)


def test_enumerate_admissible_rank2_order54():
    found = enumerate_admissible(2, 54)
    assert names(found) == sorted(["Z2+Z27", "Z3+Z18", "Z6+Z9", "I2(27)"])
    # independent completeness scan: every admissible order-54 rank-2 group
    # is either Zj x Zk with jk = 54 or I2(27); cross-check by brute force
    brute = set()
    for j in range(2, 55):
        for k in range(j, 55):
            if j * k == 54:
                brute.add("Z%d+Z%d" % (j, k))
    brute.add("I2(27)")
    assert set(names(found)) == brute


def test_enumerate_admissible_irreducible_filter():
    found = enumerate_admissible(2, 72, irreducible_only=True)
    assert names(found) == sorted(["I2(36)", "G5", "G(6,1,2)"])


def test_enumerate_admissible_rank1_and_rank0():
    assert names(enumerate_admissible(1, 5)) == ["Z5"]
    assert enumerate_admissible(0, 1) == [parse_symbol("1")]
    assert enumerate_admissible(0, 2) == []
    assert enumerate_admissible(2, 0) == []


def test_enumerate_contains_handmade_diagrams():
    for sym in ("G26", "2[3]2 + 4", "Z2+Z2+Z2", "G(3,1,3)", "H3 + 2"):
        d = parse_symbol(sym)
        found = enumerate_admissible(d.rank, group_order(d))
        assert any(diagrams_isomorphic(d, x) for x in found), sym


def test_enumerate_deduplicates_by_isomorphism():
    keys = [canonical_key(x) for x in enumerate_admissible(2, 8)]
    assert len(keys) == len(set(keys))
    # 2[4]2 arises both as I2(4) and G(2,1,2): one entry only
    assert names(enumerate_admissible(2, 8)) == sorted(["Z2+Z4", "G(2,1,2)"])


def test_canonical_key_d4_vertex_order_independent():
    d4 = parse_symbol("D4")
    for perm in itertools.permutations(range(4)):
        assert canonical_key(d4.relabeled(perm)) == canonical_key(d4)


def test_degree_table_invariants():
    # d_1 = 2 exactly for Coxeter rows; d_1 < d_2 at rank >= 2
    coxeter = {"A3", "A4", "D4", "H3", "H4", "F4", "E6", "I2(7)", "I2(8)",
               "B3", "G(2,1,5)"}
    shephard = {"G4", "G5", "G6", "G8", "G9", "G10", "G14", "G16", "G17",
                "G18", "G20", "G21", "G25", "G26", "G32", "G(3,1,2)",
                "G(5,1,3)"}
    for sym in coxeter | shephard:
        gid = classify_component(parse_symbol(sym))
        degs = gid.degrees
        assert degs[0] >= 2
        assert (degs[0] == 2) == (sym in coxeter), sym
        if len(degs) >= 2:
            assert degs[0] < degs[1], sym
