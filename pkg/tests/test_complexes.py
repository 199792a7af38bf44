import pytest

from mfc.complexes import (SimplexCapExceeded, TypedComplex, export_complex,
                           import_complex, join, link, milnor_fiber_complex,
                           monomial_flag_complex)
from mfc.diagram import group_order, parse_symbol
from mfc.group import enumerate_group
from mfc.isomorphism import find_isomorphism


def build(sym, **kw):
    t = enumerate_group(parse_symbol(sym))
    return (t,) + milnor_fiber_complex(t, **kw)


@pytest.fixture(scope="module")
def a3():
    return build("A3")


def test_a3_f_vector(a3):
    _t, cx, _act = a3
    assert cx.f_vector() == (14, 36, 24)
    assert cx.euler_characteristic() == 2


def test_g312_shape():
    _t, cx, _act = build("G(3,1,2)")
    assert cx.f_vector() == (15, 18)
    assert [cx.vertex_types.count(k) for k in (0, 1)] == [6, 9]


def test_rank1_complex():
    _t, cx, _act = build("Z5")
    assert cx.f_vector() == (5,)
    assert cx.dim == 0


def test_trivial_group_complex():
    _t, cx, _act = build("1")
    assert cx.dim == -1 and cx.f_vector() == ()


def test_chambers_biject_with_group():
    for sym in ("A3", "G(3,1,2)", "H3", "2[3]2 + 4", "G25"):
        t, cx, _act = build(sym)
        assert len(cx.simplices(cx.dim)) == t.order == group_order(t.diagram)


def test_chamber_adjacency_connected():
    # consecutive chambers sharing a codimension-1 face connect everything
    for sym in ("A3", "G(3,1,2)", "2[3]2 + 4"):
        _t, cx, _act = build(sym)
        top = cx.simplices(cx.dim)
        index = {s: i for i, s in enumerate(top)}
        panels = {}
        for s in top:
            for v in s:
                panels.setdefault(tuple(x for x in s if x != v), []).append(index[s])
        parent = list(range(len(top)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for members in panels.values():
            for other in members[1:]:
                parent[find(other)] = find(members[0])
        assert len({find(i) for i in range(len(top))}) == 1, sym


def test_action_type_preserving_and_simply_transitive():
    for sym in ("A3", "G(3,1,2)", "3[3]3"):
        t, cx, act = build(sym)
        chambers = set(cx.simplices(cx.dim))
        for i in range(t.ngens):
            perm = act.gen_vertex_perms[i]
            for v in range(cx.n_vertices):
                assert cx.vertex_types[perm[v]] == cx.vertex_types[v]
            assert {act.apply(perm, s) for s in chambers} == chambers
        # nonidentity elements move every chamber (simple transitivity)
        for g in range(1, min(t.order, 8)):
            perm = act.vertex_perm(g)
            assert all(act.apply(perm, s) != s for s in chambers), (sym, g)


def test_join_with_trivial_is_identity():
    _t, cx, _act = build("2[3]2")
    _t2, triv, _a2 = build("1")
    j = join(cx, triv)
    assert j.f_vector() == cx.f_vector()
    assert find_isomorphism(j, cx) is not None


def test_join_square():
    _t, a1, _ = build("A1")
    assert join(a1, a1).f_vector() == (4, 4)


def test_join_matches_union_diagram():
    u = build("2[3]2 + 3")[1]
    j = join(build("A2")[1], build("Z3")[1])
    iso = find_isomorphism(j, u, respect_types=True)
    assert iso is not None and iso.type_map is not None


def test_link_trivial_cases(a3):
    _t, cx, _act = a3
    assert link(cx, ()) is cx
    chamber = cx.simplices(cx.dim)[0]
    assert link(cx, chamber).dim == -1
    with pytest.raises(KeyError):
        link(cx, (0, 1, 2, 3, 4))


def test_link_of_vertex_is_parabolic_complex():
    # link of a type-r vertex is the complex of the
    # parabolic on the remaining generators, type-respectingly
    for sym in ("A3", "G(3,1,2)", "G26"):
        d = parse_symbol(sym)
        t, cx, _act = build(sym)
        for r in range(d.rank):
            v = cx.vertex_types.index(r)
            sub = d.induced([x for x in range(d.rank) if x != r])
            model = milnor_fiber_complex(enumerate_group(sub))[0]
            iso = find_isomorphism(link(cx, (v,)), model, respect_types=True)
            assert iso is not None, (sym, r)


def test_monomial_flag_examples():
    fc, _p = monomial_flag_complex(3, 2)
    cx = build("G(3,1,2)")[1]
    assert find_isomorphism(fc, cx, respect_types=True) is not None
    fc, _p = monomial_flag_complex(2, 2)
    assert fc.f_vector() == (8, 8)
    fc, _p = monomial_flag_complex(5, 1)
    assert fc.f_vector() == (5,)
    with pytest.raises(ValueError):
        monomial_flag_complex(1, 2)


def test_simplex_cap():
    t = enumerate_group(parse_symbol("H3"))
    with pytest.raises(SimplexCapExceeded):
        milnor_fiber_complex(t, simplex_cap=100)


def test_export_import_roundtrip(tmp_path, a3):
    _t, cx, _act = a3
    path = str(tmp_path / "a3.mfc")
    export_complex(cx, path)
    back = import_complex(path)
    assert back.f_vector() == cx.f_vector()
    assert back.vertex_types == cx.vertex_types
    assert back.by_dim == cx.by_dim


def test_export_import_tagged_types(tmp_path):
    j = join(build("A1")[1], build("Z3")[1])
    path = str(tmp_path / "join.mfc")
    export_complex(j, path)
    back = import_complex(path)
    assert back.vertex_types == j.vertex_types


def test_from_facets_closes_faces():
    c = TypedComplex.from_facets([0, 1, 2], [(0, 1, 2)])
    assert c.f_vector() == (3, 3, 1)
    assert c.contains(())
    assert c.chambers() == ((0, 1, 2),)
