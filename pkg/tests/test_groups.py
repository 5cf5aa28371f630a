import pytest

from ccakit.groups import (
    all_subgroups,
    center,
    direct_product,
    group_automorphisms,
    group_from_json,
    group_from_name,
    group_to_json,
    is_normal,
    is_subgroup,
    left_regular_group,
    left_translation,
    make_cyclic,
    make_dihedral,
    make_f21,
    make_hamiltonian_2group,
    make_q8,
    make_symmetric_table,
    minimal_generating_set,
    parse_elements,
    quotient,
    subgroup_generated,
    subgroup_table,
)


def test_cyclic_arithmetic():
    z6 = make_cyclic(6)
    assert z6.order == 6
    assert z6.mul(4, 5) == 3
    assert z6.inverse(2) == 4
    assert z6.power(2, 5) == 4
    assert z6.order_of(2) == 3
    assert z6.is_abelian


def test_f21_relations():
    g = make_f21()
    assert g.order == 21
    a = g.index_of("a")
    x = g.index_of("x")
    assert g.order_of(a) == 3
    assert g.order_of(x) == 7
    # conjugation by a squares x
    assert g.mul(g.inverse(a), g.mul(x, a)) == g.power(x, 2)
    assert sorted(g.element_orders) == [1] + [3] * 14 + [7] * 6
    assert not g.is_abelian


def test_q8_structure():
    q8 = make_q8()
    assert q8.order == 8
    assert sorted(q8.element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert len(center(q8)) == 2
    i = q8.index_of("i")
    j = q8.index_of("j")
    assert q8.mul(i, i) == q8.index_of("-1")
    assert q8.mul(i, j) != q8.mul(j, i)


def test_dihedral_and_symmetric():
    d4 = make_dihedral(4)
    assert d4.order == 8 and not d4.is_abelian
    s3 = make_symmetric_table(3)
    assert s3.order == 6 and not s3.is_abelian
    assert sorted(s3.element_orders) == [1, 2, 2, 2, 3, 3]


def test_conjugate_convention():
    d4 = make_dihedral(4)
    r = next(g for g in range(8) if d4.order_of(g) == 4)
    s = next(g for g in range(8) if d4.order_of(g) == 2 and g != d4.power(r, 2))
    # conjugate(g, x) is g^-1 x g
    assert d4.conjugate(s, r) == d4.inverse(r)


def test_direct_product():
    p = direct_product(make_cyclic(2), make_cyclic(3))
    assert p.order == 6
    assert p.is_abelian
    assert p.labels[0] == "(e,e)"
    g = p.index_of("(1,1)")
    assert p.order_of(g) == 6


def test_subgroups_of_f21():
    g = make_f21()
    x = g.index_of("x")
    a = g.index_of("a")
    xs = subgroup_generated(g, [x])
    assert len(xs) == 7
    assert is_subgroup(g, xs)
    assert is_normal(g, xs)
    assert not is_normal(g, subgroup_generated(g, [a]))


def test_quotient_of_f21_by_x():
    g = make_f21()
    members = subgroup_generated(g, [g.index_of("x")])
    q, coset_map = quotient(g, members)
    assert q.order == 3
    # the projection is a homomorphism
    for u in range(21):
        for v in range(21):
            assert coset_map[g.mul(u, v)] == q.mul(coset_map[u], coset_map[v])


def test_quotient_rejects_non_normal():
    g = make_f21()
    with pytest.raises(ValueError):
        quotient(g, subgroup_generated(g, [g.index_of("a")]))


def test_subgroup_table():
    g = make_f21()
    members = subgroup_generated(g, [g.index_of("x")])
    sub, elems = subgroup_table(g, members)
    assert sub.order == 7
    assert sorted(elems) == sorted(members)
    assert any(sub.order_of(s) == 7 for s in range(7))


def test_all_subgroups_q8():
    q8 = make_q8()
    subs = all_subgroups(q8)
    assert len(subs) == 6
    assert all(is_normal(q8, s) for s in subs)


def test_minimal_generating_set():
    g = make_f21()
    gens = minimal_generating_set(g)
    assert len(subgroup_generated(g, gens)) == 21
    assert len(gens) == 2
    cube = group_from_name("z2^3")
    assert len(minimal_generating_set(cube)) == 3


def test_automorphism_group_orders():
    assert group_automorphisms(make_cyclic(8)).order() == 4
    assert group_automorphisms(make_q8()).order() == 24
    assert group_automorphisms(group_from_name("z2^3")).order() == 168
    assert group_automorphisms(make_symmetric_table(3)).order() == 6


def test_left_regular_group():
    g = make_f21()
    reg = left_regular_group(g)
    assert reg.order() == 21
    assert reg.is_transitive() and reg.is_semiregular()
    t = left_translation(g, g.index_of("a"))
    assert t[g.identity] == g.index_of("a")
    assert reg.contains(t)


def test_parse_elements():
    g = make_f21()
    got = parse_elements(g, "a,a^-1,ax,(ax)^-1")
    assert len(got) == 4
    assert {g.labels[i] for i in got} == {"a", "a^2", "x^4a", "x^6a^2"}
    with pytest.raises(ValueError):
        parse_elements(g, "b")


def test_group_from_name():
    assert group_from_name("z12").order == 12
    assert group_from_name("q8xz2^2").order == 32
    assert group_from_name("d5").order == 10
    assert group_from_name("s4").order == 24
    for bad in ("", "foo", "zx", "q9"):
        with pytest.raises(ValueError):
            group_from_name(bad)


def test_hamiltonian_2group_builder():
    g = make_hamiltonian_2group(2)
    assert g.order == 32
    assert not g.is_abelian


def test_group_json_roundtrip():
    g = make_q8()
    h = group_from_json(group_to_json(g))
    assert h.order == 8
    assert h.mult == g.mult
    assert h.labels == g.labels
