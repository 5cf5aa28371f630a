import numpy as np
import pytest

from ccakit.cayley import (
    ConnectionSet,
    build_cayley,
    cartesian_product,
    connection_set_mask,
    connection_set_orbits,
    count_orbits_burnside,
    enumerate_connection_sets,
    f21_noncca_connection_set,
    f21_noncca_graph,
    graph_to_json,
    inverse_pairs,
    is_connected,
    mask_orbit,
    mask_to_connection_set,
    quotient_graph,
)
from ccakit.groups import make_cyclic, make_f21, subgroup_generated


def test_connection_set_validation():
    z5 = make_cyclic(5)
    with pytest.raises(ValueError):
        ConnectionSet(z5, frozenset({0}))  # identity
    with pytest.raises(ValueError):
        ConnectionSet(z5, frozenset({7}))  # out of range
    cs = ConnectionSet(z5, frozenset({1, 4}))
    assert cs.is_inverse_closed()
    assert cs.sorted_members() == (1, 4)
    assert not ConnectionSet(z5, frozenset({1})).is_inverse_closed()


def test_inverse_pairs():
    assert inverse_pairs(make_cyclic(9)) == [(1, 8), (2, 7), (3, 6), (4, 5)]
    z8_pairs = inverse_pairs(make_cyclic(8))
    assert (4,) in z8_pairs  # the involution sits alone
    assert len(z8_pairs) == 4
    assert len(inverse_pairs(make_f21())) == 10


def test_build_cycle_graph():
    z5 = make_cyclic(5)
    g = build_cayley(z5, {1, 4})
    assert g.n == 5 and g.valency == 2
    assert g.edge_count() == 5
    assert is_connected(g)
    # one inverse pair means a single color, keyed by the smaller member
    assert set(g.color_of_pair.values()) == {1}
    m = g.color_matrix
    assert m[0, 1] == m[0, 4] == 2  # stored as 1 + color id
    assert m[0, 2] == 0
    assert np.array_equal(m, m.T)


def test_graph_mode_requires_inverse_closure():
    with pytest.raises(ValueError):
        build_cayley(make_cyclic(5), {1})


def test_digraph_mode():
    g = build_cayley(make_cyclic(5), {1}, digraph_mode=True)
    assert g.valency == 1
    assert g.edge_count() == 5
    m = g.color_matrix
    assert m[0, 1] != 0 and m[1, 0] == 0


def test_connection_set_from_text():
    g = build_cayley(make_f21(), "a,a^-1,ax,(ax)^-1")
    assert g.valency == 4
    assert g.connection.members == f21_noncca_connection_set(make_f21()).members


def test_colors_pair_elements_with_inverses():
    g = f21_noncca_graph()
    grp = g.group
    for s in g.connection.members:
        assert g.color_of(s) == g.color_of(grp.inverse(s))
    assert len(set(g.color_of_pair.values())) == 2


def test_disconnected_detection():
    z6 = make_cyclic(6)
    assert not is_connected(build_cayley(z6, {2, 4}))
    assert is_connected(build_cayley(z6, {1, 5}))


def test_quotient_graph():
    g = f21_noncca_graph()
    members = subgroup_generated(g.group, [g.group.index_of("x")])
    q, coset_map = quotient_graph(g, members)
    assert q.n == 3
    assert len(coset_map) == 21
    assert is_connected(q)


def test_cartesian_product_shape():
    c3 = build_cayley(make_cyclic(3), {1, 2})
    c5 = build_cayley(make_cyclic(5), {1, 4})
    prod = cartesian_product(c3, c5)
    assert prod.n == 15 and prod.valency == 4
    assert is_connected(prod)
    # factor colors stay disjoint
    assert len(set(prod.color_of_pair.values())) == 2
    # vertex a*5+b keeps both factor adjacencies
    m = prod.color_matrix
    assert m[0, 5] != 0 and m[0, 1] != 0 and m[0, 6] == 0


def test_connection_set_orbits_z5():
    z5 = make_cyclic(5)
    orbits = connection_set_orbits(z5)
    # masks over the two pairs {1,4}, {2,3}: the singles fuse, the full set is alone
    assert orbits == [(1, 2), (3, 1)]
    assert count_orbits_burnside(z5) == 2
    assert connection_set_orbits(z5, connected_only=True) == orbits


def test_orbit_counts_agree_for_f21(f21):
    assert len(connection_set_orbits(f21)) == count_orbits_burnside(f21)
    connected = connection_set_orbits(f21, connected_only=True)
    assert len(connected) == count_orbits_burnside(f21, connected_only=True)


def test_mask_roundtrip(f21):
    pairs = inverse_pairs(f21)
    cs = f21_noncca_connection_set(f21)
    mask = connection_set_mask(f21, pairs, cs)
    assert mask_to_connection_set(f21, pairs, mask).members == cs.members
    assert mask in mask_orbit(f21, mask)
    assert len(mask_orbit(f21, mask)) == 21


def test_mask_rejects_broken_pairs(f21):
    pairs = inverse_pairs(f21)
    half = ConnectionSet.__new__(ConnectionSet)
    object.__setattr__(half, "group", f21)
    object.__setattr__(half, "members", frozenset({f21.index_of("a")}))
    with pytest.raises(ValueError):
        connection_set_mask(f21, pairs, half)


def test_enumerate_connection_sets():
    z5 = make_cyclic(5)
    all_sets = list(enumerate_connection_sets(z5))
    assert len(all_sets) == 3
    reps = list(enumerate_connection_sets(z5, up_to_aut=True))
    assert len(reps) == 2
    assert all(cs.is_inverse_closed() for cs in all_sets)


def test_graph_to_json_shape():
    g = build_cayley(make_cyclic(5), {1, 4})
    data = graph_to_json(g)
    assert data["order"] == 5
    assert data["digraph"] is False
    assert data["connection_set"] == [1, 4]
    assert len(data["edges"]) == 10  # both arc directions
