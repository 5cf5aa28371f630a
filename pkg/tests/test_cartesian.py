import pytest

from ccakit.cartesian import (
    aut_product_check,
    cartesian_decompose,
    product_structure_verdict,
    stabilizer_classes,
    strip_block_edges,
)
from ccakit.cayley import build_cayley, cartesian_product, f21_noncca_graph
from ccakit.groups import make_cyclic
from ccakit.perms import BlockSystem, PermGroup
from ccakit.search import are_isomorphic, color_preserving_group


def cycle_graph(n):
    return build_cayley(make_cyclic(n), {1, n - 1})


def fiber_system(n, block_size):
    count = n // block_size
    return BlockSystem.from_blocks(
        n, [range(a * block_size, (a + 1) * block_size) for a in range(count)]
    )


@pytest.fixture(scope="module")
def small_product():
    prod = cartesian_product(cycle_graph(3), cycle_graph(5))
    return prod, color_preserving_group(prod)


def test_stabilizer_classes_on_small_product(small_product):
    prod, ao = small_product
    # over the 5-point fibers the classes are the 3-point fibers
    e = stabilizer_classes(ao, fiber_system(15, 5))
    assert e.block_count == 5 and e.block_size == 3
    assert e.blocks[0] == (0, 5, 10)


def test_stabilizer_classes_need_transitive_group():
    g = PermGroup(4, [(1, 0, 2, 3)])
    with pytest.raises(ValueError):
        stabilizer_classes(g, BlockSystem.from_blocks(4, [[0, 1], [2, 3]]))


def test_strip_block_edges(small_product):
    prod, _ = small_product
    stripped = strip_block_edges(prod, fiber_system(15, 5))
    assert len(stripped.components) == 5
    assert all(len(c) == 3 for c in stripped.components)
    # only cross-fiber edges survive
    assert all(
        v // 5 != u // 5 for u in range(15) for v, _ in stripped.adjacency[u]
    )


def test_decompose_small_product(small_product):
    prod, ao = small_product
    result = cartesian_decompose(prod, ao, fiber_system(15, 5))
    assert result.success
    assert result.phrasings_agree
    assert len(result.g1) == 3 and len(result.g2) == 5
    assert result.factor1.n == 3 and result.factor2.n == 5
    assert result.iso is not None
    data = result.to_json()
    assert data["success"] is True and data["g2"] == [0, 1, 2, 3, 4]


def test_decompose_other_fiber_system(small_product):
    prod, ao = small_product
    # the 3-point fibers are strided: {b, b+5, b+10}
    strided = BlockSystem.from_blocks(15, [[b, b + 5, b + 10] for b in range(5)])
    result = cartesian_decompose(prod, ao, strided)
    assert result.success
    assert len(result.g1) == 5 and len(result.g2) == 3


def test_decompose_fails_on_non_product():
    c9 = cycle_graph(9)
    ao = color_preserving_group(c9)
    blocks = BlockSystem.from_blocks(9, [[0, 3, 6], [1, 4, 7], [2, 5, 8]])
    result = cartesian_decompose(c9, ao, blocks)
    assert not result.success
    assert result.failing_pair is not None
    assert result.factor1 is None
    data = result.to_json()
    assert data["success"] is False and "failing_pair" in data


def test_decompose_input_validation(small_product):
    prod, ao = small_product
    with pytest.raises(ValueError):
        cartesian_decompose(cycle_graph(6), color_preserving_group(cycle_graph(6)),
                            fiber_system(6, 2))  # even order
    with pytest.raises(ValueError):
        cartesian_decompose(prod, PermGroup(15, [tuple(range(15))]),
                            fiber_system(15, 5))  # group misses the translations


def test_decompose_on_big_instance(product_graph, product_ao):
    result = cartesian_decompose(product_graph, product_ao, fiber_system(105, 21))
    assert result.success and result.phrasings_agree
    assert len(result.g1) == 5 and len(result.g2) == 21
    assert result.stab_classes.block_count == 21
    assert result.stab_classes.block_size == 5


def test_product_structure_verdict_on_degenerate_instance(noncca_graph):
    factors = product_structure_verdict(noncca_graph)
    assert factors is not None
    one, canon = factors
    assert one.n == 1 and canon.n == 21
    assert are_isomorphic(canon, f21_noncca_graph(), respect_colors=False)


def test_product_structure_verdict_input_validation():
    with pytest.raises(ValueError):
        product_structure_verdict(cycle_graph(6))  # even order
    with pytest.raises(ValueError):
        product_structure_verdict(cycle_graph(15))  # positive verdict


def test_aut_product_check_coprime_cycles():
    assert aut_product_check(cycle_graph(3), cycle_graph(5))


def test_aut_product_check_validation():
    with pytest.raises(ValueError):
        aut_product_check(cycle_graph(3), cycle_graph(3))  # not coprime
    with pytest.raises(ValueError):
        aut_product_check(cycle_graph(7), f21_noncca_graph())  # over the cap
