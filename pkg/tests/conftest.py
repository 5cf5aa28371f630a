import pytest

from ccakit import (
    build_cayley,
    cartesian_product,
    color_preserving_group,
    f21_noncca_graph,
    make_cyclic,
    make_f21,
    uncolored_aut_group,
)


@pytest.fixture(scope="session")
def f21():
    return make_f21()


@pytest.fixture(scope="session")
def noncca_graph():
    return f21_noncca_graph()


@pytest.fixture(scope="session")
def noncca_ao(noncca_graph):
    return color_preserving_group(noncca_graph)


@pytest.fixture(scope="session")
def noncca_aut(noncca_graph):
    return uncolored_aut_group(noncca_graph)


@pytest.fixture(scope="session")
def product_graph():
    five_cycle = build_cayley(make_cyclic(5), {1, 4})
    return cartesian_product(five_cycle, f21_noncca_graph())


@pytest.fixture(scope="session")
def product_ao(product_graph):
    return color_preserving_group(product_graph)
