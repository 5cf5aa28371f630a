"""Cayley graphs with the natural edge coloring by inverse pairs.

Vertices are group element indices.  In graph mode the connection set must
be inverse-closed and the edge between g and gs gets the color of the pair
{s, s^-1}; the color id is the smaller of the two element indices.  In
digraph mode the arc (g, gs) is colored by s itself, so s and s^-1 receive
different colors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .groups import GroupTable, group_automorphisms, parse_elements, subgroup_generated

__all__ = [
    "ConnectionSet",
    "ColoredCayleyGraph",
    "inverse_pairs",
    "build_cayley",
    "is_connected",
    "quotient_graph",
    "cartesian_product",
    "enumerate_connection_sets",
    "connection_set_orbits",
    "count_orbits_burnside",
    "f21_noncca_connection_set",
    "f21_noncca_graph",
    "graph_to_json",
]

_MAX_PAIRS_FOR_ENUMERATION = 24


@dataclass(frozen=True)
class ConnectionSet:
    """A set of non-identity elements used to build a Cayley graph."""

    group: GroupTable
    members: frozenset[int]

    def __post_init__(self) -> None:
        for s in self.members:
            if not 0 <= s < self.group.order:
                raise ValueError(f"element index {s} out of range")
        if self.group.identity in self.members:
            raise ValueError("connection set may not contain the identity")

    def is_inverse_closed(self) -> bool:
        return all(self.group.inv[s] in self.members for s in self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def labels(self) -> tuple[str, ...]:
        return tuple(self.group.labels[s] for s in self.sorted_members())

    def generates_group(self) -> bool:
        return len(subgroup_generated(self.group, self.members)) == self.group.order


def inverse_pairs(group: GroupTable) -> list[tuple[int, ...]]:
    """The pairs {s, s^-1} over non-identity elements, sorted by representative."""
    out: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for s in range(group.order):
        if s == group.identity or s in seen:
            continue
        t = group.inv[s]
        seen.update({s, t})
        out.append((s,) if s == t else (s, t))
    return sorted(out)


@dataclass(frozen=True, eq=False)
class ColoredCayleyGraph:
    """A Cayley graph with its canonical coloring and adjacency."""

    group: GroupTable
    connection: ConnectionSet
    digraph_mode: bool
    color_of_pair: dict[int, int] = field(repr=False)
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def valency(self) -> int:
        return len(self.connection.members)

    def color_of(self, s: int) -> int:
        """The color carried by edges g -- g*s."""
        if self.digraph_mode:
            return s
        return min(s, self.group.inv[s])

    @cached_property
    def color_matrix(self) -> np.ndarray:
        """n x n matrix: 0 for non-adjacent, otherwise 1 + color id."""
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for u, nbrs in enumerate(self.adjacency):
            for v, c in nbrs:
                m[u, v] = c + 1
        m.setflags(write=False)
        return m

    @cached_property
    def uncolored_matrix(self) -> np.ndarray:
        m = (self.color_matrix != 0).astype(np.int64)
        m.setflags(write=False)
        return m

    def color_classes(self) -> dict[int, list[tuple[int, int]]]:
        """Arcs grouped by color (each undirected edge appears twice)."""
        out: dict[int, list[tuple[int, int]]] = {}
        for u, nbrs in enumerate(self.adjacency):
            for v, c in nbrs:
                out.setdefault(c, []).append((u, v))
        return out

    def edge_count(self) -> int:
        arcs = sum(len(nbrs) for nbrs in self.adjacency)
        if self.digraph_mode:
            return arcs
        return arcs // 2

    def __repr__(self) -> str:
        kind = "digraph" if self.digraph_mode else "graph"
        return (
            f"ColoredCayleyGraph({self.group.name}, {kind}, "
            f"S={list(self.connection.labels())})"
        )


def build_cayley(
    group: GroupTable,
    connection: ConnectionSet | Iterable[int] | str,
    digraph_mode: bool = False,
) -> ColoredCayleyGraph:
    """Build the colored Cayley graph of a connection set.

    Graph mode requires an inverse-closed set; digraph mode accepts any set
    of non-identity elements and colors arc (g, gs) by s.
    """
    if isinstance(connection, str):
        connection = parse_elements(group, connection)
    if not isinstance(connection, ConnectionSet):
        connection = ConnectionSet(group, frozenset(connection))
    if connection.group is not group and connection.group.mult != group.mult:
        raise ValueError("connection set belongs to a different group")
    if not digraph_mode and not connection.is_inverse_closed():
        missing = sorted(
            s for s in connection.members if group.inv[s] not in connection.members
        )
        raise ValueError(
            f"graph mode needs an inverse-closed set; missing inverses of "
            f"{[group.labels[s] for s in missing]}"
        )
    colors: dict[int, int] = {}
    for s in sorted(connection.members):
        rep = s if digraph_mode else min(s, group.inv[s])
        colors.setdefault(rep, rep)
    adjacency: list[tuple[tuple[int, int], ...]] = []
    members = connection.sorted_members()
    for g in range(group.order):
        row = []
        for s in members:
            rep = s if digraph_mode else min(s, group.inv[s])
            row.append((group.mul(g, s), colors[rep]))
        adjacency.append(tuple(row))
    return ColoredCayleyGraph(group, connection, digraph_mode, colors, tuple(adjacency))


def is_connected(graph: ColoredCayleyGraph) -> bool:
    """Connectivity as an undirected graph: the set must generate the group."""
    reach = subgroup_generated(graph.group, graph.connection.members)
    return len(reach) == graph.n


def quotient_graph(
    graph: ColoredCayleyGraph, members: Iterable[int]
) -> tuple[ColoredCayleyGraph, tuple[int, ...]]:
    """The Cayley graph of G/N on the image of S, dropping loops.

    Returns the quotient graph and the coset map; vertex i of the quotient
    is coset i of the quotient table.
    """
    from .groups import quotient as group_quotient

    qtable, coset_map = group_quotient(graph.group, members)
    image = {coset_map[s] for s in graph.connection.members}
    image.discard(qtable.identity)
    q = build_cayley(qtable, image, digraph_mode=graph.digraph_mode)
    return q, coset_map


def cartesian_product(
    g1: ColoredCayleyGraph, g2: ColoredCayleyGraph
) -> ColoredCayleyGraph:
    """Cartesian product as the Cayley graph of the direct product group.

    The connection set is the union of both sets embedded in the product, so
    factor colors stay disjoint.
    """
    from .groups import direct_product

    if g1.digraph_mode or g2.digraph_mode:
        raise ValueError("cartesian product is defined for graph mode")
    prod = direct_product(g1.group, g2.group)
    m = g2.group.order
    members = {s * m for s in g1.connection.members} | set(g2.connection.members)
    return build_cayley(prod, members)


def _pair_perm_from_automorphism(
    group: GroupTable, pairs: Sequence[tuple[int, ...]], auto: Sequence[int]
) -> tuple[int, ...]:
    index = {p[0]: i for i, p in enumerate(pairs)}
    image = []
    for p in pairs:
        s = auto[p[0]]
        rep = min(s, group.inv[s])
        image.append(index[rep])
    return tuple(image)


def _pair_mask_perms(group: GroupTable) -> list[tuple[int, ...]]:
    pairs = inverse_pairs(group)
    auts = group_automorphisms(group)
    perms = {
        _pair_perm_from_automorphism(group, pairs, a)
        for a in auts.elements(limit=100_000)
    }
    return sorted(perms)


def _apply_pair_perm(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << j
    return out


def connection_set_orbits(
    group: GroupTable, connected_only: bool = False
) -> list[tuple[int, int]]:
    """Orbit representatives of nonempty inverse-closed sets under Aut(G).

    Returns (mask, orbit size) pairs where mask selects inverse pairs; only
    lexicographically least masks are reported, ascending.
    """
    pairs = inverse_pairs(group)
    if len(pairs) > _MAX_PAIRS_FOR_ENUMERATION:
        raise ValueError(f"too many inverse pairs ({len(pairs)}) to enumerate")
    perms = _pair_mask_perms(group)
    out: list[tuple[int, int]] = []
    for mask in range(1, 1 << len(pairs)):
        orbit = {_apply_pair_perm(mask, p) for p in perms}
        if min(orbit) != mask:
            continue
        if connected_only and not _mask_generates(group, pairs, mask):
            continue
        out.append((mask, len(orbit)))
    return out


def mask_to_connection_set(
    group: GroupTable, pairs: Sequence[tuple[int, ...]], mask: int
) -> ConnectionSet:
    members: set[int] = set()
    for i, p in enumerate(pairs):
        if mask >> i & 1:
            members.update(p)
    return ConnectionSet(group, frozenset(members))


def connection_set_mask(
    group: GroupTable, pairs: Sequence[tuple[int, ...]], connection: ConnectionSet
) -> int:
    mask = 0
    for i, p in enumerate(pairs):
        if p[0] in connection.members:
            mask |= 1 << i
    if mask_to_connection_set(group, pairs, mask).members != connection.members:
        raise ValueError("connection set is not a union of inverse pairs")
    return mask


def mask_orbit(group: GroupTable, mask: int) -> list[int]:
    """All masks in the Aut(G)-orbit of the given pair mask, ascending."""
    return sorted({_apply_pair_perm(mask, p) for p in _pair_mask_perms(group)})


def _mask_generates(
    group: GroupTable, pairs: Sequence[tuple[int, ...]], mask: int
) -> bool:
    gens = [p[0] for i, p in enumerate(pairs) if mask >> i & 1]
    return len(subgroup_generated(group, gens)) == group.order


def enumerate_connection_sets(
    group: GroupTable, connected_only: bool = False, up_to_aut: bool = False
) -> Iterator[ConnectionSet]:
    """Yield nonempty inverse-closed connection sets as mask order ascends."""
    pairs = inverse_pairs(group)
    if len(pairs) > _MAX_PAIRS_FOR_ENUMERATION:
        raise ValueError(f"too many inverse pairs ({len(pairs)}) to enumerate")
    if up_to_aut:
        for mask, _ in connection_set_orbits(group, connected_only):
            yield mask_to_connection_set(group, pairs, mask)
        return
    for mask in range(1, 1 << len(pairs)):
        if connected_only and not _mask_generates(group, pairs, mask):
            continue
        yield mask_to_connection_set(group, pairs, mask)


def count_orbits_burnside(group: GroupTable, connected_only: bool = False) -> int:
    """Independent orbit count: average number of fixed masks over Aut(G)."""
    pairs = inverse_pairs(group)
    if len(pairs) > _MAX_PAIRS_FOR_ENUMERATION:
        raise ValueError(f"too many inverse pairs ({len(pairs)}) to enumerate")
    eligible = [
        mask
        for mask in range(1, 1 << len(pairs))
        if not connected_only or _mask_generates(group, pairs, mask)
    ]
    # All automorphisms, not just distinct pair actions, must be averaged.
    auts = group_automorphisms(group)
    total = 0
    for a in auts.elements(limit=100_000):
        perm = _pair_perm_from_automorphism(group, pairs, a)
        total += sum(1 for mask in eligible if _apply_pair_perm(mask, perm) == mask)
    count, rem = divmod(total, auts.order())
    if rem:
        raise AssertionError("orbit count is not an integer")
    return count


def f21_noncca_connection_set(group: GroupTable) -> ConnectionSet:
    """The connection set {a, a^-1, ax, (ax)^-1} on a table built by make_f21."""
    members = parse_elements(group, "a,a^-1,ax,(ax)^-1")
    return ConnectionSet(group, frozenset(members))


def f21_noncca_graph() -> ColoredCayleyGraph:
    """The order-21 connected graph whose color group is not all affine."""
    from .groups import make_f21

    group = make_f21()
    return build_cayley(group, f21_noncca_connection_set(group))


def graph_to_json(graph: ColoredCayleyGraph) -> dict:
    return {
        "group": graph.group.name,
        "order": graph.n,
        "digraph": graph.digraph_mode,
        "connection_set": list(graph.connection.sorted_members()),
        "connection_labels": list(graph.connection.labels()),
        "edges": sorted(
            (u, v, c) for u, nbrs in enumerate(graph.adjacency) for v, c in nbrs
        ),
    }
