"""Color automorphism and isomorphism search by individualization-refinement.

Every operation here reduces to one primitive: permutations of 0..n-1 that
preserve an n x n color matrix entrywise (entry 0 meaning non-adjacent).
The pair-color matrix of a graph, the arc-color matrix of a digraph, the
0/1 matrix of an uncolored graph and the orbit matrix of a 2-closure are
all instances.

The search maintains an ordered partition of the vertices, refined to an
equitable fixpoint: the invariant of a vertex is the multiset of
(color, count) signatures toward every cell, for in- and out-colors when
the matrix is asymmetric.  Cells only split, never merge, and new subcells
are ordered by signature value, so refinement is deterministic.  The
branching rule individualizes the first smallest non-singleton cell and
tries images in ascending vertex order.

The automorphism group is built one base point at a time: at each level the
target cell bounds the orbit of the base point, and for every candidate
image not yet reachable by already-found generators a single constrained
isomorphism search either produces a coset representative or proves the
image impossible.  Discovered generators prune sibling candidates through
the orbit of the base point (weak pruning: only generators fixing the
current prefix pointwise are used).
"""

from __future__ import annotations

from itertools import permutations as iter_permutations
from typing import Callable, Sequence

import numpy as np

from .cayley import ColoredCayleyGraph
from .groups import left_translation, minimal_generating_set
from .perms import Perm, PermGroup, orbit_of_point

__all__ = [
    "color_preserving_group",
    "exact_color_digraph_group",
    "uncolored_aut_group",
    "brute_force_color_perms",
    "brute_force_color_group",
    "are_isomorphic",
    "two_closure",
    "matrix_aut_group",
    "matrix_isomorphism",
    "pair_orbit_matrix",
    "preserves_matrix",
    "color_bijection_between",
]

_BRUTE_FORCE_MAX = 10
_TWO_CLOSURE_MAX_DEGREE = 150

Cells = list[list[int]]


def _prep(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    m = np.ascontiguousarray(matrix, dtype=np.int64)
    mt = np.ascontiguousarray(m.T)
    asym = not np.array_equal(m, mt)
    return m, mt, asym


def _signatures(
    m: np.ndarray, mt: np.ndarray, asym: bool, cell_ids: np.ndarray, ncells: int
) -> np.ndarray:
    """Per-vertex row signatures toward the current cells, sortable as bytes."""
    keys = m * ncells + cell_ids[np.newaxis, :]
    sig = np.sort(keys, axis=1)
    if asym:
        keys_in = mt * ncells + cell_ids[np.newaxis, :]
        sig = np.hstack([sig, np.sort(keys_in, axis=1)])
    return sig


def _cell_ids(cells: Cells, n: int) -> np.ndarray:
    ids = np.empty(n, dtype=np.int64)
    for i, cell in enumerate(cells):
        ids[cell] = i
    return ids


def _refine(m: np.ndarray, mt: np.ndarray, asym: bool, cells: Cells) -> Cells:
    """Split cells by signature until equitable; deterministic subcell order."""
    n = m.shape[0]
    while True:
        sig = _signatures(m, mt, asym, _cell_ids(cells, n), len(cells))
        new_cells: Cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[bytes, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v].tobytes(), []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for key in sorted(groups):
                    new_cells.append(groups[key])
        cells = new_cells
        if not changed:
            return cells


def _refine_pair(
    s1: tuple[np.ndarray, np.ndarray, bool],
    s2: tuple[np.ndarray, np.ndarray, bool],
    cells1: Cells,
    cells2: Cells,
) -> tuple[Cells, Cells] | None:
    """Refine two aligned partitions in lockstep; None if signatures diverge."""
    m1, mt1, asym1 = s1
    m2, mt2, asym2 = s2
    asym = asym1 or asym2
    n1, n2 = m1.shape[0], m2.shape[0]
    while True:
        if len(cells1) != len(cells2):
            return None
        sig1 = _signatures(m1, mt1, asym, _cell_ids(cells1, n1), len(cells1))
        sig2 = _signatures(m2, mt2, asym, _cell_ids(cells2, n2), len(cells2))
        new1: Cells = []
        new2: Cells = []
        changed = False
        for cell1, cell2 in zip(cells1, cells2):
            if len(cell1) != len(cell2):
                return None
            if len(cell1) == 1:
                if sig1[cell1[0]].tobytes() != sig2[cell2[0]].tobytes():
                    return None
                new1.append(cell1)
                new2.append(cell2)
                continue
            g1: dict[bytes, list[int]] = {}
            for v in cell1:
                g1.setdefault(sig1[v].tobytes(), []).append(v)
            g2: dict[bytes, list[int]] = {}
            for v in cell2:
                g2.setdefault(sig2[v].tobytes(), []).append(v)
            if sorted(g1) != sorted(g2):
                return None
            if any(len(g1[k]) != len(g2[k]) for k in g1):
                return None
            if len(g1) > 1:
                changed = True
            for key in sorted(g1):
                new1.append(g1[key])
                new2.append(g2[key])
        cells1, cells2 = new1, new2
        if not changed:
            return cells1, cells2


def _target_cell(cells: Cells) -> int | None:
    """Index of the first smallest non-singleton cell, or None if discrete."""
    best = None
    best_size = None
    for i, cell in enumerate(cells):
        size = len(cell)
        if size > 1 and (best_size is None or size < best_size):
            best, best_size = i, size
    return best


def _individualize(cells: Cells, index: int, v: int) -> Cells:
    cell = cells[index]
    rest = [x for x in cell if x != v]
    return cells[:index] + [[v], rest] + cells[index + 1 :]


def _search_pair(
    s1: tuple[np.ndarray, np.ndarray, bool],
    s2: tuple[np.ndarray, np.ndarray, bool],
    cells1: Cells,
    cells2: Cells,
    accept: Callable[[Perm], bool],
) -> Perm | None:
    refined = _refine_pair(s1, s2, cells1, cells2)
    if refined is None:
        return None
    cells1, cells2 = refined
    t = _target_cell(cells1)
    if t is None:
        n = s1[0].shape[0]
        image = [0] * n
        for c1, c2 in zip(cells1, cells2):
            image[c1[0]] = c2[0]
        perm = tuple(image)
        return perm if accept(perm) else None
    v = cells1[t][0]
    for w in cells2[t]:
        found = _search_pair(
            s1, s2, _individualize(cells1, t, v), _individualize(cells2, t, w), accept
        )
        if found is not None:
            return found
    return None


def preserves_matrix(matrix: np.ndarray, perm: Sequence[int]) -> bool:
    """Whether matrix[p(u), p(v)] == matrix[u, v] for all u, v."""
    p = np.asarray(perm, dtype=np.intp)
    return bool(np.array_equal(matrix[np.ix_(p, p)], matrix))


def _accept_exact(m1: np.ndarray, m2: np.ndarray) -> Callable[[Perm], bool]:
    def accept(perm: Perm) -> bool:
        p = np.asarray(perm, dtype=np.intp)
        return bool(np.array_equal(m2[np.ix_(p, p)], m1))

    return accept


def color_bijection_between(
    m1: np.ndarray, m2: np.ndarray, perm: Sequence[int]
) -> dict[int, int] | None:
    """The color relabeling under which perm carries m1 onto m2, if any.

    Non-edges (0) must map to non-edges; every other color must map to
    exactly one color, injectively.  Returns the color map or None.
    """
    p = np.asarray(perm, dtype=np.intp)
    a = np.asarray(m1, dtype=np.int64).ravel()
    b = np.asarray(m2, dtype=np.int64)[np.ix_(p, p)].ravel()
    if np.any((a == 0) != (b == 0)):
        return None
    pairs = np.unique(np.stack([a, b], axis=1), axis=0)
    if len(np.unique(pairs[:, 0])) != len(pairs):
        return None
    if len(np.unique(pairs[:, 1])) != len(pairs):
        return None
    return {int(x): int(y) for x, y in pairs if x != 0}


def _accept_color_bijection(m1: np.ndarray, m2: np.ndarray) -> Callable[[Perm], bool]:
    def accept(perm: Perm) -> bool:
        return color_bijection_between(m1, m2, perm) is not None

    return accept


def matrix_aut_group(matrix: np.ndarray, seeds: Sequence[Perm] = ()) -> PermGroup:
    """The group of permutations preserving the color matrix entrywise.

    Seeds must already preserve the matrix; they bootstrap orbit pruning.
    """
    m, mt, asym = _prep(matrix)
    n = m.shape[0]
    struct = (m, mt, asym)
    accept = _accept_exact(m, m)
    gens: list[Perm] = []
    for seed in seeds:
        perm = tuple(seed)
        if len(perm) != n:
            raise ValueError("seed degree mismatch")
        if not accept(perm):
            raise ValueError("seed does not preserve the matrix")
        if any(i != x for i, x in enumerate(perm)) and perm not in gens:
            gens.append(perm)
    cells = _refine(m, mt, asym, [list(range(n))])
    prefix: list[int] = []
    while True:
        t = _target_cell(cells)
        if t is None:
            break
        cell = cells[t]
        b = cell[0]
        fixing = [g for g in gens if all(g[p] == p for p in prefix)]
        orbit = set(orbit_of_point(b, fixing))
        for w in cell[1:]:
            if w in orbit:
                continue
            found = _search_pair(
                struct,
                struct,
                _individualize(cells, t, b),
                _individualize(cells, t, w),
                accept,
            )
            if found is not None:
                gens.append(found)
                fixing.append(found)
                orbit = set(orbit_of_point(b, fixing))
        cells = _refine(m, mt, asym, _individualize(cells, t, b))
        prefix.append(b)
    return PermGroup(n, gens)


def matrix_isomorphism(
    m1: np.ndarray, m2: np.ndarray, match_colors: str = "exact"
) -> Perm | None:
    """A vertex bijection carrying matrix m1 onto m2, or None.

    match_colors: "exact" keeps color values fixed, "bijection" allows a
    global color relabeling (discovered greedily at the leaves, with
    refinement driven by color-class sizes so it stays sound).
    """
    if m1.shape != m2.shape:
        return None
    if match_colors == "exact":
        r1, r2 = m1, m2
        accept = _accept_exact(
            np.asarray(m1, dtype=np.int64), np.asarray(m2, dtype=np.int64)
        )
    elif match_colors == "bijection":
        r1 = _bucket_by_class_size(np.asarray(m1, dtype=np.int64))
        r2 = _bucket_by_class_size(np.asarray(m2, dtype=np.int64))
        accept = _accept_color_bijection(
            np.asarray(m1, dtype=np.int64), np.asarray(m2, dtype=np.int64)
        )
    else:
        raise ValueError(f"unknown color matching mode {match_colors!r}")
    s1 = _prep(r1)
    s2 = _prep(r2)
    n = s1[0].shape[0]
    return _search_pair(s1, s2, [list(range(n))], [list(range(n))], accept)


def _bucket_by_class_size(m: np.ndarray) -> np.ndarray:
    """Replace colors by the size rank of their class; 0 stays 0."""
    values, counts = np.unique(m[m != 0], return_counts=True)
    order = sorted(zip(values.tolist(), counts.tolist()), key=lambda vc: (vc[1], vc[0]))
    sizes = sorted({c for _, c in order})
    rank = {size: i + 1 for i, size in enumerate(sizes)}
    out = np.zeros_like(m)
    for value, cnt in order:
        out[m == value] = rank[cnt]
    return out


# -- public graph operations --------------------------------------------------


def _translation_seeds(graph: ColoredCayleyGraph) -> list[Perm]:
    return [
        left_translation(graph.group, g)
        for g in minimal_generating_set(graph.group)
    ]


def color_preserving_group(graph: ColoredCayleyGraph) -> PermGroup:
    """All automorphisms preserving each color class setwise (graph mode)."""
    if graph.digraph_mode:
        raise ValueError("use exact_color_digraph_group for digraph mode")
    return matrix_aut_group(graph.color_matrix, seeds=_translation_seeds(graph))


def exact_color_digraph_group(graph: ColoredCayleyGraph) -> PermGroup:
    """Automorphisms preserving every arc color (digraph mode)."""
    if not graph.digraph_mode:
        raise ValueError("graph is not in digraph mode")
    return matrix_aut_group(graph.color_matrix, seeds=_translation_seeds(graph))


def uncolored_aut_group(graph: ColoredCayleyGraph) -> PermGroup:
    """The full automorphism group, ignoring colors."""
    return matrix_aut_group(graph.uncolored_matrix, seeds=_translation_seeds(graph))


def brute_force_color_perms(graph: ColoredCayleyGraph) -> list[Perm]:
    """Filter all n! permutations by the color-matrix predicate (n <= 10)."""
    n = graph.n
    if n > _BRUTE_FORCE_MAX:
        raise ValueError(f"brute force capped at degree {_BRUTE_FORCE_MAX}")
    m = graph.color_matrix
    perms = np.array(list(iter_permutations(range(n))), dtype=np.int8)
    mask = np.ones(len(perms), dtype=bool)
    for u in range(n):
        for v in range(n):
            mask &= m[perms[:, u], perms[:, v]] == m[u, v]
        if not mask.any():
            break
    return [tuple(int(x) for x in p) for p in perms[mask]]


def brute_force_color_group(graph: ColoredCayleyGraph) -> PermGroup:
    from .perms import permgroup_from_elements

    return permgroup_from_elements(graph.n, brute_force_color_perms(graph))


def are_isomorphic(
    g1: ColoredCayleyGraph, g2: ColoredCayleyGraph, respect_colors: bool
) -> Perm | None:
    """A vertex isomorphism between two graphs, or None.

    With respect_colors, colors must match under some global bijection of
    color ids; otherwise only adjacency matters.
    """
    if g1.n != g2.n:
        raise ValueError("vertex counts differ")
    if g1.digraph_mode != g2.digraph_mode:
        raise ValueError("mixed graph and digraph modes")
    if respect_colors:
        return matrix_isomorphism(g1.color_matrix, g2.color_matrix, "bijection")
    return matrix_isomorphism(g1.uncolored_matrix, g2.uncolored_matrix, "exact")


def pair_orbit_matrix(group: PermGroup) -> np.ndarray:
    """Orbits of the group on ordered pairs, as a color matrix.

    Orbit ids are assigned in lexicographic order of each orbit's smallest
    pair, so diagonal pairs of a transitive group get color 0.
    """
    n = group.degree
    color = np.full((n, n), -1, dtype=np.int64)
    next_id = 0
    for u in range(n):
        for v in range(n):
            if color[u, v] >= 0:
                continue
            stack = [(u, v)]
            color[u, v] = next_id
            while stack:
                x, y = stack.pop()
                for g in group.generators:
                    gx, gy = g[x], g[y]
                    if color[gx, gy] < 0:
                        color[gx, gy] = next_id
                        stack.append((gx, gy))
            next_id += 1
    return color


def two_closure(group: PermGroup) -> PermGroup:
    """The largest group with the same orbits on ordered pairs.

    Computed as the exact-color automorphism group of the pair-orbit matrix.
    """
    if not group.is_transitive():
        raise ValueError("2-closure computed for transitive groups only")
    if group.degree > _TWO_CLOSURE_MAX_DEGREE:
        raise ValueError(f"degree capped at {_TWO_CLOSURE_MAX_DEGREE}")
    matrix = pair_orbit_matrix(group)
    closed = matrix_aut_group(matrix, seeds=group.generators)
    for g in group.generators:
        if not closed.contains(g):
            raise AssertionError("2-closure lost a generator")
    return closed
