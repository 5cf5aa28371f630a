"""Affine maps, CCA verdicts, and the complete-graph criterion.

A permutation of the group is affine when it is a left translation composed
with a table automorphism.  A connected Cayley graph whose color-preserving
automorphisms are all affine gets a positive verdict; a group gets one when
every connected Cayley graph of it does.  Two independent criteria are
computed for every graph and must agree: normality of the left-translation
subgroup inside the color group, and the per-generator affinity test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cayley import (
    ColoredCayleyGraph,
    ConnectionSet,
    build_cayley,
    connection_set_mask,
    enumerate_connection_sets,
    inverse_pairs,
    is_connected,
    mask_orbit,
    mask_to_connection_set,
)
from .groups import GroupTable, all_subgroups, is_normal, left_regular_group
from .perms import (
    Perm,
    PermGroup,
    all_block_systems,
    is_normal_subgroup,
    pmul,
)
from .search import color_preserving_group, preserves_matrix

__all__ = [
    "CcaVerdict",
    "is_affine",
    "cca_verdict",
    "cca_verdict_with_group",
    "cca_group_verdict",
    "is_hamiltonian_2group",
    "complete_connection_set",
    "complete_graph",
    "InversionReport",
    "inversion_conjugation_report",
    "affine_elements",
]


def is_affine(perm: Sequence[int], group: GroupTable) -> bool:
    """Whether the map is a translation composed with a table automorphism.

    Normalizing by the image of the identity must leave a multiplication
    homomorphism; bijectivity then makes it an automorphism.
    """
    alpha = np.asarray(perm, dtype=np.intp)
    if alpha.shape != (group.order,):
        raise ValueError("degree does not match the group order")
    m = group.mult_array
    k_inv = group.inv[int(alpha[group.identity])]
    beta = m[k_inv, alpha]
    return bool(np.array_equal(beta[m], m[beta[:, np.newaxis], beta[np.newaxis, :]]))


def affine_elements(perm_group: PermGroup, group: GroupTable) -> list[Perm]:
    """The affine members of a permutation group on the group's elements."""
    return [g for g in perm_group.elements() if is_affine(g, group)]


@dataclass(frozen=True)
class CcaVerdict:
    """Outcome of the all-affine test for one connected Cayley graph."""

    is_cca: bool
    ao_order: int
    witness: Perm | None
    notes: dict[str, bool]

    def to_json(self) -> dict:
        out: dict = {
            "is_cca": self.is_cca,
            "ao_order": self.ao_order,
            "notes": dict(self.notes),
        }
        if self.witness is not None:
            out["witness_images"] = list(self.witness)
        return out


def _find_witness(
    graph: ColoredCayleyGraph, ao: PermGroup
) -> Perm:
    """First non-affine color-preserving element, scanning generators then
    generator pair products in deterministic order."""
    for g in ao.generators:
        if not is_affine(g, graph.group):
            return g
    for g in ao.generators:
        for h in ao.generators:
            p = pmul(g, h)
            if not is_affine(p, graph.group):
                return p
    raise AssertionError("negative verdict but no witness among generators")


def cca_verdict_with_group(
    graph: ColoredCayleyGraph,
) -> tuple[CcaVerdict, PermGroup]:
    """The verdict together with the color-preserving group it came from."""
    if graph.digraph_mode:
        raise ValueError("verdicts are defined for graph mode only")
    if not is_connected(graph):
        raise ValueError("verdicts are defined for connected graphs only")
    ao = color_preserving_group(graph)
    gl = left_regular_group(graph.group)
    gl_normal = is_normal_subgroup(gl, ao)
    gens_affine = all(is_affine(g, graph.group) for g in ao.generators)
    if gl_normal != gens_affine:
        raise AssertionError("normality and affinity criteria disagree")
    witness = None
    if not gl_normal:
        witness = _find_witness(graph, ao)
        if not preserves_matrix(graph.color_matrix, witness):
            raise AssertionError("witness does not preserve the coloring")
    n = graph.n
    ao_primitive = all(
        len(bs.blocks) in (1, n) for bs in all_block_systems(ao)
    )
    verdict = CcaVerdict(
        is_cca=gl_normal,
        ao_order=ao.order(),
        witness=witness,
        notes={"gl_normal": gl_normal, "ao_primitive": ao_primitive},
    )
    return verdict, ao


def cca_verdict(graph: ColoredCayleyGraph) -> CcaVerdict:
    verdict, _ = cca_verdict_with_group(graph)
    return verdict


def cca_group_verdict(
    group: GroupTable,
    up_to_aut: bool = True,
    expand_orbits: bool = False,
) -> tuple[bool, list[ConnectionSet]]:
    """Whether every connected Cayley graph of the group gets a positive
    verdict, plus the failing connection sets.

    With up_to_aut only one representative per automorphism orbit is tested
    (verdicts are invariant under relabeling by a table automorphism);
    expand_orbits grows each failing representative back to its full orbit.
    """
    failing: list[ConnectionSet] = []
    for cs in enumerate_connection_sets(group, connected_only=True, up_to_aut=up_to_aut):
        verdict = cca_verdict(build_cayley(group, cs))
        if not verdict.is_cca:
            failing.append(cs)
    if expand_orbits and up_to_aut and failing:
        pairs = inverse_pairs(group)
        expanded: list[ConnectionSet] = []
        seen: set[int] = set()
        for cs in failing:
            for mask in mask_orbit(group, connection_set_mask(group, pairs, cs)):
                if mask not in seen:
                    seen.add(mask)
                    expanded.append(mask_to_connection_set(group, pairs, mask))
        failing = expanded
    return not failing, failing


def is_hamiltonian_2group(group: GroupTable) -> bool:
    """Nonabelian 2-group in which every subgroup is normal."""
    n = group.order
    if n & (n - 1) != 0:
        return False
    if group.is_abelian:
        return False
    return all(is_normal(group, h) for h in all_subgroups(group))


def complete_connection_set(group: GroupTable) -> ConnectionSet:
    members = frozenset(range(group.order)) - {group.identity}
    return ConnectionSet(group, members)


def complete_graph(group: GroupTable) -> ColoredCayleyGraph:
    """The complete Cayley graph: every non-identity element connects."""
    return build_cayley(group, complete_connection_set(group))


@dataclass(frozen=True)
class InversionReport:
    """Conjugation constraints satisfied by a color-preserving map of the
    complete Cayley graph that fixes the identity.

    Such a map sends every element to itself or its inverse.  For every
    properly inverted x and every fixed g of order above 2, conjugation by
    x must invert g; and unless the map inverts everything, every properly
    inverted x has order 4.
    """

    fixed: tuple[int, ...]
    inverted: tuple[int, ...]
    global_inversion: bool
    pairs_checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "fixed": list(self.fixed),
            "inverted": list(self.inverted),
            "global_inversion": self.global_inversion,
            "pairs_checked": self.pairs_checked,
            "violations": list(self.violations),
        }


def inversion_conjugation_report(
    group: GroupTable, phi: Sequence[int]
) -> InversionReport:
    graph = complete_graph(group)
    perm = tuple(phi)
    if len(perm) != group.order:
        raise ValueError("degree does not match the group order")
    if perm[group.identity] != group.identity:
        raise ValueError("map must fix the identity")
    if not preserves_matrix(graph.color_matrix, perm):
        raise ValueError("map must preserve every color class")
    inv = group.inv
    for g in range(group.order):
        if perm[g] not in (g, inv[g]):
            raise AssertionError("color-preserving identity-fixing map moved "
                                 "an element outside its inverse pair")
    fixed = tuple(g for g in range(group.order) if perm[g] == g)
    inverted = tuple(
        x for x in range(group.order) if perm[x] == inv[x] and inv[x] != x
    )
    global_inversion = all(perm[g] == inv[g] for g in range(group.order))
    violations: list[str] = []
    checked = 0
    fixed_big = [g for g in fixed if group.order_of(g) > 2]
    for x in inverted:
        for g in fixed_big:
            checked += 1
            if group.conjugate(x, g) != inv[g]:
                violations.append(
                    f"conjugating {group.label_of(g)} by {group.label_of(x)} "
                    f"does not invert it"
                )
            if not global_inversion and group.order_of(x) != 4:
                violations.append(
                    f"{group.label_of(x)} is inverted but has order "
                    f"{group.order_of(x)}, not 4"
                )
    return InversionReport(
        fixed=fixed,
        inverted=inverted,
        global_inversion=global_inversion,
        pairs_checked=checked,
        violations=tuple(violations),
    )
