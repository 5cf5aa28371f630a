"""Command layer behind the CLI.

Each cmd_* function returns (rows, summary): rows are JSON-ready dicts, one
per instance checked, and summary is a list of human-readable lines.  Failed
checks raise AssertionError, bad inputs raise ValueError; the CLI maps those
to exit codes.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .cartesian import cartesian_decompose, product_structure_verdict
from .cayley import (
    ConnectionSet,
    build_cayley,
    cartesian_product,
    connection_set_mask,
    connection_set_orbits,
    count_orbits_burnside,
    f21_noncca_connection_set,
    f21_noncca_graph,
    inverse_pairs,
    mask_orbit,
    mask_to_connection_set,
)
from .cca import (
    cca_verdict,
    cca_verdict_with_group,
    complete_graph,
    is_hamiltonian_2group,
)
from .groups import (
    GroupTable,
    group_from_name,
    make_cyclic,
    make_f21,
    subgroup_generated,
)
from .perms import BlockSystem
from .search import are_isomorphic, uncolored_aut_group
from .suites import run_oracle_suites

DEFAULT_ROSTER = (
    "z5",
    "z7",
    "z8",
    "z9",
    "z2^3",
    "d4",
    "q8",
    "q8xz2",
    "q8xz2^2",
    "s3",
    "f21",
)


@dataclass
class CensusReport:
    """Aggregate view of the sweep over the inverse-closed sets of F21."""

    group_name: str
    total_sets: int
    connected_sets: int
    orbit_count: int
    connected_orbit_count: int
    burnside_orbit_count: int
    noncca_class_count: int
    noncca_sets_per_class: list[int]
    rows: list[dict]

    def summary_dict(self) -> dict:
        return {
            "kind": "summary",
            "group": self.group_name,
            "total_sets": self.total_sets,
            "connected_sets": self.connected_sets,
            "orbit_count": self.orbit_count,
            "connected_orbit_count": self.connected_orbit_count,
            "burnside_orbit_count": self.burnside_orbit_count,
            "noncca_class_count": self.noncca_class_count,
            "noncca_sets_per_class": list(self.noncca_sets_per_class),
        }


def _census_rows(masks: Sequence[int]) -> list[dict]:
    """Verdict rows for the given pair masks, ascending.

    Module level so a process pool can ship it to workers; the table is
    rebuilt locally rather than pickled.
    """
    group = make_f21()
    pairs = inverse_pairs(group)
    rows: list[dict] = []
    for mask in masks:
        cs = mask_to_connection_set(group, pairs, mask)
        graph = build_cayley(group, cs)
        verdict = cca_verdict(graph)
        row = {
            "kind": "connection-set",
            "mask": mask,
            "set": list(cs.labels()),
            "valency": graph.valency,
            "ao_order": verdict.ao_order,
            "is_cca": verdict.is_cca,
            "iso_class": None,
        }
        if not verdict.is_cca:
            row["aut_order"] = uncolored_aut_group(graph).order()
        rows.append(row)
    return rows


def f21_census(jobs: int = 1) -> CensusReport:
    """Sweep every connected inverse-closed set of F21, one orbit rep each.

    Verdicts are computed per representative and counts are expanded back to
    full orbits.  Negative reps are clustered by color-respecting graph
    isomorphism; the orbit count is cross-checked against a Burnside count.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    group = make_f21()
    pairs = inverse_pairs(group)
    orbits = connection_set_orbits(group)
    connected = connection_set_orbits(group, connected_only=True)
    sizes = dict(connected)
    reps = sorted(sizes)
    if jobs > 1:
        chunks = [reps[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = [row for part in pool.map(_census_rows, chunks) for row in part]
        rows.sort(key=lambda row: row["mask"])
    else:
        rows = _census_rows(reps)
    for row in rows:
        row["orbit_size"] = sizes[row["mask"]]

    class_reps: list[int] = []
    per_class: list[int] = []
    for row in rows:
        if row["is_cca"]:
            continue
        graph = build_cayley(group, mask_to_connection_set(group, pairs, row["mask"]))
        for k, rep_mask in enumerate(class_reps):
            other = build_cayley(group, mask_to_connection_set(group, pairs, rep_mask))
            if are_isomorphic(graph, other, respect_colors=True):
                row["iso_class"] = k
                per_class[k] += row["orbit_size"]
                break
        else:
            row["iso_class"] = len(class_reps)
            class_reps.append(row["mask"])
            per_class.append(row["orbit_size"])

    return CensusReport(
        group_name="F21",
        total_sets=(1 << len(pairs)) - 1,
        connected_sets=sum(size for _, size in connected),
        orbit_count=len(orbits),
        connected_orbit_count=len(connected),
        burnside_orbit_count=count_orbits_burnside(group),
        noncca_class_count=len(class_reps),
        noncca_sets_per_class=per_class,
        rows=rows,
    )


def check_f21_census(report: CensusReport) -> None:
    """Assert the known shape of the F21 sweep."""
    assert report.total_sets == 1023, report.total_sets
    assert report.orbit_count == report.burnside_orbit_count, (
        f"orbit dedup found {report.orbit_count}, "
        f"Burnside says {report.burnside_orbit_count}"
    )
    noncca = [row for row in report.rows if not row["is_cca"]]
    assert report.noncca_class_count == 1, report.noncca_class_count
    assert report.noncca_sets_per_class == [21], report.noncca_sets_per_class
    assert len(noncca) == 1
    row = noncca[0]
    assert row["valency"] == 4, row
    assert row["ao_order"] == 168, row
    assert row["aut_order"] == 336, row
    # The canonical set {a, a^-1, ax, (ax)^-1} must land in that orbit.
    group = make_f21()
    canonical = connection_set_mask(
        group, inverse_pairs(group), f21_noncca_connection_set(group)
    )
    assert canonical in mask_orbit(group, row["mask"]), "canonical set missing"


def cmd_f21_census(jobs: int = 1) -> tuple[list[dict], list[str]]:
    report = f21_census(jobs=jobs)
    check_f21_census(report)
    rows = list(report.rows)
    rows.append(report.summary_dict())
    noncca = next(row for row in report.rows if not row["is_cca"])
    summary = [
        f"{report.total_sets} nonempty inverse-closed sets, "
        f"{report.connected_sets} connected",
        f"{report.orbit_count} orbits under table automorphisms "
        f"(Burnside agrees), {report.connected_orbit_count} of them connected",
        f"negative verdicts: {report.noncca_class_count} isomorphism class, "
        f"{report.noncca_sets_per_class[0]} connection sets, "
        f"valency {noncca['valency']}",
        f"negative instance: color group order {noncca['ao_order']}, "
        f"full automorphism group order {noncca['aut_order']}",
    ]
    return rows, summary


def cmd_complete_cca(
    roster: Sequence[str] | None = None,
) -> tuple[list[dict], list[str]]:
    """Verdict for the complete graph of each roster group, checked against
    the subgroup criterion: negative exactly for nonabelian groups of
    2-power order whose subgroups are all normal."""
    names = list(roster) if roster is not None else list(DEFAULT_ROSTER)
    if not names:
        raise ValueError("empty roster")
    rows: list[dict] = []
    bad: list[str] = []
    for name in names:
        group = group_from_name(name)
        graph = complete_graph(group)
        verdict = cca_verdict(graph)
        exceptional = is_hamiltonian_2group(group)
        ok = verdict.is_cca == (not exceptional)
        rows.append(
            {
                "kind": "complete-graph",
                "group": name,
                "order": group.order,
                "is_cca": verdict.is_cca,
                "hamiltonian_2_group": exceptional,
                "ao_order": verdict.ao_order,
                "ok": ok,
            }
        )
        if not ok:
            bad.append(name)
    assert not bad, f"verdict disagrees with the subgroup criterion for {bad}"
    positive = sum(1 for row in rows if row["is_cca"])
    summary = [
        f"complete graphs over {len(rows)} groups: "
        f"{positive} positive, {len(rows) - positive} negative",
        "every verdict matches the subgroup criterion",
    ]
    return rows, summary


def _demo_cycle_factor(m: int):
    members: frozenset[int] = frozenset() if m == 1 else frozenset({1, m - 1})
    return build_cayley(make_cyclic(m), members)


def _random_connected_set(group: GroupTable, rng: random.Random) -> ConnectionSet:
    """A small seeded inverse-closed generating set, replayable by seed."""
    pairs = inverse_pairs(group)
    while True:
        chosen = rng.sample(range(len(pairs)), rng.randint(2, 4))
        members = frozenset(e for i in chosen for e in pairs[i])
        if len(subgroup_generated(group, members)) == group.order:
            return ConnectionSet(group, members)


def cmd_product_demo(m: int, seed: int = 0) -> tuple[list[dict], list[str]]:
    """Build the m-cycle product of the order-21 negative instance, confirm
    the verdict stays negative, and recover both factors from the color
    group alone.  Also reports verdicts for three seeded random sets of the
    product group, unchecked."""
    if m < 1 or m % 2 == 0 or math.gcd(m, 21) != 1 or 21 * m > 105:
        raise ValueError("m must be odd, coprime to 21, with 21*m at most 105")
    if any(m % (p * p) == 0 for p in range(2, m + 1)):
        raise ValueError("m must be square-free")
    base = f21_noncca_graph()
    prod = cartesian_product(_demo_cycle_factor(m), base)
    verdict, ao = cca_verdict_with_group(prod)
    assert not verdict.is_cca, "the product should keep a negative verdict"
    assert ao.order() == {1: 168, 5: 1680}[m], ao.order()
    rows: list[dict] = [
        {
            "kind": "verdict",
            "n": prod.n,
            "is_cca": verdict.is_cca,
            "ao_order": verdict.ao_order,
            "notes": dict(verdict.notes),
        }
    ]

    factors = product_structure_verdict(prod)
    assert factors is not None, "no candidate block system factors the product"
    f1, f2 = factors
    assert f1.n == m and f2.n == 21, (f1.n, f2.n)
    fibers = BlockSystem.from_blocks(
        prod.n, [range(a * 21, (a + 1) * 21) for a in range(m)]
    )
    result = cartesian_decompose(prod, ao, fibers)
    assert result.success, "decomposition over the order-21 fibers failed"
    assert result.phrasings_agree
    assert len(result.g1) == m and len(result.g2) == 21
    rows.append(
        {
            "kind": "factors",
            "factor1_n": f1.n,
            "factor2_n": f2.n,
            "g1_size": len(result.g1),
            "g2_size": len(result.g2),
            "block_count": result.block_system.block_count,
            "class_count": result.stab_classes.block_count,
            "phrasings_agree": result.phrasings_agree,
        }
    )

    rng = random.Random(seed)
    for i in range(3):
        cs = _random_connected_set(prod.group, rng)
        graph = build_cayley(prod.group, cs)
        v = cca_verdict(graph)
        rows.append(
            {
                "kind": "random-set",
                "index": i,
                "set": list(cs.labels()),
                "valency": graph.valency,
                "is_cca": v.is_cca,
                "ao_order": v.ao_order,
            }
        )
    random_pos = sum(1 for row in rows if row["kind"] == "random-set" and row["is_cca"])
    summary = [
        f"product on {prod.n} vertices: negative verdict, "
        f"color group order {verdict.ao_order}",
        f"factors recovered: {f1.n} vertices and {f2.n} vertices "
        f"(subgroup sizes {len(result.g1)} and {len(result.g2)})",
        f"3 seeded random sets (seed {seed}): {random_pos} positive verdicts",
    ]
    return rows, summary


def cmd_verdict(group_name: str, set_text: str) -> tuple[list[dict], list[str]]:
    """One replayable verdict for a named group and a comma-separated set."""
    group = group_from_name(group_name)
    graph = build_cayley(group, set_text)
    verdict = cca_verdict(graph)
    row = {
        "kind": "verdict",
        "group": group_name,
        "order": group.order,
        "set": list(graph.connection.labels()),
        "valency": graph.valency,
    }
    row.update(verdict.to_json())
    state = "positive" if verdict.is_cca else "negative"
    summary = [
        f"{group_name} on {{{', '.join(graph.connection.labels())}}}: "
        f"{state} verdict, color group order {verdict.ao_order}"
    ]
    if verdict.witness is not None:
        summary.append(
            "non-affine witness images: "
            + " ".join(str(x) for x in verdict.witness)
        )
    return [row], summary


def cmd_oracle_suite(seed: int = 0) -> tuple[list[dict], list[str]]:
    rows = run_oracle_suites(seed=seed)
    by_suite: dict[str, list[dict]] = {}
    for row in rows:
        by_suite.setdefault(row["suite"], []).append(row)
    summary = [
        f"{name}: {sum(1 for r in group if r['ok'])}/{len(group)} ok"
        for name, group in by_suite.items()
    ]
    failures = [row["name"] for row in rows if not row["ok"]]
    assert not failures, "failing rows: " + ", ".join(failures)
    return rows, summary
