"""Finite groups as multiplication tables, with constructors and subgroup ops.

Elements are indices 0..n-1; ``mult[a][b]`` is the product.  The identity
index is derived during validation (all constructors here place it at 0).
Tables are validated on construction: Latin square, two-sided identity,
inverses, and exhaustive associativity for orders up to 256.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .perms import Perm, PermGroup, permgroup_from_elements

__all__ = [
    "GroupTable",
    "make_cyclic",
    "make_f21",
    "make_q8",
    "make_dihedral",
    "make_symmetric_table",
    "make_hamiltonian_2group",
    "direct_product",
    "subgroup_generated",
    "is_subgroup",
    "is_normal",
    "center",
    "quotient",
    "subgroup_table",
    "all_subgroups",
    "minimal_generating_set",
    "group_automorphisms",
    "left_translation",
    "left_regular_group",
    "parse_elements",
    "group_from_name",
    "group_to_json",
    "group_from_json",
]

_ASSOCIATIVITY_CHECK_MAX = 256


@dataclass(frozen=True, eq=False)
class GroupTable:
    """An immutable finite group given by its multiplication table."""

    order: int
    mult: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = field(default="group", compare=False)

    @staticmethod
    def from_mult(
        mult: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str = "group",
    ) -> "GroupTable":
        n = len(mult)
        if n == 0:
            raise ValueError("empty table")
        rows = tuple(tuple(int(x) for x in row) for row in mult)
        full = set(range(n))
        for a, row in enumerate(rows):
            if len(row) != n or set(row) != full:
                raise ValueError(f"row {a} is not a permutation of 0..{n - 1}")
        for b in range(n):
            if {rows[a][b] for a in range(n)} != full:
                raise ValueError(f"column {b} is not a permutation of 0..{n - 1}")
        identity = None
        for e in range(n):
            if all(rows[e][b] == b for b in range(n)) and all(
                rows[a][e] == a for a in range(n)
            ):
                identity = e
                break
        if identity is None:
            raise ValueError("no two-sided identity")
        inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if rows[a][b] == identity:
                    if rows[b][a] != identity:
                        raise ValueError(f"one-sided inverse at element {a}")
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise ValueError(f"element {a} has no inverse")
        if n <= _ASSOCIATIVITY_CHECK_MAX:
            m = np.array(rows, dtype=np.int32)
            if not np.array_equal(m[m], m[:, m]):
                raise ValueError("multiplication is not associative")
        if labels is None:
            labels = tuple(f"g{i}" for i in range(n))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise ValueError("labels must be distinct, one per element")
        return GroupTable(n, rows, identity, tuple(inv), labels, name)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, x: int) -> int:
        """g^-1 * x * g."""
        return self.mul(self.mul(self.inv[g], x), g)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv[a], -k)
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.order_of(a) for a in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.mult[a][b] == self.mult[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    @cached_property
    def mult_array(self) -> np.ndarray:
        arr = np.array(self.mult, dtype=np.int32)
        arr.setflags(write=False)
        return arr

    def label_of(self, a: int) -> str:
        return self.labels[a]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labeled {label!r} in {self.name}") from None

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"


# -- constructors -------------------------------------------------------------


def make_cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("order must be positive")
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e"] + [str(i) for i in range(1, n)]
    return GroupTable.from_mult(mult, labels, name=f"Z{n}")


def _f21_label(i: int, j: int) -> str:
    if i == 0 and j == 0:
        return "e"
    xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
    as_ = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
    return xs + as_


def make_f21() -> GroupTable:
    """The nonabelian group of order 21: x of order 7, a of order 3, a^-1 x a = x^2.

    Element x^i a^j sits at index 3i + j, so the order-7 subgroup is the set
    of indices divisible by 3.
    """
    def idx(i: int, j: int) -> int:
        return 3 * (i % 7) + (j % 3)

    mult = [[0] * 21 for _ in range(21)]
    labels = [""] * 21
    for i in range(7):
        for j in range(3):
            labels[idx(i, j)] = _f21_label(i, j)
            for k in range(7):
                for l in range(3):
                    mult[idx(i, j)][idx(k, l)] = idx(i + k * pow(4, j, 7), j + l)
    return GroupTable.from_mult(mult, labels, name="F21")


_Q8_UNIT_MULT = {
    (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def make_q8() -> GroupTable:
    """The quaternion group: 1, -1, i, -i, j, -j, k, -k in that order."""
    def decode(e: int) -> tuple[int, int]:
        return e % 2, e // 2

    def encode(s: int, u: int) -> int:
        return 2 * u + s

    mult = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            s1, u1 = decode(a)
            s2, u2 = decode(b)
            if u1 == 0 or u2 == 0:
                s, u = 0, u1 or u2
            else:
                s, u = _Q8_UNIT_MULT[(u1, u2)]
            mult[a][b] = encode((s1 + s2 + s) % 2, u)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return GroupTable.from_mult(mult, labels, name="Q8")


def make_dihedral(k: int) -> GroupTable:
    """Dihedral group of order 2k: rotations r^i, reflections r^i f."""
    if k < 1:
        raise ValueError("k must be positive")
    n = 2 * k

    def idx(i: int, flip: int) -> int:
        return (i % k) + k * flip

    mult = [[0] * n for _ in range(n)]
    for i in range(k):
        for fa in range(2):
            for j in range(k):
                for fb in range(2):
                    i2 = i + j if fa == 0 else i - j
                    mult[idx(i, fa)][idx(j, fb)] = idx(i2, fa ^ fb)
    labels = ["e"] + [f"r^{i}" if i > 1 else "r" for i in range(1, k)]
    labels += [f"r^{i}f" if i > 1 else ("f" if i == 0 else "rf") for i in range(k)]
    return GroupTable.from_mult(mult, labels, name=f"D{k}")


def make_symmetric_table(n: int) -> GroupTable:
    """The symmetric group on n letters as a table; small n only."""
    if n < 1 or n > 5:
        raise ValueError("table form supported for 1 <= n <= 5")
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    mult = [
        [index[tuple(p[q[x]] for x in range(n))] for q in elems]
        for p in elems
    ]
    labels = ["".join(str(x) for x in p) for p in elems]
    return GroupTable.from_mult(mult, labels, name=f"S{n}")


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Direct product; pair (a, b) sits at index a * |H| + b."""
    n, m = g.order, h.order
    mult = [[0] * (n * m) for _ in range(n * m)]
    for a1 in range(n):
        for b1 in range(m):
            e1 = a1 * m + b1
            row_a = g.mult[a1]
            row_b = h.mult[b1]
            for a2 in range(n):
                for b2 in range(m):
                    mult[e1][a2 * m + b2] = row_a[a2] * m + row_b[b2]
    labels = [
        f"({g.labels[a]},{h.labels[b]})" for a in range(n) for b in range(m)
    ]
    return GroupTable.from_mult(mult, labels, name=f"{g.name}x{h.name}")


def make_hamiltonian_2group(k: int) -> GroupTable:
    """Q8 times k copies of Z2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = make_q8()
    for _ in range(k):
        out = direct_product(out, make_cyclic(2))
    return out


# -- subgroup machinery -------------------------------------------------------


def subgroup_generated(group: GroupTable, gens: Iterable[int]) -> frozenset[int]:
    seen = {group.identity}
    gens = list(gens)
    frontier = [group.identity]
    while frontier:
        new: list[int] = []
        for u in frontier:
            for s in gens:
                v = group.mul(u, s)
                if v not in seen:
                    seen.add(v)
                    new.append(v)
        frontier = new
    return frozenset(seen)


def is_subgroup(group: GroupTable, members: Iterable[int]) -> bool:
    mem = frozenset(members)
    if group.identity not in mem:
        return False
    return all(group.mul(a, b) in mem for a in mem for b in mem)


def is_normal(group: GroupTable, members: Iterable[int]) -> bool:
    """Whether a subgroup is normal; raises if members is not a subgroup."""
    mem = frozenset(members)
    if not is_subgroup(group, mem):
        raise ValueError("not a subgroup")
    return all(
        group.conjugate(g, h) in mem for g in range(group.order) for h in mem
    )


def center(group: GroupTable) -> frozenset[int]:
    return frozenset(
        z
        for z in range(group.order)
        if all(group.mult[z][g] == group.mult[g][z] for g in range(group.order))
    )


def quotient(group: GroupTable, members: Iterable[int]) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient by a normal subgroup; returns the table and the coset map.

    Cosets are numbered by their smallest element, ascending, so the identity
    coset gets index 0.
    """
    mem = frozenset(members)
    if not is_subgroup(group, mem):
        raise ValueError("not a subgroup")
    for g in range(group.order):
        for h in mem:
            c = group.conjugate(g, h)
            if c not in mem:
                raise ValueError(
                    f"not normal: conjugating {group.labels[h]} by "
                    f"{group.labels[g]} gives {group.labels[c]}"
                )
    coset_map = [-1] * group.order
    reps: list[int] = []
    for g in range(group.order):
        if coset_map[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for h in mem:
            coset_map[group.mul(g, h)] = idx
    m = len(reps)
    mult = [
        [coset_map[group.mul(reps[a], reps[b])] for b in range(m)]
        for a in range(m)
    ]
    labels = [f"[{group.labels[r]}]" for r in reps]
    table = GroupTable.from_mult(mult, labels, name=f"{group.name}/N{len(mem)}")
    return table, tuple(coset_map)


def subgroup_table(group: GroupTable, members: Iterable[int]) -> tuple[GroupTable, tuple[int, ...]]:
    """A closed subset as its own group; returns the table and sorted elements."""
    elems = tuple(sorted(frozenset(members)))
    if not is_subgroup(group, elems):
        raise ValueError("not a subgroup")
    pos = {g: i for i, g in enumerate(elems)}
    mult = [[pos[group.mul(a, b)] for b in elems] for a in elems]
    labels = [group.labels[g] for g in elems]
    table = GroupTable.from_mult(mult, labels, name=f"{group.name}_sub{len(elems)}")
    return table, elems


def all_subgroups(group: GroupTable) -> list[frozenset[int]]:
    """Every subgroup, by closing the cyclic subgroups under pairwise joins."""
    if group.order > 64:
        raise ValueError("subgroup enumeration capped at order 64")
    subs: set[frozenset[int]] = {frozenset({group.identity})}
    for g in range(group.order):
        subs.add(subgroup_generated(group, [g]))
    frontier = list(subs)
    while frontier:
        new: list[frozenset[int]] = []
        for a in frontier:
            for b in list(subs):
                j = subgroup_generated(group, a | b)
                if j not in subs:
                    subs.add(j)
                    new.append(j)
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


# -- automorphisms ------------------------------------------------------------


def minimal_generating_set(group: GroupTable) -> tuple[int, ...]:
    """A small generating set, scanning elements by descending order."""
    if group.order == 1:
        return ()
    gens: list[int] = []
    current: frozenset[int] = frozenset({group.identity})
    ranked = sorted(range(group.order), key=lambda g: (-group.order_of(g), g))
    for g in ranked:
        if g in current:
            continue
        gens.append(g)
        current = subgroup_generated(group, gens)
        if len(current) == group.order:
            break
    return tuple(gens)


def _extend_hom(
    group: GroupTable, mapping: dict[int, int], gen: int, image: int
) -> dict[int, int] | None:
    """Extend a partial homomorphism by gen -> image; None on conflict."""
    if gen in mapping:
        return dict(mapping) if mapping[gen] == image else None
    m = dict(mapping)
    m[gen] = image
    queue = [gen]
    while queue:
        u = queue.pop()
        mu = m[u]
        for v in list(m.keys()):
            mv = m[v]
            for p, ip in (
                (group.mul(u, v), group.mul(mu, mv)),
                (group.mul(v, u), group.mul(mv, mu)),
            ):
                if p in m:
                    if m[p] != ip:
                        return None
                else:
                    m[p] = ip
                    queue.append(p)
    return m


def group_automorphisms(group: GroupTable) -> PermGroup:
    """All table automorphisms, found by backtracking over generator images."""
    n = group.order
    gens = minimal_generating_set(group)
    if not gens:
        return PermGroup(n, [])
    candidates = [
        [h for h in range(n) if group.order_of(h) == group.order_of(g)]
        for g in gens
    ]
    found: list[Perm] = []

    def backtrack(i: int, mapping: dict[int, int]) -> None:
        if i == len(gens):
            if len(mapping) == n and len(set(mapping.values())) == n:
                found.append(tuple(mapping[x] for x in range(n)))
            return
        for image in candidates[i]:
            extended = _extend_hom(group, mapping, gens[i], image)
            if extended is not None:
                backtrack(i + 1, extended)

    backtrack(0, {group.identity: group.identity})
    return permgroup_from_elements(n, found)


def left_translation(group: GroupTable, g: int) -> Perm:
    return tuple(group.mult[g])


def left_regular_group(group: GroupTable) -> PermGroup:
    """The left translations as a permutation group."""
    gens = [left_translation(group, g) for g in minimal_generating_set(group)]
    out = PermGroup(group.order, gens)
    if out.order() != group.order:
        raise AssertionError("left regular representation has wrong order")
    return out


# -- labels, parsing, registry ------------------------------------------------


def parse_elements(group: GroupTable, text: str) -> tuple[int, ...]:
    """Resolve a comma-separated list of element expressions to indices.

    Each item is either an exact label or a word in labels with optional
    parenthesized subwords and integer exponents, e.g. ``a,x^2,(ax)^-1``.
    """
    out: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ValueError("empty element expression")
        out.append(_parse_word(group, item))
    return tuple(out)


_EXP_RE = re.compile(r"\^(-?\d+)")


def _parse_word(group: GroupTable, word: str) -> int:
    try:
        return group.index_of(word)
    except KeyError:
        pass
    by_length = sorted(group.labels, key=len, reverse=True)
    pos = 0
    acc = group.identity
    while pos < len(word):
        ch = word[pos]
        if ch in " *·":
            pos += 1
            continue
        if ch == "(":
            depth, j = 1, pos + 1
            while j < len(word) and depth:
                depth += {"(": 1, ")": -1}.get(word[j], 0)
                j += 1
            if depth:
                raise ValueError(f"unbalanced parentheses in {word!r}")
            atom = _parse_word(group, word[pos + 1 : j - 1])
            pos = j
        else:
            atom = None
            for lab in by_length:
                if word.startswith(lab, pos):
                    # A label match must not swallow the start of an exponent.
                    rest = word[pos + len(lab) :]
                    atom = group.index_of(lab)
                    pos += len(lab)
                    break
            if atom is None:
                raise ValueError(f"cannot read element at {word[pos:]!r} in {group.name}")
        m = _EXP_RE.match(word, pos)
        if m:
            atom = group.power(atom, int(m.group(1)))
            pos = m.end()
        acc = group.mul(acc, atom)
    return acc


_ATOM_RE = re.compile(r"^([a-z]+?)(\d+)(?:\^(\d+))?$")


def group_from_name(name: str) -> GroupTable:
    """Build a group from a short name like z7, f21, q8, d4, s3, q8xz2^2."""
    text = name.strip().lower().replace(" ", "")
    parts = text.split("x")
    tables: list[GroupTable] = []
    for part in parts:
        if not part:
            raise ValueError(f"bad group name {name!r}")
        if part == "f21":
            tables.append(make_f21())
            continue
        if part == "q8":
            tables.append(make_q8())
            continue
        m = _ATOM_RE.match(part)
        if not m:
            raise ValueError(f"bad group name {name!r}")
        kind, num, power = m.group(1), int(m.group(2)), m.group(3)
        if kind in ("z", "c"):
            base = make_cyclic(num)
        elif kind == "d":
            base = make_dihedral(num)
        elif kind == "s":
            base = make_symmetric_table(num)
        else:
            raise ValueError(f"bad group name {name!r}")
        for _ in range(int(power) if power else 1):
            tables.append(base)
    out = tables[0]
    for t in tables[1:]:
        out = direct_product(out, t)
    return out


# -- serialization --------------------------------------------------------------


def group_to_json(group: GroupTable) -> dict:
    return {
        "order": group.order,
        "mult": [x for row in group.mult for x in row],
        "labels": list(group.labels),
        "name": group.name,
    }


def group_from_json(data: dict) -> GroupTable:
    n = int(data["order"])
    flat = data["mult"]
    if len(flat) != n * n:
        raise ValueError("flat table has wrong length")
    mult = [flat[i * n : (i + 1) * n] for i in range(n)]
    return GroupTable.from_mult(mult, data.get("labels"), name=data.get("name", "group"))
