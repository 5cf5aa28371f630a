"""Permutations and permutation groups with deterministic stabilizer chains.

A permutation on ``0..n-1`` is an image tuple: ``p[i]`` is the image of
point ``i``.  ``pmul(a, b)`` is function composition, b applied first.

``PermGroup`` keeps its generators plus a base and strong generating set
built by the deterministic Schreier-Sims procedure: base points are the
smallest moved points (after an optional caller-supplied prefix) and orbits
are explored breadth-first in fixed generator order, so building twice from
the same generator list yields identical bases, transversals and orders.
Instances are immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Callable, Iterable, Iterator, Sequence

Perm = tuple[int, ...]

__all__ = [
    "Perm",
    "identity_perm",
    "pmul",
    "pinv",
    "is_identity_perm",
    "PermGroup",
    "permgroup_from_elements",
    "closure_of_perms",
    "orbit_of_point",
    "orbits_of_gens",
    "BlockSystem",
    "singleton_partition",
    "one_block_partition",
    "join_block_systems",
    "minimal_block_system",
    "all_block_systems",
    "block_action",
    "fixer",
    "is_normal_subgroup",
    "point_stabilizer",
    "stabilizers_equal",
    "perm_to_json",
    "perm_from_json",
    "permgroup_to_json",
    "permgroup_from_json",
]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def pmul(a: Perm, b: Perm) -> Perm:
    """Compose: apply ``b`` first, then ``a``."""
    return tuple(a[x] for x in b)


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def is_identity_perm(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def _as_perm(p: Sequence[int], degree: int) -> Perm:
    t = tuple(p)
    if len(t) != degree or sorted(t) != list(range(degree)):
        raise ValueError(f"not a permutation of 0..{degree - 1}: {t!r}")
    return t


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int) -> None:
        self.base = base
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {}


class PermGroup:
    """A permutation group of fixed degree with a stabilizer chain."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Sequence[int]] = (),
        base_prefix: Sequence[int] = (),
    ) -> None:
        self.degree = degree
        gens: list[Perm] = []
        seen: set[Perm] = set()
        for g in generators:
            p = _as_perm(g, degree)
            if is_identity_perm(p) or p in seen:
                continue
            seen.add(p)
            gens.append(p)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._levels: list[_Level] = [_Level(b) for b in base_prefix]
        for g in self.generators:
            self._place(g)
        self._schreier_sims()

    # -- chain construction ------------------------------------------------

    def _place(self, g: Perm) -> None:
        """Attach g to the first level whose base it moves, extending the chain."""
        for lvl in self._levels:
            if g[lvl.base] != lvl.base:
                lvl.gens.append(g)
                return
        self._levels.append(_Level(min(i for i, x in enumerate(g) if x != i)))
        self._levels[-1].gens.append(g)

    def _level_gens(self, i: int) -> list[Perm]:
        return [g for lvl in self._levels[i:] for g in lvl.gens]

    def _rebuild_orbit(self, i: int) -> None:
        lvl = self._levels[i]
        gens = self._level_gens(i)
        ident = identity_perm(self.degree)
        lvl.transversal = {lvl.base: ident}
        queue = deque([lvl.base])
        while queue:
            x = queue.popleft()
            ux = lvl.transversal[x]
            for s in gens:
                y = s[x]
                if y not in lvl.transversal:
                    lvl.transversal[y] = pmul(s, ux)
                    queue.append(y)

    def _sift(self, g: Perm, start: int) -> tuple[Perm, int]:
        """Reduce g through levels >= start; return (residue, stuck level)."""
        i = start
        while i < len(self._levels):
            lvl = self._levels[i]
            x = g[lvl.base]
            if x != lvl.base:
                u = lvl.transversal.get(x)
                if u is None:
                    return g, i
                g = pmul(pinv(u), g)
            i += 1
        return g, len(self._levels)

    def _schreier_sims(self) -> None:
        # Verify levels deepest-first; a residue lodged at level j is new to
        # every chain group strictly below its origin, so verification
        # restarts from j and dribbles back up.
        for i in range(len(self._levels)):
            self._rebuild_orbit(i)
        i = len(self._levels) - 1
        while i >= 0:
            lvl = self._levels[i]
            gens = self._level_gens(i)
            restart = None
            for x in sorted(lvl.transversal):
                ux = lvl.transversal[x]
                for s in gens:
                    sg = pmul(pinv(lvl.transversal[s[x]]), pmul(s, ux))
                    if is_identity_perm(sg):
                        continue
                    h, j = self._sift(sg, i + 1)
                    if is_identity_perm(h):
                        continue
                    if j == len(self._levels):
                        self._levels.append(
                            _Level(min(p for p, y in enumerate(h) if y != p))
                        )
                    self._levels[j].gens.append(h)
                    for k in range(i + 1, j + 1):
                        self._rebuild_orbit(k)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    # -- queries -----------------------------------------------------------

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.base for lvl in self._levels)

    def strong_generators_by_level(self) -> tuple[tuple[Perm, ...], ...]:
        return tuple(tuple(lvl.gens) for lvl in self._levels)

    def order(self) -> int:
        return prod(len(lvl.transversal) for lvl in self._levels)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, p: Sequence[int]) -> bool:
        g = _as_perm(p, self.degree)
        residue, _ = self._sift(g, 0)
        return is_identity_perm(residue)

    def elements(self, limit: int = 200_000) -> Iterator[Perm]:
        """Iterate all elements in deterministic chain order."""
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds limit {limit}")

        def rec(i: int) -> Iterator[Perm]:
            if i == len(self._levels):
                yield identity_perm(self.degree)
                return
            lvl = self._levels[i]
            for x in sorted(lvl.transversal):
                u = lvl.transversal[x]
                for rest in rec(i + 1):
                    yield pmul(u, rest)

        return rec(0)

    def orbits(self) -> list[tuple[int, ...]]:
        return orbits_of_gens(self.degree, self.generators)

    def orbit(self, point: int) -> tuple[int, ...]:
        return orbit_of_point(point, self.generators, self.degree)

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def is_semiregular(self) -> bool:
        """True when every point stabilizer is trivial.

        By orbit-stabilizer this holds exactly when every orbit has full
        group size.
        """
        n = self.order()
        return all(len(o) == n for o in self.orbits())

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def permgroup_from_elements(degree: int, perms: Iterable[Sequence[int]]) -> PermGroup:
    """Build a group from an explicit element list, keeping few generators.

    The list must be closed under composition (it is reduced, not closed).
    """
    perms = [_as_perm(p, degree) for p in perms]
    gens: list[Perm] = []
    group = PermGroup(degree, [])
    for p in perms:
        if not group.contains(p):
            gens.append(p)
            group = PermGroup(degree, gens)
    count = len(set(perms))
    if group.order() != count:
        raise ValueError(
            f"element list of size {count} is not closed: chain order {group.order()}"
        )
    return group


def closure_of_perms(degree: int, gens: Iterable[Sequence[int]]) -> set[Perm]:
    """Brute-force closure of a generator list under composition."""
    gens = [_as_perm(g, degree) for g in gens]
    seen: set[Perm] = {identity_perm(degree)}
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for g in gens:
            q = pmul(g, p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def orbit_of_point(point: int, gens: Sequence[Perm], degree: int | None = None) -> tuple[int, ...]:
    seen = {point}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def orbits_of_gens(degree: int, gens: Sequence[Perm]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    assigned = [False] * degree
    for p in range(degree):
        if assigned[p]:
            continue
        orb = orbit_of_point(p, gens, degree)
        for x in orb:
            assigned[x] = True
        out.append(orb)
    return out


# -- block systems ----------------------------------------------------------


@dataclass(frozen=True)
class BlockSystem:
    """A partition of 0..n-1 into equal-size blocks, canonically ordered.

    Blocks are numbered by their smallest element, ascending; ``block_of[p]``
    is the index of the block containing p.
    """

    degree: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @staticmethod
    def from_blocks(degree: int, blocks: Iterable[Iterable[int]]) -> "BlockSystem":
        blks = sorted(tuple(sorted(b)) for b in blocks)
        seen: list[int] = []
        for b in blks:
            seen.extend(b)
        if sorted(seen) != list(range(degree)):
            raise ValueError("blocks do not partition 0..n-1")
        sizes = {len(b) for b in blks}
        if len(sizes) != 1:
            raise ValueError(f"blocks have unequal sizes {sorted(sizes)}")
        block_of = [0] * degree
        for i, b in enumerate(blks):
            for p in b:
                block_of[p] = i
        return BlockSystem(degree, tuple(blks), tuple(block_of))

    @staticmethod
    def from_block_of(block_of: Sequence[int]) -> "BlockSystem":
        groups: dict[int, list[int]] = {}
        for p, b in enumerate(block_of):
            groups.setdefault(b, []).append(p)
        return BlockSystem.from_blocks(len(block_of), groups.values())

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def is_trivial(self) -> bool:
        return self.block_size in (1, self.degree)


def singleton_partition(degree: int) -> BlockSystem:
    return BlockSystem.from_blocks(degree, [[p] for p in range(degree)])


def one_block_partition(degree: int) -> BlockSystem:
    return BlockSystem.from_blocks(degree, [list(range(degree))])


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _uf_blocks(uf: _UnionFind, degree: int) -> BlockSystem:
    groups: dict[int, list[int]] = {}
    for p in range(degree):
        groups.setdefault(uf.find(p), []).append(p)
    return BlockSystem.from_blocks(degree, groups.values())


def join_block_systems(a: BlockSystem, b: BlockSystem) -> BlockSystem:
    """Coarsest common refinement target: connected components of a union b."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    uf = _UnionFind(a.degree)
    for system in (a, b):
        for blk in system.blocks:
            for p in blk[1:]:
                uf.union(blk[0], p)
    return _uf_blocks(uf, a.degree)


def minimal_block_system(group: PermGroup, seed: tuple[int, int]) -> BlockSystem:
    """The finest block system of a transitive group merging the seed pair."""
    if not group.is_transitive():
        raise ValueError("block systems require a transitive group")
    a, b = seed
    if a == b:
        raise ValueError("seed points must differ")
    uf = _UnionFind(group.degree)
    queue: deque[tuple[int, int]] = deque()
    uf.union(a, b)
    queue.append((a, b))
    while queue:
        x, y = queue.popleft()
        for g in group.generators:
            gx, gy = g[x], g[y]
            if uf.find(gx) != uf.find(gy):
                uf.union(gx, gy)
                queue.append((gx, gy))
    system = _uf_blocks(uf, group.degree)
    return system


def all_block_systems(group: PermGroup) -> list[BlockSystem]:
    """Minimal systems over seeds (0, p), closed under pairwise joins."""
    found: dict[tuple[int, ...], BlockSystem] = {}
    for p in range(1, group.degree):
        sys_p = minimal_block_system(group, (0, p))
        found.setdefault(sys_p.block_of, sys_p)
    frontier = list(found.values())
    while frontier:
        new: list[BlockSystem] = []
        for fresh in frontier:
            for existing in list(found.values()):
                joined = join_block_systems(fresh, existing)
                if joined.block_of not in found:
                    found[joined.block_of] = joined
                    new.append(joined)
        frontier = new
    return [found[k] for k in sorted(found)]


def _block_image(g: Perm, system: BlockSystem) -> Perm | None:
    """Induced block permutation, or None if g does not respect the system."""
    image = [-1] * system.block_count
    for i, blk in enumerate(system.blocks):
        target = system.block_of[g[blk[0]]]
        for p in blk[1:]:
            if system.block_of[g[p]] != target:
                return None
        image[i] = target
    if sorted(image) != list(range(system.block_count)):
        return None
    return tuple(image)


def block_action(
    group: PermGroup, system: BlockSystem
) -> tuple[PermGroup, Callable[[Perm], Perm]]:
    """The induced action on blocks plus the projecting homomorphism."""
    if system.degree != group.degree:
        raise ValueError("degree mismatch")
    for g in group.generators:
        if _block_image(g, system) is None:
            raise ValueError(f"partition is not invariant: violated by generator {g}")

    def project(p: Perm) -> Perm:
        img = _block_image(_as_perm(p, group.degree), system)
        if img is None:
            raise ValueError("permutation does not respect the block system")
        return img

    images = [project(g) for g in group.generators]
    return PermGroup(system.block_count, images), project


def fixer(group: PermGroup, system: BlockSystem) -> PermGroup:
    """Kernel of the action on blocks: elements fixing every block setwise.

    Each generator is extended by its block action to degree n + m; a chain
    whose base starts with the m block points then stabilizes them all, so
    the strong generators past those levels are exactly the kernel.
    """
    n = group.degree
    if system.degree != n:
        raise ValueError("degree mismatch")
    m = system.block_count
    extended: list[Perm] = []
    for g in group.generators:
        img = _block_image(g, system)
        if img is None:
            raise ValueError(f"partition is not invariant: violated by generator {g}")
        extended.append(tuple(g) + tuple(n + b for b in img))
    chain = PermGroup(n + m, extended, base_prefix=tuple(range(n, n + m)))
    kernel_gens = [
        g[:n]
        for lvl_gens in chain.strong_generators_by_level()[m:]
        for g in lvl_gens
    ]
    return PermGroup(n, kernel_gens)


def is_normal_subgroup(sub: PermGroup, group: PermGroup) -> bool:
    """Whether sub is normal in group; requires sub <= group."""
    if sub.degree != group.degree:
        raise ValueError("degree mismatch")
    for h in sub.generators:
        if not group.contains(h):
            raise ValueError("not a subgroup: generator outside the group")
    for k in group.generators:
        kinv = pinv(k)
        for h in sub.generators:
            if not sub.contains(pmul(k, pmul(h, kinv))):
                return False
    return True


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    """Stabilizer of a point, via a chain rebuilt with that point first."""
    if not 0 <= point < group.degree:
        raise ValueError("point out of range")
    rebased = PermGroup(group.degree, group.generators, base_prefix=(point,))
    stab_gens = [g for lvl in rebased.strong_generators_by_level()[1:] for g in lvl]
    return PermGroup(group.degree, stab_gens)


def stabilizers_equal(group: PermGroup, p: int, q: int) -> bool:
    """Compare point stabilizers by order and mutual generator membership."""
    sp = point_stabilizer(group, p)
    sq = point_stabilizer(group, q)
    if sp.order() != sq.order():
        return False
    return all(sq.contains(g) for g in sp.generators) and all(
        sp.contains(g) for g in sq.generators
    )


# -- serialization ------------------------------------------------------------


def perm_to_json(p: Perm) -> list[int]:
    return list(p)


def perm_from_json(data: Sequence[int]) -> Perm:
    return _as_perm(data, len(data))


def permgroup_to_json(group: PermGroup) -> dict:
    return {
        "degree": group.degree,
        "generators": [list(g) for g in group.generators],
    }


def permgroup_from_json(data: dict) -> PermGroup:
    return PermGroup(int(data["degree"]), [tuple(g) for g in data["generators"]])
