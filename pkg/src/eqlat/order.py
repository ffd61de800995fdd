"""Finite posets and lattices over indexed elements.

Elements are identified by index 0..n-1; labels are presentation only. The
order relation is stored as bitmask rows: ``up[i]`` has bit j set iff i <= j,
and ``down[i]`` has bit j set iff j <= i. All derived structure (covers,
meet/join tables, atoms, coatoms) is computed from those rows.

Conventions
-----------
* masks are plain ints; bit k corresponds to element k
* ``iter_bits(m)`` yields set bit positions in increasing order
* cover lists are pairs (lower, upper)
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CycleError, InvariantViolation, NotALattice, UnknownLabel


def iter_bits(mask: int):
    """Yield the positions of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order: labels plus an up-set bitmask per element."""

    labels: tuple[str, ...]
    up: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise InvariantViolation("empty poset")
        if len(self.up) != n:
            raise InvariantViolation("up rows do not match label count")
        if len(set(self.labels)) != n:
            raise InvariantViolation("labels must be unique")
        full = (1 << n) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise InvariantViolation(f"up[{i}] has bits outside the carrier")
            if not (row >> i) & 1:
                raise InvariantViolation(f"missing reflexivity at {i}")
        for i in range(n):
            for j in iter_bits(self.up[i]):
                if i != j and (self.up[j] >> i) & 1:
                    raise InvariantViolation(f"antisymmetry fails at ({i}, {j})")
                if self.up[j] & ~self.up[i]:
                    raise InvariantViolation(f"transitivity fails at ({i}, {j})")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i in range(self.n):
            for j in iter_bits(self.up[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """All cover pairs (i, j) with i < j and nothing strictly between."""
        out = []
        for i in range(self.n):
            strict_up = self.up[i] & ~(1 << i)
            for j in iter_bits(strict_up):
                between = strict_up & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return tuple(out)

    def to_json(self) -> str:
        data = {
            "elements": list(self.labels),
            "covers": [[self.labels[i], self.labels[j]] for i, j in self.covers],
        }
        return json.dumps(data, indent=2)


def build_poset(labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> FinitePoset:
    """Build a poset from labels and cover pairs (lower, upper).

    Raises UnknownLabel for a cover mentioning a missing label and CycleError
    if the cover relation is not acyclic.
    """
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise InvariantViolation("labels must be unique")
    n = len(labels)
    succ = [0] * n
    for lo, hi in covers:
        if lo not in index:
            raise UnknownLabel(f"unknown label {lo!r} in cover")
        if hi not in index:
            raise UnknownLabel(f"unknown label {hi!r} in cover")
        succ[index[lo]] |= 1 << index[hi]
    up = [1 << i for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            for j in iter_bits(succ[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    for i in range(n):
        for j in iter_bits(up[i]):
            if i != j and (up[j] >> i) & 1:
                raise CycleError(f"cycle through {labels[i]!r} and {labels[j]!r}")
    return FinitePoset(labels, tuple(up))


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice: a poset together with total meet and join tables."""

    poset: FinitePoset
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    @property
    def up(self) -> tuple[int, ...]:
        return self.poset.up

    @property
    def down(self) -> tuple[int, ...]:
        return self.poset.down

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq(i, j)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def meet_all(self, items: Iterable[int]) -> int:
        """Meet of a family; the empty family meets to the top."""
        acc = self.top
        for x in items:
            acc = self.meet_table[acc][x]
        return acc

    def join_all(self, items: Iterable[int]) -> int:
        """Join of a family; the empty family joins to the bottom."""
        acc = self.bottom
        for x in items:
            acc = self.join_table[acc][x]
        return acc

    @cached_property
    def coatoms(self) -> tuple[int, ...]:
        return tuple(i for i, j in self.poset.covers if j == self.top)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        return tuple(j for i, j in self.poset.covers if i == self.bottom)

    def to_json(self) -> str:
        return self.poset.to_json()


def as_lattice(poset: FinitePoset) -> FiniteLattice:
    """Interpret a poset as a lattice; NotALattice names the first bad pair."""
    n = poset.n
    up, down = poset.up, poset.down
    meet_rows: list[tuple[int, ...]] = []
    join_rows: list[tuple[int, ...]] = []
    for i in range(n):
        mrow = []
        jrow = []
        for j in range(n):
            lower = down[i] & down[j]
            glb = [m for m in iter_bits(lower) if not (lower & ~down[m])]
            if len(glb) != 1:
                raise NotALattice(
                    f"no meet for {poset.labels[i]!r}, {poset.labels[j]!r}"
                )
            mrow.append(glb[0])
            upper = up[i] & up[j]
            lub = [m for m in iter_bits(upper) if not (upper & ~up[m])]
            if len(lub) != 1:
                raise NotALattice(
                    f"no join for {poset.labels[i]!r}, {poset.labels[j]!r}"
                )
            jrow.append(lub[0])
        meet_rows.append(tuple(mrow))
        join_rows.append(tuple(jrow))
    full = (1 << n) - 1
    bottoms = [i for i in range(n) if up[i] == full]
    tops = [i for i in range(n) if down[i] == full]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NotALattice("missing global bottom or top")
    return FiniteLattice(poset, tuple(meet_rows), tuple(join_rows), bottoms[0], tops[0])


def lattice_from_covers(labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> FiniteLattice:
    return as_lattice(build_poset(labels, covers))


def sub_poset(poset: FinitePoset, members: Sequence[int]) -> FinitePoset:
    """The induced sub-poset on the given element indices (in the given order)."""
    pos = {e: k for k, e in enumerate(members)}
    rows = []
    for e in members:
        row = 0
        for f in iter_bits(poset.up[e]):
            if f in pos:
                row |= 1 << pos[f]
        rows.append(row)
    return FinitePoset(tuple(poset.labels[e] for e in members), tuple(rows))


def complete_sublattice_closure(lat: FiniteLattice, seeds: Iterable[int]) -> FiniteLattice:
    """Smallest complete sublattice of ``lat`` containing the seeds.

    Contains bottom and top and is closed under pairwise meet and join, which
    for a finite carrier is the full completeness condition. Labels carry over,
    so closure elements can be located in the ambient lattice by label.
    """
    members = {lat.bottom, lat.top}
    members.update(seeds)
    frontier = True
    while frontier:
        frontier = False
        for a, b in itertools.combinations(sorted(members), 2):
            for c in (lat.meet_table[a][b], lat.join_table[a][b]):
                if c not in members:
                    members.add(c)
                    frontier = True
    order = sorted(members)
    return as_lattice(sub_poset(lat.poset, order))


def dual(lat: FiniteLattice) -> FiniteLattice:
    """The order-dual lattice: same labels, reversed order, tables swapped."""
    p = lat.poset
    flipped = FinitePoset(p.labels, p.down)
    return FiniteLattice(flipped, lat.join_table, lat.meet_table, lat.top, lat.bottom)


def poset_from_json(text: str) -> FinitePoset:
    data = json.loads(text)
    if not isinstance(data, dict) or "elements" not in data:
        raise InvariantViolation("poset JSON needs an 'elements' key")
    labels = [str(x) for x in data["elements"]]
    covers = [(str(lo), str(hi)) for lo, hi in data.get("covers", [])]
    return build_poset(labels, covers)


def dot_hasse(poset: FinitePoset, name: str = "hasse") -> str:
    """Graphviz DOT for the Hasse diagram, drawn bottom to top."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for lab in poset.labels:
        lines.append(f"  {json.dumps(lab)};")
    for i, j in poset.covers:
        lines.append(f"  {json.dumps(poset.labels[i])} -> {json.dumps(poset.labels[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def find_isomorphism(a: FiniteLattice, b: FiniteLattice, max_n: int = 12) -> tuple[int, ...] | None:
    """An order isomorphism a -> b as an index map, or None.

    Brute force with degree-invariant pruning; refuses carriers above
    ``max_n`` (general isomorphism search is out of scope at larger sizes).
    """
    if a.n != b.n:
        return None
    if a.n > max_n:
        raise InvariantViolation(f"isomorphism search capped at {max_n} elements")

    def profile(lat: FiniteLattice, i: int) -> tuple[int, int]:
        return (popcount(lat.up[i]), popcount(lat.down[i]))

    prof_b: dict[tuple[int, int], list[int]] = {}
    for j in range(b.n):
        prof_b.setdefault(profile(b, j), []).append(j)
    candidates = []
    for i in range(a.n):
        opts = prof_b.get(profile(a, i))
        if not opts:
            return None
        candidates.append(opts)

    order = sorted(range(a.n), key=lambda i: len(candidates[i]))
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == a.n:
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for i2, j2 in assignment.items():
                if a.leq(i, i2) != b.leq(j, j2) or a.leq(i2, i) != b.leq(j2, j):
                    ok = False
                    break
            if ok:
                assignment[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del assignment[i]
                used.discard(j)
        return False

    if extend(0):
        return tuple(assignment[i] for i in range(a.n))
    return None
