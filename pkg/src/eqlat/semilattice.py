"""Finite join-semilattices with zero, optionally carrying operators.

An operator is a unary map f with f(0) = 0 and f(x + y) = f(x) + f(y). The
carrier is indexed 0..n-1; the join table is total. Because the carrier is
finite and has a top (the join of everything), pairwise meets always exist as
well, so every structure here also has a lattice view.

Ideals are down-closed, join-closed subsets containing zero, stored as masks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvariantViolation,
    NotJoinHomomorphism,
    SizeGuard,
    UnknownLabel,
    ZeroNotPreserved,
    resolve_budget,
)
from .order import FiniteLattice, FinitePoset, as_lattice, iter_bits, popcount


@dataclass(frozen=True)
class OpSemilattice:
    """Join-semilattice with zero and a (possibly empty) tuple of named operators."""

    labels: tuple[str, ...]
    join_t: tuple[tuple[int, ...], ...]
    zero: int
    operators: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise InvariantViolation("empty carrier")
        if len(set(self.labels)) != n:
            raise InvariantViolation("labels must be unique")
        if len(self.join_t) != n or any(len(r) != n for r in self.join_t):
            raise InvariantViolation("join table must be n by n")
        jt = self.join_t
        for i in range(n):
            if jt[i][i] != i:
                raise InvariantViolation(f"join not idempotent at {i}")
            if jt[self.zero][i] != i:
                raise InvariantViolation(f"zero is not neutral at {i}")
            for j in range(i + 1, n):
                if jt[i][j] != jt[j][i]:
                    raise InvariantViolation(f"join not commutative at ({i}, {j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if jt[jt[i][j]][k] != jt[i][jt[j][k]]:
                        raise InvariantViolation(
                            f"join not associative at ({i}, {j}, {k})"
                        )
        seen = set()
        for name, images in self.operators:
            if name in seen:
                raise InvariantViolation(f"duplicate operator name {name!r}")
            seen.add(name)
            if len(images) != n or any(not (0 <= v < n) for v in images):
                raise InvariantViolation(f"operator {name!r} is not a map on the carrier")
            if images[self.zero] != self.zero:
                raise ZeroNotPreserved(f"operator {name!r} moves zero")
            for i in range(n):
                for j in range(n):
                    if images[jt[i][j]] != jt[images[i]][images[j]]:
                        raise NotJoinHomomorphism(
                            f"operator {name!r} fails at ({self.labels[i]!r}, {self.labels[j]!r})"
                        )

    @property
    def n(self) -> int:
        return len(self.labels)

    def join(self, i: int, j: int) -> int:
        return self.join_t[i][j]

    def join_all(self, items: Iterable[int]) -> int:
        acc = self.zero
        for x in items:
            acc = self.join_t[acc][x]
        return acc

    def leq(self, i: int, j: int) -> bool:
        return self.join_t[i][j] == j

    @cached_property
    def up(self) -> tuple[int, ...]:
        rows = []
        for i in range(self.n):
            row = 0
            for j in range(self.n):
                if self.join_t[i][j] == j:
                    row |= 1 << j
            rows.append(row)
        return tuple(rows)

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i in range(self.n):
            for j in iter_bits(self.up[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def top(self) -> int:
        return self.join_all(range(self.n))

    @cached_property
    def lattice(self) -> FiniteLattice:
        """The lattice view; meets exist because the carrier is finite with a top."""
        return as_lattice(FinitePoset(self.labels, self.up))

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def reduct(self) -> "OpSemilattice":
        """The same semilattice with all operators removed."""
        if not self.operators:
            return self
        return replace(self, operators=())

    def with_operators(self, operators: Sequence[tuple[str, Sequence[int]]]) -> "OpSemilattice":
        ops = tuple((name, tuple(images)) for name, images in operators)
        return replace(self, operators=ops)

    def to_json(self) -> str:
        covers = []
        poset = FinitePoset(self.labels, self.up)
        for i, j in poset.covers:
            covers.append([self.labels[i], self.labels[j]])
        data: dict = {
            "elements": list(self.labels),
            "covers": covers,
            "zero": self.labels[self.zero],
        }
        if self.operators:
            data["operators"] = {
                name: [self.labels[v] for v in images] for name, images in self.operators
            }
        return json.dumps(data, indent=2)


def from_join_table(
    labels: Sequence[str],
    join_table: Sequence[Sequence[int]],
    zero: int | str,
    operators: Sequence[tuple[str, Sequence[int]]] = (),
) -> OpSemilattice:
    labels = tuple(labels)
    if isinstance(zero, str):
        if zero not in labels:
            raise UnknownLabel(f"unknown zero label {zero!r}")
        zero = labels.index(zero)
    return OpSemilattice(
        labels,
        tuple(tuple(row) for row in join_table),
        zero,
        tuple((name, tuple(images)) for name, images in operators),
    )


def from_lattice(
    lat: FiniteLattice, operators: Sequence[tuple[str, Sequence[int]]] = ()
) -> OpSemilattice:
    """View a finite lattice as a join-semilattice with zero = lattice bottom."""
    return from_join_table(lat.labels, lat.join_table, lat.bottom, operators)


def semilattice_from_json(text: str) -> OpSemilattice:
    """Parse {"elements", "covers" or "joins", "zero", "operators"?} JSON."""
    data = json.loads(text)
    if not isinstance(data, dict) or "elements" not in data:
        raise InvariantViolation("semilattice JSON needs an 'elements' key")
    labels = tuple(str(x) for x in data["elements"])
    index = {lab: i for i, lab in enumerate(labels)}

    def look(lab) -> int:
        lab = str(lab)
        if lab not in index:
            raise UnknownLabel(f"unknown label {lab!r}")
        return index[lab]

    if "joins" in data:
        n = len(labels)
        table = [[None] * n for _ in range(n)]
        for a, b, c in data["joins"]:
            ia, ib, ic = look(a), look(b), look(c)
            table[ia][ib] = ic
            table[ib][ia] = ic
        for i in range(n):
            table[i][i] = i
        if any(v is None for row in table for v in row):
            raise InvariantViolation("joins list does not cover every pair")
        join_table = table
    elif "covers" in data:
        from .order import build_poset  # local import to keep module load light

        poset = build_poset(labels, [(str(lo), str(hi)) for lo, hi in data["covers"]])
        lat = as_lattice(poset)
        join_table = [list(r) for r in lat.join_table]
    else:
        raise InvariantViolation("semilattice JSON needs 'joins' or 'covers'")

    zero = look(data["zero"]) if "zero" in data else None
    if zero is None:
        candidates = [i for i in range(len(labels)) if all(join_table[i][j] == j for j in range(len(labels)))]
        if len(candidates) != 1:
            raise InvariantViolation("cannot infer zero; provide a 'zero' key")
        zero = candidates[0]

    operators = []
    for name, images in (data.get("operators") or {}).items():
        operators.append((str(name), [look(v) for v in images]))
    return from_join_table(labels, join_table, zero, operators)


def operator_monoid(s: OpSemilattice, max_size: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Closure of the operator set plus identity under composition.

    Breadth-first from the identity, deterministic order. Raises SizeGuard if
    the monoid outgrows the cap (default 10000, overridable via EQLAT_BUDGET).
    """
    cap = resolve_budget(max_size, 10_000)
    ident = tuple(range(s.n))
    generators = [images for _, images in s.operators]
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for f in generators:
                h = tuple(f[x] for x in g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    new.append(h)
                    if len(order) > cap:
                        raise SizeGuard(f"operator monoid exceeds cap {cap}")
        frontier = new
    return tuple(order)


@dataclass(frozen=True)
class IdealSet:
    """An ideal stored as a bitmask over the carrier (validated at construction)."""

    mask: int
    n: int

    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def member_labels(self, s: OpSemilattice) -> tuple[str, ...]:
        return tuple(s.labels[i] for i in iter_bits(self.mask))

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    @property
    def size(self) -> int:
        return popcount(self.mask)


def ideal(s: OpSemilattice, members: int | Iterable[int]) -> IdealSet:
    """Validate and wrap an ideal given as a mask or an iterable of indices."""
    mask = members if isinstance(members, int) else 0
    if not isinstance(members, int):
        for i in members:
            mask |= 1 << i
    if not (mask >> s.zero) & 1:
        raise InvariantViolation("ideal must contain zero")
    for i in iter_bits(mask):
        if s.down[i] & ~mask:
            raise InvariantViolation(f"ideal not down-closed at {s.labels[i]!r}")
        for j in iter_bits(mask):
            if not (mask >> s.join_t[i][j]) & 1:
                raise InvariantViolation(
                    f"ideal not join-closed at ({s.labels[i]!r}, {s.labels[j]!r})"
                )
    return IdealSet(mask, s.n)


def _downsets(s: OpSemilattice) -> list[int]:
    """All down-closed subsets, by incremental insertion in a linear extension."""
    order = sorted(range(s.n), key=lambda i: popcount(s.down[i]))
    sets = [0]
    for e in order:
        need = s.down[e] & ~(1 << e)
        sets += [m | (1 << e) for m in sets if need & ~m == 0]
    return sets


def ideals(s: OpSemilattice, f_closed_only: bool = False) -> tuple[IdealSet, ...]:
    """All ideals, sorted by (size, mask).

    With ``f_closed_only`` keep only ideals closed under every operator. The
    enumeration walks down-closed sets and filters for join closure; for a
    finite carrier the result coincides with the principal downsets.
    """
    out = []
    for mask in _downsets(s):
        if not (mask >> s.zero) & 1:
            continue
        ok = True
        mems = list(iter_bits(mask))
        for a in mems:
            for b in mems:
                if not (mask >> s.join_t[a][b]) & 1:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if f_closed_only:
            for _, images in s.operators:
                if any(not (mask >> images[i]) & 1 for i in mems):
                    ok = False
                    break
        if ok:
            out.append(IdealSet(mask, s.n))
    out.sort(key=lambda ideal_set: (ideal_set.size, ideal_set.mask))
    return tuple(out)


def join_irreducibles(s: OpSemilattice) -> tuple[int, ...]:
    """Elements with exactly one lower cover (zero excluded)."""
    poset = FinitePoset(s.labels, s.up)
    lower_count = [0] * s.n
    for _, j in poset.covers:
        lower_count[j] += 1
    return tuple(i for i in range(s.n) if i != s.zero and lower_count[i] == 1)


def all_endomorphisms(s: OpSemilattice) -> tuple[tuple[int, ...], ...]:
    """Every map with f(0) = 0 and f(x + y) = f(x) + f(y), in deterministic order.

    Candidates are generated by assigning images to the join-irreducible
    elements and extending by joins, then verified on all pairs.
    """
    irr = join_irreducibles(s)
    n = s.n
    results = []
    assign = [0] * len(irr)

    def derived_map() -> list[int]:
        f = [s.zero] * n
        for x in range(n):
            acc = s.zero
            for k, j in enumerate(irr):
                if s.leq(j, x):
                    acc = s.join_t[acc][assign[k]]
            f[x] = acc
        return f

    def rec(k: int) -> None:
        if k == len(irr):
            f = derived_map()
            for x in range(n):
                fx = f[x]
                for y in range(x, n):
                    if f[s.join_t[x][y]] != s.join_t[fx][f[y]]:
                        return
            results.append(tuple(f))
            return
        for v in range(n):
            assign[k] = v
            rec(k + 1)

    rec(0)
    uniq = sorted(set(results))
    return tuple(uniq)
