"""Congruences of finite join-semilattices with operators.

A congruence is an equivalence relation compatible with join translation
(x ~ y implies x + z ~ y + z) and with every operator (x ~ y implies
f(x) ~ f(y)). It is stored by representative: ``rep[i]`` is the least index of
the block containing i, so equality and hashing are structural.

The module also covers the two relation views of the congruence lattice:

* ``don``: reflexive transitive compatible relations containing >=
* ``eon``: compatible partial orders inside <= that are interval-closed

with the four transforms between Con, Don and Eon, plus independent
enumerations of all three families so bijectivity can be tested for real.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolation, SizeGuard, resolve_budget
from .order import FiniteLattice, FinitePoset, as_lattice, iter_bits, popcount
from .semilattice import IdealSet, OpSemilattice, ideal, operator_monoid


@dataclass(frozen=True)
class Congruence:
    """A congruence as a representative map (least block member per element)."""

    rep: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rep)

    def relates(self, x: int, y: int) -> bool:
        return self.rep[x] == self.rep[y]

    def classes(self) -> tuple[tuple[int, ...], ...]:
        by_rep: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            by_rep.setdefault(r, []).append(i)
        return tuple(tuple(v) for _, v in sorted(by_rep.items()))

    @property
    def block_count(self) -> int:
        return len(set(self.rep))

    def zero_class_mask(self, s: OpSemilattice) -> int:
        r = self.rep[s.zero]
        mask = 0
        for i, ri in enumerate(self.rep):
            if ri == r:
                mask |= 1 << i
        return mask

    def zero_class(self, s: OpSemilattice) -> IdealSet:
        return ideal(s, self.zero_class_mask(s))

    def refines(self, other: "Congruence") -> bool:
        """self <= other in the congruence order."""
        return all(other.rep[r] == other.rep[i] for i, r in enumerate(self.rep))

    def meet(self, other: "Congruence") -> "Congruence":
        """Common refinement (block intersection)."""
        first: dict[tuple[int, int], int] = {}
        rep = []
        for i in range(self.n):
            key = (self.rep[i], other.rep[i])
            rep.append(first.setdefault(key, i))
        return Congruence(tuple(rep))

    def block_string(self, s: OpSemilattice) -> str:
        parts = []
        for cls in self.classes():
            parts.append("[" + " ".join(s.labels[i] for i in cls) + "]")
        return "".join(parts)

    def block_lists(self, s: OpSemilattice) -> list[list[str]]:
        return [[s.labels[i] for i in cls] for cls in self.classes()]


def _canonical_rep(parent_of: Sequence[int]) -> tuple[int, ...]:
    """Normalize so each element points at the least member of its block."""
    n = len(parent_of)
    least: dict[int, int] = {}
    for i in range(n):
        r = parent_of[i]
        if r not in least or i < least[r]:
            least[r] = i
    return tuple(least[parent_of[i]] for i in range(n))


def make_congruence(
    s: OpSemilattice, blocks_or_rep: Sequence[int] | Iterable[Iterable[int]], validate: bool = True
) -> Congruence:
    """Build a congruence from a rep vector or an iterable of blocks."""
    if blocks_or_rep and not isinstance(next(iter(blocks_or_rep)), int):
        rep = [-1] * s.n
        for block in blocks_or_rep:  # type: ignore[union-attr]
            members = sorted(block)
            for m in members:
                if rep[m] != -1:
                    raise InvariantViolation("blocks overlap")
                rep[m] = members[0]
        if any(r == -1 for r in rep):
            raise InvariantViolation("blocks do not cover the carrier")
    else:
        rep = list(blocks_or_rep)  # type: ignore[arg-type]
        if len(rep) != s.n:
            raise InvariantViolation("rep vector has wrong length")
    theta = Congruence(_canonical_rep(rep))
    if validate:
        _validate_congruence(s, theta)
    return theta


def _validate_congruence(s: OpSemilattice, theta: Congruence) -> None:
    n = s.n
    jt = s.join_t
    rep = theta.rep
    for x in range(n):
        for y in range(x + 1, n):
            if rep[x] != rep[y]:
                continue
            for z in range(n):
                if rep[jt[x][z]] != rep[jt[y][z]]:
                    raise InvariantViolation(
                        f"not join-compatible at ({s.labels[x]!r}, {s.labels[y]!r}) + {s.labels[z]!r}"
                    )
            for name, images in s.operators:
                if rep[images[x]] != rep[images[y]]:
                    raise InvariantViolation(
                        f"not compatible with operator {name!r} at ({s.labels[x]!r}, {s.labels[y]!r})"
                    )


def congruence_generated(s: OpSemilattice, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence relating every given pair (union-find plus worklist)."""
    n = s.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue: list[tuple[int, int]] = []

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra
        queue.append((a, b))

    for a, b in pairs:
        union(a, b)
    jt = s.join_t
    while queue:
        a, b = queue.pop()
        for z in range(n):
            union(jt[a][z], jt[b][z])
        for _, images in s.operators:
            union(images[a], images[b])
    return Congruence(_canonical_rep([find(x) for x in range(n)]))


def _chain_pairs(theta: Congruence) -> list[tuple[int, int]]:
    pairs = []
    for cls in theta.classes():
        r = cls[0]
        pairs.extend((r, m) for m in cls[1:])
    return pairs


def join_congruences(s: OpSemilattice, a: Congruence, b: Congruence) -> Congruence:
    return congruence_generated(s, _chain_pairs(a) + _chain_pairs(b))


def meet_congruences(a: Congruence, b: Congruence) -> Congruence:
    return a.meet(b)


@dataclass(frozen=True)
class CongruenceLattice:
    """All congruences of a structure, with their lattice order.

    ``congruences[i]`` corresponds to element i of ``lattice``; index 0 is the
    identity congruence and the last index the all-in-one congruence. Labels in
    the lattice are the block strings.
    """

    semilattice: OpSemilattice
    congruences: tuple[Congruence, ...]
    lattice: FiniteLattice

    @property
    def n(self) -> int:
        return len(self.congruences)

    def index_of(self, theta: Congruence) -> int:
        try:
            return self.congruences.index(theta)
        except ValueError:
            raise InvariantViolation("congruence not in this lattice") from None

    def to_json(self) -> str:
        data = {
            "count": self.n,
            "elements": [c.block_lists(self.semilattice) for c in self.congruences],
            "covers": [
                [self.lattice.labels[i], self.lattice.labels[j]]
                for i, j in self.lattice.poset.covers
            ],
        }
        return json.dumps(data, indent=2)


def all_congruences(s: OpSemilattice, max_count: int | None = None) -> CongruenceLattice:
    """The full congruence lattice via join closure of principal congruences."""
    cap = resolve_budget(max_count, 100_000)
    delta = Congruence(tuple(range(s.n)))
    principals = []
    seen = {delta}
    for a in range(s.n):
        for b in range(a + 1, s.n):
            c = congruence_generated(s, [(a, b)])
            if c not in seen:
                seen.add(c)
                principals.append(c)
    work = list(principals)
    while work:
        c = work.pop()
        for p in principals:
            j = join_congruences(s, c, p)
            if j not in seen:
                seen.add(j)
                work.append(j)
                if len(seen) > cap:
                    raise SizeGuard(f"congruence count exceeds cap {cap}")
    ordered = sorted(seen, key=lambda c: (-c.block_count, c.rep))
    rows = []
    for c in ordered:
        row = 0
        for k, d in enumerate(ordered):
            if c.refines(d):
                row |= 1 << k
        rows.append(row)
    labels = tuple(c.block_string(s) for c in ordered)
    lattice = as_lattice(FinitePoset(labels, tuple(rows)))
    return CongruenceLattice(s, tuple(ordered), lattice)


def _as_ideal_mask(s: OpSemilattice, theta) -> int:
    """Normalize a Congruence / IdealSet / mask / iterable to an ideal mask."""
    if isinstance(theta, Congruence):
        return theta.zero_class_mask(s)
    if isinstance(theta, IdealSet):
        return theta.mask
    if isinstance(theta, int):
        return ideal(s, theta).mask
    return ideal(s, list(theta)).mask


def _require_operator_closed(s: OpSemilattice, mask: int) -> None:
    for name, images in s.operators:
        for i in iter_bits(mask):
            if not (mask >> images[i]) & 1:
                raise InvariantViolation(
                    f"ideal is not closed under operator {name!r} at {s.labels[i]!r}"
                )


def eta(s: OpSemilattice, theta) -> Congruence:
    """Least congruence whose 0-class is the 0-class of ``theta``.

    x ~ y iff x + i = y + i for some i in the 0-class. Accepts a congruence,
    an IdealSet, a mask, or an iterable of indices; the class must be closed
    under the operators. The result is validated as a congruence and checked
    to have exactly the requested 0-class.
    """
    mask = _as_ideal_mask(s, theta)
    _require_operator_closed(s, mask)
    n = s.n
    jt = s.join_t
    members = list(iter_bits(mask))
    pairs = []
    for x in range(n):
        for y in range(x + 1, n):
            if any(jt[x][i] == jt[y][i] for i in members):
                pairs.append((x, y))
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    result = Congruence(_canonical_rep([find(x) for x in range(n)]))
    _validate_congruence(s, result)
    if result.zero_class_mask(s) != mask:
        raise InvariantViolation("least-congruence construction changed the 0-class")
    if isinstance(theta, Congruence) and not result.refines(theta):
        raise InvariantViolation("eta does not refine its argument")
    return result


def tau(s: OpSemilattice, theta) -> Congruence:
    """Greatest congruence whose 0-class is the 0-class of ``theta``.

    x ~ y iff x and y land inside the class under exactly the same members of
    the operator monoid (identity included). Validated like ``eta``.
    """
    mask = _as_ideal_mask(s, theta)
    _require_operator_closed(s, mask)
    monoid = operator_monoid(s)
    sig: dict[int, int] = {}
    for x in range(s.n):
        v = 0
        for k, h in enumerate(monoid):
            if (mask >> h[x]) & 1:
                v |= 1 << k
        sig[x] = v
    first: dict[int, int] = {}
    rep = []
    for x in range(s.n):
        rep.append(first.setdefault(sig[x], x))
    result = Congruence(_canonical_rep(rep))
    _validate_congruence(s, result)
    if result.zero_class_mask(s) != mask:
        raise InvariantViolation("greatest-congruence construction changed the 0-class")
    if isinstance(theta, Congruence) and not theta.refines(result):
        raise InvariantViolation("tau is not refined by its argument")
    return result


@dataclass(frozen=True)
class OrderedRelation:
    """A binary relation as bitmask rows; ``kind`` is 'don' or 'eon'."""

    rows: tuple[int, ...]
    kind: str

    @property
    def n(self) -> int:
        return len(self.rows)

    def holds(self, x: int, y: int) -> bool:
        return bool((self.rows[x] >> y) & 1)

    def pair_count(self) -> int:
        return sum(popcount(r) for r in self.rows)

    def contains(self, other: "OrderedRelation") -> bool:
        return all(o & ~r == 0 for r, o in zip(self.rows, other.rows))


def validate_don(s: OpSemilattice, rel: OrderedRelation) -> None:
    """Reflexive, transitive, compatible, and containing >=."""
    n = s.n
    rows = rel.rows
    for x in range(n):
        if s.down[x] & ~rows[x]:
            raise InvariantViolation(f"relation misses >= at {s.labels[x]!r}")
        for y in iter_bits(rows[x]):
            if rows[y] & ~rows[x]:
                raise InvariantViolation(f"not transitive at ({s.labels[x]!r}, {s.labels[y]!r})")
    _check_compatible(s, rows)


def validate_eon(s: OpSemilattice, rel: OrderedRelation) -> None:
    """Reflexive, transitive, compatible, inside <=, and interval-closed."""
    n = s.n
    rows = rel.rows
    for x in range(n):
        if not (rows[x] >> x) & 1:
            raise InvariantViolation(f"not reflexive at {s.labels[x]!r}")
        if rows[x] & ~s.up[x]:
            raise InvariantViolation(f"relation leaves <= at {s.labels[x]!r}")
        for y in iter_bits(rows[x]):
            if rows[y] & ~rows[x]:
                raise InvariantViolation(f"not transitive at ({s.labels[x]!r}, {s.labels[y]!r})")
            between = s.up[x] & s.down[y]
            if between & ~rows[x]:
                raise InvariantViolation(
                    f"not interval-closed at ({s.labels[x]!r}, {s.labels[y]!r})"
                )
    _check_compatible(s, rows)


def _check_compatible(s: OpSemilattice, rows: Sequence[int]) -> None:
    n = s.n
    jt = s.join_t
    for x in range(n):
        for y in iter_bits(rows[x]):
            for z in range(n):
                if not (rows[jt[x][z]] >> jt[y][z]) & 1:
                    raise InvariantViolation(
                        f"not join-compatible at ({s.labels[x]!r}, {s.labels[y]!r}) + {s.labels[z]!r}"
                    )
            for name, images in s.operators:
                if not (rows[images[x]] >> images[y]) & 1:
                    raise InvariantViolation(
                        f"not compatible with operator {name!r} at ({s.labels[x]!r}, {s.labels[y]!r})"
                    )


def don_of(s: OpSemilattice, theta: Congruence) -> OrderedRelation:
    """Compose the congruence with >= : x R y iff x is congruent to some w >= y."""
    rows = []
    for x in range(s.n):
        acc = 0
        for w in range(s.n):
            if theta.rep[w] == theta.rep[x]:
                acc |= s.down[w]
        rows.append(acc)
    rel = OrderedRelation(tuple(rows), "don")
    validate_don(s, rel)
    return rel


def con_of_don(s: OpSemilattice, rel: OrderedRelation) -> Congruence:
    """x ~ y iff both x R x+y and y R x+y."""
    validate_don(s, rel)
    n = s.n
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in range(n):
        for y in range(x + 1, n):
            j = s.join_t[x][y]
            if rel.holds(x, j) and rel.holds(y, j):
                ra, rb = find(x), find(y)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    theta = Congruence(_canonical_rep([find(x) for x in range(n)]))
    _validate_congruence(s, theta)
    return theta


def eon_of_don(s: OpSemilattice, rel: OrderedRelation) -> OrderedRelation:
    """Intersect with <=."""
    validate_don(s, rel)
    rows = tuple(rel.rows[x] & s.up[x] for x in range(s.n))
    out = OrderedRelation(rows, "eon")
    validate_eon(s, out)
    return out


def don_of_eon(s: OpSemilattice, rel: OrderedRelation) -> OrderedRelation:
    """Compose with >= : x R y iff x S w for some w >= y."""
    validate_eon(s, rel)
    rows = []
    for x in range(s.n):
        acc = 0
        for w in iter_bits(rel.rows[x]):
            acc |= s.down[w]
        rows.append(acc)
    out = OrderedRelation(tuple(rows), "don")
    validate_don(s, out)
    return out


def _closure_rows(
    s: OpSemilattice, rows: list[int], interval: bool
) -> tuple[int, ...]:
    """Close rows under transitivity, compatibility and (optionally) intervals."""
    n = s.n
    jt = s.join_t
    changed = True
    while changed:
        changed = False
        for k in range(n):
            for i in range(n):
                if (rows[i] >> k) & 1 and rows[k] & ~rows[i]:
                    rows[i] |= rows[k]
                    changed = True
        for x in range(n):
            for y in iter_bits(rows[x]):
                for z in range(n):
                    t, b = jt[x][z], jt[y][z]
                    if not (rows[t] >> b) & 1:
                        rows[t] |= 1 << b
                        changed = True
                for _, images in s.operators:
                    if not (rows[images[x]] >> images[y]) & 1:
                        rows[images[x]] |= 1 << images[y]
                        changed = True
        if interval:
            for x in range(n):
                acc = rows[x]
                for z in iter_bits(rows[x]):
                    acc |= s.up[x] & s.down[z]
                if acc != rows[x]:
                    rows[x] = acc
                    changed = True
    return tuple(rows)


def don_generated(s: OpSemilattice, pairs: Iterable[tuple[int, int]]) -> OrderedRelation:
    rows = list(s.down)
    for a, b in pairs:
        rows[a] |= 1 << b
    return OrderedRelation(_closure_rows(s, rows, interval=False), "don")


def eon_generated(s: OpSemilattice, pairs: Iterable[tuple[int, int]]) -> OrderedRelation:
    rows = [1 << x for x in range(s.n)]
    for a, b in pairs:
        if not s.leq(a, b):
            raise InvariantViolation("eon generators must satisfy a <= b")
        rows[a] |= 1 << b
    return OrderedRelation(_closure_rows(s, rows, interval=True), "eon")


def _all_relations(
    s: OpSemilattice,
    bottom: OrderedRelation,
    principals: list[OrderedRelation],
    interval: bool,
    kind: str,
    cap: int,
) -> tuple[OrderedRelation, ...]:
    seen = {bottom.rows}
    for p in principals:
        seen.add(p.rows)
    work = [p.rows for p in principals]
    while work:
        rows = work.pop()
        for p in principals:
            merged = [a | b for a, b in zip(rows, p.rows)]
            closed = _closure_rows(s, merged, interval)
            if closed not in seen:
                seen.add(closed)
                work.append(closed)
                if len(seen) > cap:
                    raise SizeGuard(f"{kind} count exceeds cap {cap}")
    ordered = sorted(seen, key=lambda r: (sum(popcount(v) for v in r), r))
    return tuple(OrderedRelation(r, kind) for r in ordered)


def all_don(s: OpSemilattice, max_count: int | None = None) -> tuple[OrderedRelation, ...]:
    """Every don relation, enumerated by join closure of principal relations."""
    cap = resolve_budget(max_count, 100_000)
    bottom = OrderedRelation(tuple(s.down), "don")
    principals = []
    seen = {bottom.rows}
    for a in range(s.n):
        for b in range(s.n):
            if (s.down[a] >> b) & 1:
                continue
            p = don_generated(s, [(a, b)])
            if p.rows not in seen:
                seen.add(p.rows)
                principals.append(p)
    return _all_relations(s, bottom, principals, False, "don", cap)


def all_eon(s: OpSemilattice, max_count: int | None = None) -> tuple[OrderedRelation, ...]:
    """Every eon relation, enumerated by join closure of principal relations."""
    cap = resolve_budget(max_count, 100_000)
    bottom = OrderedRelation(tuple(1 << x for x in range(s.n)), "eon")
    principals = []
    seen = {bottom.rows}
    for a in range(s.n):
        for b in iter_bits(s.up[a]):
            if a == b:
                continue
            p = eon_generated(s, [(a, b)])
            if p.rows not in seen:
                seen.add(p.rows)
                principals.append(p)
    return _all_relations(s, bottom, principals, True, "eon", cap)


def quotient(s: OpSemilattice, theta: Congruence) -> OpSemilattice:
    """The quotient semilattice; classes become elements labeled by their members."""
    classes = theta.classes()
    class_of = {}
    for k, cls in enumerate(classes):
        for m in cls:
            class_of[m] = k
    labels = []
    for cls in classes:
        if len(cls) == 1:
            labels.append(s.labels[cls[0]])
        else:
            labels.append("{" + ",".join(s.labels[m] for m in cls) + "}")
    n = len(classes)
    table = [[0] * n for _ in range(n)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            table[i][j] = class_of[s.join_t[ci[0]][cj[0]]]
    operators = []
    for name, images in s.operators:
        operators.append((name, [class_of[images[cls[0]]] for cls in classes]))
    return OpSemilattice(
        tuple(labels),
        tuple(tuple(r) for r in table),
        class_of[s.zero],
        tuple((nm, tuple(im)) for nm, im in operators),
    )
