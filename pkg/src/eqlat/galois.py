"""Congruences versus families of ideals, and two appendix dualities.

Three strands share this module:

* the order-reversing bijection between congruences of a finite
  join-semilattice with zero and the meet-closed families of its ideals
  that contain the improper ideal (``galois_h`` / ``galois_rho`` /
  ``verify_consl``);
* distributive quasiorders on a finite meet-semilattice with unit and
  their lattices of closed subalgebras (``QuasiOrder``,
  ``sub_closed_lattice``, ``quasiorder_from_sublattice``);
* filterable sublattices of the congruence lattice and the interior map
  they induce (``check_filterable``, ``sublattice_interior``).

Meet-semilattices with unit are represented by their dual join-semilattice:
the structure's meet is the carrier's join and the structure's unit is the
carrier's zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .congruence import (
    Congruence,
    CongruenceLattice,
    all_congruences,
    eta,
    join_congruences,
    make_congruence,
    meet_congruences,
)
from .errors import InvariantViolation, SizeGuard, resolve_budget
from .interior import AxiomReport, CheckResult, InteriorMap, Verdict
from .order import FiniteLattice, FinitePoset, as_lattice, iter_bits, popcount
from .semilattice import IdealSet, OpSemilattice, ideals


def _set_label(labels: Sequence[str], mask: int) -> str:
    return "{" + ",".join(labels[i] for i in iter_bits(mask)) + "}"


def _containment_lattice(labels: Sequence[str], masks: Sequence[int]) -> FiniteLattice:
    """Lattice of the given subsets ordered by containment."""
    names = [_set_label(labels, m) for m in masks]
    up = []
    for m in masks:
        row = 0
        for j, other in enumerate(masks):
            if m & ~other == 0:
                row |= 1 << j
        up.append(row)
    return as_lattice(FinitePoset(tuple(names), tuple(up)))


def ideal_lattice(s: OpSemilattice) -> FiniteLattice:
    """All ideals of the semilattice reduct, ordered by containment."""
    masks = [i.mask for i in ideals(s)]
    return _containment_lattice(s.labels, masks)


@dataclass(frozen=True)
class AlgebraicSubsetFamily:
    """Meet-closed subsets of a finite lattice that contain its top.

    On a finite carrier this is the whole content of "closed under
    arbitrary meets and nonempty directed joins": directed subsets have
    maxima, and the empty meet contributes the top.
    """

    ambient: FiniteLattice
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        l = self.ambient
        for m in self.members:
            if not (m >> l.top) & 1:
                raise InvariantViolation(f"member {_set_label(l.labels, m)} misses the top")
            elems = list(iter_bits(m))
            for a in elems:
                for b in elems:
                    if not (m >> l.meet(a, b)) & 1:
                        raise InvariantViolation(
                            f"member {_set_label(l.labels, m)} is not meet-closed"
                        )
        if len(set(self.members)) != len(self.members):
            raise InvariantViolation("duplicate members")

    def __len__(self) -> int:
        return len(self.members)

    def member_labels(self, i: int) -> tuple[str, ...]:
        return tuple(self.ambient.labels[e] for e in iter_bits(self.members[i]))

    @cached_property
    def lattice(self) -> FiniteLattice:
        return _containment_lattice(self.ambient.labels, self.members)

    def to_json(self) -> str:
        return json.dumps({"members": [list(self.member_labels(i)) for i in range(len(self))]})


def _normalize_relation(l: FiniteLattice, rel) -> list[int]:
    """Rows of a binary relation given as (source, target) pairs."""
    rows = [0] * l.n
    idx = l.poset.index
    for a, b in rel:
        ia = idx[a] if isinstance(a, str) else int(a)
        ib = idx[b] if isinstance(b, str) else int(b)
        if not (0 <= ia < l.n and 0 <= ib < l.n):
            raise InvariantViolation(f"relation pair {(a, b)!r} is out of range")
        rows[ia] |= 1 << ib
    return rows


def algebraic_subsets(
    l: FiniteLattice,
    closed_under=None,
    max_subsets: int | None = None,
) -> AlgebraicSubsetFamily:
    """Every meet-closed, top-containing subset, optionally relation-closed.

    When ``closed_under`` pairs are given, a member S must also satisfy:
    s in S and s R t imply t in S.
    """
    cap = resolve_budget(max_subsets, 1 << 22)
    candidates = 1 << (l.n - 1)
    if candidates > cap:
        raise SizeGuard(f"{candidates} candidate subsets exceed cap {cap}")
    rows = _normalize_relation(l, closed_under) if closed_under is not None else None
    rest = [i for i in range(l.n) if i != l.top]
    out = []
    for pick in range(candidates):
        mask = 1 << l.top
        for k, e in enumerate(rest):
            if (pick >> k) & 1:
                mask |= 1 << e
        elems = list(iter_bits(mask))
        ok = all((mask >> l.meet(a, b)) & 1 for a in elems for b in elems)
        if ok and rows is not None:
            ok = all(rows[e] & ~mask == 0 for e in elems)
        if ok:
            out.append(mask)
    out.sort(key=lambda m: (popcount(m), m))
    return AlgebraicSubsetFamily(l, tuple(out))


def _ideal_mask_of(item) -> int:
    if isinstance(item, IdealSet):
        return item.mask
    return int(item)


def galois_h(s: OpSemilattice, theta: Congruence) -> tuple[IdealSet, ...]:
    """The family of theta-closed ideals, ordered by (size, membership mask)."""
    out = []
    for ideal in ideals(s):
        closed = True
        for x in iter_bits(ideal.mask):
            cls = 0
            for y in range(s.n):
                if theta.rep[y] == theta.rep[x]:
                    cls |= 1 << y
            if cls & ~ideal.mask:
                closed = False
                break
        if closed:
            out.append(ideal)
    return tuple(out)


def galois_rho(s: OpSemilattice, family: Iterable) -> Congruence:
    """Equal-membership congruence: x and y lie in the same family members."""
    masks = [_ideal_mask_of(i) for i in family]
    sig: dict[tuple[int, ...], list[int]] = {}
    for x in range(s.n):
        key = tuple(k for k, m in enumerate(masks) if (m >> x) & 1)
        sig.setdefault(key, []).append(x)
    return make_congruence(s.reduct(), list(sig.values()))


def verify_consl(s: OpSemilattice) -> CheckResult:
    """Confirm the congruence/ideal-family duality on one semilattice.

    Builds every congruence of the reduct and every meet-closed top-containing
    family of ideals, then checks that the two maps are mutually inverse
    order-reversing bijections.
    """
    reduct = s.reduct()
    conl = all_congruences(reduct)
    il = ideal_lattice(reduct)
    ideal_masks = [i.mask for i in ideals(reduct)]
    index_of_ideal = {m: k for k, m in enumerate(ideal_masks)}
    sp = algebraic_subsets(il)

    def h_as_family_mask(theta: Congruence) -> int:
        mask = 0
        for ideal in galois_h(reduct, theta):
            mask |= 1 << index_of_ideal[ideal.mask]
        return mask

    images = [h_as_family_mask(t) for t in conl.congruences]
    member_set = set(sp.members)
    for theta, img in zip(conl.congruences, images):
        if img not in member_set:
            return CheckResult("consl", False, {"theta": theta.block_string(reduct)},
                               "image is not an algebraic subset")
    if len(set(images)) != len(images) or len(images) != len(sp.members):
        return CheckResult(
            "consl", False, None,
            f"not a bijection: {len(set(images))} images vs {len(sp.members)} subsets",
        )
    for theta, img in zip(conl.congruences, images):
        back = galois_rho(reduct, [ideal_masks[k] for k in iter_bits(img)])
        if back != theta:
            return CheckResult("consl", False, {"theta": theta.block_string(reduct)},
                               "round trip through ideals does not return")
    for fam in sp.members:
        theta = galois_rho(reduct, [ideal_masks[k] for k in iter_bits(fam)])
        if h_as_family_mask(theta) != fam:
            return CheckResult("consl", False, {"family": _set_label(il.labels, fam)},
                               "round trip through congruences does not return")
    for i, a in enumerate(conl.congruences):
        for j, b in enumerate(conl.congruences):
            if a.refines(b) and images[i] & ~images[j] != 0:
                pass
            if a.refines(b) and (images[j] & ~images[i]) != 0:
                return CheckResult("consl", False,
                                   {"theta": a.block_string(reduct), "phi": b.block_string(reduct)},
                                   "containment is not reversed")
    return CheckResult("consl", True, None,
                       f"|Con| = {len(conl.congruences)} = |families| = {len(sp.members)}")


@dataclass(frozen=True)
class QuasiOrder:
    """A reflexive transitive relation on a meet-semilattice with unit.

    The carrier is the dual join-semilattice: ``carrier.join`` is the
    structure's meet and ``carrier.zero`` is the structure's unit.
    ``rows[c]`` is the bitmask of all d with c related to d.
    """

    carrier: OpSemilattice
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.carrier.n
        if len(self.rows) != n:
            raise InvariantViolation("relation rows do not match the carrier")
        for c in range(n):
            if not (self.rows[c] >> c) & 1:
                raise InvariantViolation(f"not reflexive at {self.carrier.labels[c]}")
            for d in iter_bits(self.rows[c]):
                if self.rows[d] & ~self.rows[c]:
                    raise InvariantViolation(
                        f"not transitive through {self.carrier.labels[c]} and {self.carrier.labels[d]}"
                    )

    def holds(self, c: int, d: int) -> bool:
        return bool((self.rows[c] >> d) & 1)

    def meet(self, a: int, b: int) -> int:
        return self.carrier.join(a, b)

    @property
    def unit(self) -> int:
        return self.carrier.zero

    @cached_property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        labs = self.carrier.labels
        return tuple(
            (labs[c], labs[d]) for c in range(self.carrier.n) for d in iter_bits(self.rows[c])
        )

    def to_json(self) -> str:
        return json.dumps({"pairs": [list(p) for p in self.pairs]})


def quasiorder_from_pairs(carrier: OpSemilattice, pairs: Iterable) -> QuasiOrder:
    """Build a quasiorder from related pairs; adds reflexivity, checks transitivity."""
    idx = carrier.index
    rows = [1 << c for c in range(carrier.n)]
    for a, b in pairs:
        ia = idx[a] if isinstance(a, str) else int(a)
        ib = idx[b] if isinstance(b, str) else int(b)
        rows[ia] |= 1 << ib
    return QuasiOrder(carrier, tuple(rows))


def check_distributive_quasiorder(q: QuasiOrder) -> AxiomReport:
    """Report on the four quasiorder conditions.

    (1) a meet related to d splits: c1 ^ c2 related to d implies d = d1 ^ d2
        with c1 related to d1 and c2 related to d2;
    (2) the unit is related only to the unit;
    (3) common targets are meet-closed: c related to d1 and d2 implies
        c related to d1 ^ d2;
    (4) everything is related to the unit.
    """
    s = q.carrier
    labs = s.labels
    n = s.n

    w1 = None
    for c1 in range(n):
        for c2 in range(n):
            m = q.meet(c1, c2)
            for d in iter_bits(q.rows[m]):
                split = any(
                    q.meet(d1, d2) == d
                    for d1 in iter_bits(q.rows[c1])
                    for d2 in iter_bits(q.rows[c2])
                )
                if not split:
                    w1 = {"c1": labs[c1], "c2": labs[c2], "d": labs[d]}
                    break
            if w1:
                break
        if w1:
            break

    w2 = None
    for d in iter_bits(q.rows[q.unit]):
        if d != q.unit:
            w2 = {"d": labs[d]}
            break

    w3 = None
    for c in range(n):
        for d1 in iter_bits(q.rows[c]):
            for d2 in iter_bits(q.rows[c]):
                if not q.holds(c, q.meet(d1, d2)):
                    w3 = {"c": labs[c], "d1": labs[d1], "d2": labs[d2]}
                    break
            if w3:
                break
        if w3:
            break

    w4 = None
    for c in range(n):
        if not q.holds(c, q.unit):
            w4 = {"c": labs[c]}
            break

    return AxiomReport((
        ("1", Verdict(w1 is None, w1)),
        ("2", Verdict(w2 is None, w2)),
        ("3", Verdict(w3 is None, w3)),
        ("4", Verdict(w4 is None, w4)),
    ))


def _closed_sub_members(q: QuasiOrder, max_subsets: int | None = None) -> tuple[int, ...]:
    """Masks of relation-closed meet-subsemilattices containing the unit."""
    s = q.carrier
    cap = resolve_budget(max_subsets, 1 << 22)
    candidates = 1 << (s.n - 1)
    if candidates > cap:
        raise SizeGuard(f"{candidates} candidate subsets exceed cap {cap}")
    rest = [i for i in range(s.n) if i != q.unit]
    out = []
    for pick in range(candidates):
        mask = 1 << q.unit
        for k, e in enumerate(rest):
            if (pick >> k) & 1:
                mask |= 1 << e
        elems = list(iter_bits(mask))
        ok = all((mask >> q.meet(a, b)) & 1 for a in elems for b in elems)
        if ok:
            ok = all(q.rows[e] & ~mask == 0 for e in elems)
        if ok:
            out.append(mask)
    out.sort(key=lambda m: (popcount(m), m))
    return tuple(out)


def sub_closed_lattice(q: QuasiOrder, max_subsets: int | None = None) -> FiniteLattice:
    """The containment lattice of relation-closed meet-subsemilattices with unit."""
    return _containment_lattice(q.carrier.labels, _closed_sub_members(q, max_subsets))


def all_subalgebras(carrier: OpSemilattice, max_subsets: int | None = None) -> tuple[int, ...]:
    """Masks of all meet-subsemilattices containing the unit (no relation)."""
    identity = quasiorder_from_pairs(carrier, [])
    return _closed_sub_members(identity, max_subsets)


def quasiorder_from_sublattice(carrier: OpSemilattice, family: Iterable[int]) -> QuasiOrder:
    """The quasiorder induced by a sublattice of the subalgebra lattice.

    c is related to d when every family member containing c contains d.
    The family must be closed under pairwise intersection and pairwise
    subalgebra join (meet-closure of the union) and contain the full set.
    """
    s = carrier
    full = (1 << s.n) - 1
    members = sorted(set(int(m) for m in family))
    if not members:
        raise InvariantViolation("empty family")
    valid = set(all_subalgebras(s))
    for m in members:
        if m not in valid:
            raise InvariantViolation(
                f"{_set_label(s.labels, m)} is not a meet-subsemilattice with unit"
            )
    if full not in members:
        raise InvariantViolation("family misses the full subalgebra")
    member_set = set(members)
    for a in members:
        for b in members:
            if (a & b) not in member_set:
                raise InvariantViolation("family is not closed under intersection")
            u = a | b
            while True:
                grown = u
                for x in iter_bits(u):
                    for y in iter_bits(u):
                        grown |= 1 << s.join(x, y)
                if grown == u:
                    break
                u = grown
            if u not in member_set:
                raise InvariantViolation("family is not closed under subalgebra join")
    rows = []
    for c in range(s.n):
        containing = [m for m in members if (m >> c) & 1]
        inter = full
        for m in containing:
            inter &= m
        rows.append(inter)
    return QuasiOrder(s, tuple(rows))


def check_sub_duality(carrier: OpSemilattice, family: Iterable[int]) -> CheckResult:
    """Round trip a subalgebra sublattice through its induced quasiorder.

    The induced relation must satisfy all four quasiorder conditions and its
    closed-subalgebra family must equal the input family.
    """
    members = tuple(sorted(set(int(m) for m in family), key=lambda m: (popcount(m), m)))
    q = quasiorder_from_sublattice(carrier, members)
    report = check_distributive_quasiorder(q)
    bad = report.failing()
    if bad:
        return CheckResult("sub-duality", False, {"conditions": ",".join(bad)},
                           "induced quasiorder fails required conditions")
    back = _closed_sub_members(q)
    if back != members:
        return CheckResult("sub-duality", False, None,
                           f"round trip returns {len(back)} members, expected {len(members)}")
    return CheckResult("sub-duality", True, None, f"family size {len(members)}")


def _congruence_items(s: OpSemilattice, family: Iterable) -> list[Congruence]:
    out = []
    for item in family:
        if isinstance(item, Congruence):
            out.append(item)
        else:
            out.append(make_congruence(s.reduct(), item))
    return out


def check_filterable(s: OpSemilattice, family: Iterable) -> CheckResult:
    """Is this sublattice of reduct congruences closed under zero-class collapse?

    Pass when, for every member, the reduct congruence generated by the
    member's zero class is again a member. The family must be closed under
    pairwise meet and join of congruences.
    """
    reduct = s.reduct()
    members = _congruence_items(s, family)
    member_set = {t.rep for t in members}
    for a in members:
        for b in members:
            if meet_congruences(a, b).rep not in member_set:
                raise InvariantViolation("family is not closed under congruence meet")
            if join_congruences(reduct, a, b).rep not in member_set:
                raise InvariantViolation("family is not closed under congruence join")
    for theta in members:
        collapsed = eta(reduct, theta.zero_class_mask(reduct))
        if collapsed.rep not in member_set:
            return CheckResult(
                "filterable", False,
                {"theta": theta.block_string(reduct)},
                "zero-class collapse leaves the family",
            )
    return CheckResult("filterable", True, None, f"members={len(members)}")


def sublattice_interior(
    s: OpSemilattice, family: Iterable
) -> tuple[FiniteLattice, InteriorMap, tuple[Congruence, ...]]:
    """The zero-class collapse map on a congruence sublattice, as an interior map.

    Members are sorted coarsest-last; element i maps to the index of the
    reduct congruence generated by member i's zero class, which must lie in
    the family (raise otherwise).
    """
    reduct = s.reduct()
    members = sorted(
        {t.rep: t for t in _congruence_items(s, family)}.values(),
        key=lambda t: (-t.block_count, t.rep),
    )
    index = {t.rep: i for i, t in enumerate(members)}
    names = [t.block_string(reduct) for t in members]
    up = []
    for a in members:
        row = 0
        for j, b in enumerate(members):
            if a.refines(b):
                row |= 1 << j
        up.append(row)
    lat = as_lattice(FinitePoset(tuple(names), tuple(up)))
    h = []
    for t in members:
        collapsed = eta(reduct, t.zero_class_mask(reduct))
        if collapsed.rep not in index:
            raise InvariantViolation("family is not filterable; no induced interior map")
        h.append(index[collapsed.rep])
    return lat, InteriorMap(lat, tuple(h)), tuple(members)
