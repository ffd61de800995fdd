"""Interior operators on finite lattices and their axiom battery.

The battery checks eleven named conditions of a unary map h on a finite
lattice. tau is always derived from h by fiber joins:

    tau(x) = join of { z : h(z) = h(x) }

* I1  h(x) <= x
* I2  y <= x implies h(y) <= h(x)
* I3  h(h(x)) = h(x)
* I4  h(top) = top
* I5  h(x) = h(y) implies h(x v y) = h(x)  (pairwise form; by induction this
      covers every finite nonempty constant-fiber subset)
* I6  h(x) v (y ^ z) = (h(x) v y) ^ (h(x) v z)
* I7  the image of h is closed under nonempty joins (on a finite carrier
      every element is compact, which collapses the general closure form)
* I8  h fixes a pseudo-one w with [w, top] a congruence lattice of a
      semilattice; here w is pinned to top, so the check equals I4
* I9  for every nonempty family z_1..z_k and all x, c:
      h(x) <= c and meet tau(z_i) <= tau(c)
      imply h(h(x) v meet tau(x ^ z_i)) <= c
* dagger   tau(x) <= tau(c) and h(z) <= c imply h(h(z) v tau(x ^ z)) <= c
* ddagger  h(h(z) v tau(x ^ z)) <= h(z) v tau(x)

Maps passing I1 to I8 are enumerated through their images: such a map is
x -> (largest member of a fixed join-closed image set below x).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvariantViolation, SearchBudgetExceeded, resolve_budget
from .order import FiniteLattice, iter_bits, popcount

AXIOM_NAMES = ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "dagger", "ddagger")
DEFAULT_EIO_AXIOMS = frozenset({"I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8"})


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check: passed True/False, or None when skipped."""

    passed: bool | None
    witness: dict[str, str] | None = None
    note: str | None = None

    def as_dict(self) -> dict:
        out: dict = {"passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class AxiomReport:
    """Ordered named verdicts for one (lattice, map) pair."""

    entries: tuple[tuple[str, Verdict], ...]

    def verdict(self, name: str) -> Verdict:
        for key, v in self.entries:
            if key == name:
                return v
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        """True when no entry failed (skipped entries do not count as failures)."""
        return all(v.passed is not False for _, v in self.entries)

    def passed_all(self, names: Iterable[str]) -> bool:
        return all(self.verdict(n).passed is True for n in names)

    def failing(self) -> tuple[str, ...]:
        return tuple(name for name, v in self.entries if v.passed is False)

    def as_dict(self) -> dict:
        return {name: v.as_dict() for name, v in self.entries}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a single named structural check."""

    name: str
    passed: bool
    witness: dict[str, str] | None = None
    note: str | None = None

    def as_dict(self) -> dict:
        out: dict = {"check": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def normalize_map(l: FiniteLattice, h) -> tuple[int, ...]:
    """Coerce an InteriorMap, index sequence, or label mapping to an index tuple."""
    if isinstance(h, InteriorMap):
        return h.h
    if isinstance(h, Mapping):
        idx = l.poset.index
        out = [-1] * l.n
        for src, dst in h.items():
            if src not in idx or dst not in idx:
                raise InvariantViolation(f"unknown label in map entry {src!r} -> {dst!r}")
            out[idx[src]] = idx[dst]
        if any(v == -1 for v in out):
            raise InvariantViolation("map does not cover every element")
        return tuple(out)
    vals = tuple(h)
    if len(vals) != l.n or any(not (0 <= v < l.n) for v in vals):
        raise InvariantViolation("map is not a total map on the carrier")
    return vals


def tau_of_map(l: FiniteLattice, h: Sequence[int]) -> tuple[int, ...]:
    """Fiber joins: tau[x] = join of every z with h(z) = h(x)."""
    fiber_join: dict[int, int] = {}
    for z, v in enumerate(h):
        fiber_join[v] = z if v not in fiber_join else l.join(fiber_join[v], z)
    return tuple(fiber_join[v] for v in h)


def _lab(l: FiniteLattice, i: int) -> str:
    return l.labels[i]


def _fail_i1(l, h):
    for x in range(l.n):
        if not l.leq(h[x], x):
            return {"x": _lab(l, x)}
    return None


def _fail_i2(l, h):
    for x in range(l.n):
        for y in iter_bits(l.down[x]):
            if not l.leq(h[y], h[x]):
                return {"x": _lab(l, x), "y": _lab(l, y)}
    return None


def _fail_i3(l, h):
    for x in range(l.n):
        if h[h[x]] != h[x]:
            return {"x": _lab(l, x)}
    return None


def _fail_i4(l, h):
    if h[l.top] != l.top:
        return {"x": _lab(l, l.top)}
    return None


def _fail_i5(l, h):
    for x in range(l.n):
        for y in range(x + 1, l.n):
            if h[x] == h[y] and h[l.join(x, y)] != h[x]:
                return {"x": _lab(l, x), "y": _lab(l, y)}
    return None


def _fail_i6(l, h):
    reps: dict[int, int] = {}
    for x in range(l.n):
        reps.setdefault(h[x], x)
    for v, x in sorted(reps.items()):
        for y in range(l.n):
            for z in range(l.n):
                left = l.join(v, l.meet(y, z))
                right = l.meet(l.join(v, y), l.join(v, z))
                if left != right:
                    return {"x": _lab(l, x), "y": _lab(l, y), "z": _lab(l, z)}
    return None


def _fail_i7(l, h):
    image = sorted(set(h))
    img_set = set(image)
    for u in image:
        for v in image:
            if l.join(u, v) not in img_set:
                return {"x": _lab(l, u), "y": _lab(l, v)}
    return None


def _fail_dagger(l, h, tau, up_mask, tau_ge):
    full = (1 << l.n) - 1
    for xv in range(l.n):
        hypo_c = tau_ge[tau[xv]]
        if not hypo_c:
            continue
        best: tuple[int, int] | None = None
        for zv in range(l.n):
            value = h[l.join(h[zv], tau[l.meet(xv, zv)])]
            fails = hypo_c & up_mask[h[zv]] & ~up_mask[value] & full
            if fails:
                c0 = (fails & -fails).bit_length() - 1
                if best is None or (c0, zv) < best:
                    best = (c0, zv)
        if best is not None:
            c0, zv = best
            return {"zeta": _lab(l, zv), "gamma": _lab(l, c0), "chi": _lab(l, xv)}
    return None


def _fail_ddagger(l, h, tau):
    for xv in range(l.n):
        for zv in range(l.n):
            left = h[l.join(h[zv], tau[l.meet(xv, zv)])]
            right = l.join(h[zv], tau[xv])
            if not l.leq(left, right):
                return {"x": _lab(l, xv), "z": _lab(l, zv)}
    return None


def _i9_check_family(l, h, tau, up_mask, tau_ge, family, meet_tau_all, mvec):
    """Return a witness dict if some (x, c) violates I9 for this family."""
    full = (1 << l.n) - 1
    for x in range(l.n):
        value = h[l.join(h[x], mvec[x])]
        fails = up_mask[h[x]] & tau_ge[meet_tau_all] & ~up_mask[value] & full
        if fails:
            c0 = (fails & -fails).bit_length() - 1
            return {
                "x": _lab(l, x),
                "c": _lab(l, c0),
                "zs": ",".join(_lab(l, z) for z in family),
            }
    return None


def _fail_i9(l, h, tau, up_mask, tau_ge, bound, samples, seed):
    n = l.n
    if bound is None:
        if n <= 14:
            mode, depth = "exhaustive", n
        else:
            mode, depth = "sampled", 2
    else:
        depth = min(bound, n)
        mode = "exhaustive" if depth >= n else f"families up to size {depth}"

    witness = None

    def visit(start: int, family: list[int], meet_tau: int, mvec: list[int], left: int):
        nonlocal witness
        if witness is not None or left == 0:
            return
        for e in range(start, n):
            fam = family + [e]
            mt = tau[e] if not family else l.meet(meet_tau, tau[e])
            mv = [l.meet(mvec[x], tau[l.meet(x, e)]) if family else tau[l.meet(x, e)] for x in range(n)]
            witness = witness or _i9_check_family(l, h, tau, up_mask, tau_ge, fam, mt, mv)
            if witness is not None:
                return
            visit(e + 1, fam, mt, mv, left - 1)

    visit(0, [], 0, [0] * n, depth)
    if witness is not None or mode != "sampled":
        return witness, mode

    rng = random.Random(seed)
    top_size = min(n, 8)
    for _ in range(samples):
        k = rng.randint(3, top_size)
        fam = sorted(rng.sample(range(n), k))
        mt = tau[fam[0]]
        mv = [tau[l.meet(x, fam[0])] for x in range(n)]
        for e in fam[1:]:
            mt = l.meet(mt, tau[e])
            mv = [l.meet(mv[x], tau[l.meet(x, e)]) for x in range(n)]
        witness = _i9_check_family(l, h, tau, up_mask, tau_ge, fam, mt, mv)
        if witness is not None:
            break
    return witness, f"sampled: sizes <= 2 exhaustive plus {samples} random families (seed {seed})"


def check_axioms(
    l: FiniteLattice,
    h,
    i9_subset_bound: int | None = None,
    i9_samples: int = 2000,
    seed: int = 0,
) -> AxiomReport:
    """Evaluate the full battery on an arbitrary unary map."""
    hv = normalize_map(l, h)
    tau = tau_of_map(l, hv)
    up_mask = l.up
    tau_ge = []
    for e in range(l.n):
        m = 0
        for c in range(l.n):
            if l.leq(e, tau[c]):
                m |= 1 << c
        tau_ge.append(m)

    entries: list[tuple[str, Verdict]] = []

    def add(name: str, witness, note: str | None = None) -> None:
        entries.append((name, Verdict(witness is None, witness, note)))

    add("I1", _fail_i1(l, hv))
    add("I2", _fail_i2(l, hv))
    add("I3", _fail_i3(l, hv))
    add("I4", _fail_i4(l, hv))
    add("I5", _fail_i5(l, hv))
    add("I6", _fail_i6(l, hv))
    add("I7", _fail_i7(l, hv))
    add("I8", _fail_i4(l, hv), "pseudo-one fixed to top; reduces to I4 on a finite carrier")
    w9, mode = _fail_i9(l, hv, tau, up_mask, tau_ge, i9_subset_bound, i9_samples, seed)
    add("I9", w9, mode)
    add("dagger", _fail_dagger(l, hv, tau, up_mask, tau_ge))
    add("ddagger", _fail_ddagger(l, hv, tau))
    return AxiomReport(tuple(entries))


@dataclass(frozen=True)
class InteriorMap:
    """A unary map passing I1 to I4, with its derived tau and interval blocks."""

    lattice: FiniteLattice
    h: tuple[int, ...]

    def __post_init__(self) -> None:
        l, hv = self.lattice, self.h
        if len(hv) != l.n or any(not (0 <= v < l.n) for v in hv):
            raise InvariantViolation("map is not a total map on the carrier")
        for name, chk in (("I1", _fail_i1), ("I2", _fail_i2), ("I3", _fail_i3), ("I4", _fail_i4)):
            w = chk(l, hv)
            if w is not None:
                raise InvariantViolation(f"interior map violates {name} at {w}")

    @property
    def n(self) -> int:
        return self.lattice.n

    def apply(self, x: int) -> int:
        return self.h[x]

    @cached_property
    def tau(self) -> tuple[int, ...]:
        return tau_of_map(self.lattice, self.h)

    @cached_property
    def satisfies_i5(self) -> bool:
        return _fail_i5(self.lattice, self.h) is None

    @cached_property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        """The interval partition [(h-value, tau-value), ...]; needs I5."""
        if not self.satisfies_i5:
            raise InvariantViolation("blocks are only defined when I5 holds")
        return tuple((v, self.tau[v]) for v in sorted(set(self.h)))

    def as_label_map(self) -> dict[str, str]:
        labs = self.lattice.labels
        return {labs[x]: labs[v] for x, v in enumerate(self.h)}

    def to_json(self) -> str:
        return json.dumps({"map": self.as_label_map()}, indent=2)


def natural_eta(s, conl) -> InteriorMap:
    """The least-congruence-with-same-0-class map on a congruence lattice.

    Each congruence is sent to the least congruence sharing its 0-class; the
    derived tau is verified to agree with the greatest-congruence companion.
    """
    from .congruence import eta as cong_eta, tau as cong_tau

    if conl.semilattice != s:
        raise InvariantViolation("congruence lattice does not belong to this semilattice")
    h = tuple(conl.index_of(cong_eta(s, theta)) for theta in conl.congruences)
    im = InteriorMap(conl.lattice, h)
    for i, theta in enumerate(conl.congruences):
        expect = conl.index_of(cong_tau(s, theta))
        if im.tau[i] != expect:
            raise InvariantViolation(
                f"derived tau disagrees with the greatest-congruence construction at index {i}"
            )
    return im


def enumerate_eios(
    l: FiniteLattice,
    axioms: Iterable[str] | None = None,
    max_subsets: int | None = None,
    i9_subset_bound: int | None = None,
    seed: int = 0,
) -> tuple[InteriorMap, ...]:
    """All interior maps on ``l`` passing the selected axioms (default I1 to I8).

    Search space: join-closed image sets containing bottom and top, each
    inducing h(x) = largest image member below x. That parameterization is
    complete for maps satisfying I1 to I4, which must be in the selection.
    Raises SearchBudgetExceeded when 2^(n-2) image candidates exceed the cap.
    """
    ax = frozenset(axioms) if axioms is not None else DEFAULT_EIO_AXIOMS
    unknown = ax - set(AXIOM_NAMES)
    if unknown:
        raise InvariantViolation(f"unknown axiom names: {sorted(unknown)}")
    if not {"I1", "I2", "I3", "I4"} <= ax:
        raise InvariantViolation("image-based enumeration requires axioms I1 through I4")
    middles = [i for i in range(l.n) if i not in (l.bottom, l.top)]
    count = 1 << len(middles)
    cap = resolve_budget(max_subsets, 1 << 20)
    if count > cap:
        raise SearchBudgetExceeded(f"{count} image candidates exceed cap {cap}")
    base = (1 << l.bottom) | (1 << l.top)
    found: list[InteriorMap] = []
    for pick in range(count):
        jmask = base
        for k, e in enumerate(middles):
            if (pick >> k) & 1:
                jmask |= 1 << e
        members = list(iter_bits(jmask))
        closed = True
        for a in members:
            for b in members:
                if not (jmask >> l.join(a, b)) & 1:
                    closed = False
                    break
            if not closed:
                break
        if not closed:
            continue
        h = []
        for x in range(l.n):
            below = jmask & l.down[x]
            h.append(l.join_all(iter_bits(below)))
        hv = tuple(h)
        ok = True
        if ok and "I5" in ax:
            ok = _fail_i5(l, hv) is None
        if ok and "I6" in ax:
            ok = _fail_i6(l, hv) is None
        if ok and ("I9" in ax or "dagger" in ax or "ddagger" in ax):
            tau = tau_of_map(l, hv)
            up_mask = l.up
            tau_ge = []
            for e in range(l.n):
                m = 0
                for c in range(l.n):
                    if l.leq(e, tau[c]):
                        m |= 1 << c
                tau_ge.append(m)
            if ok and "dagger" in ax:
                ok = _fail_dagger(l, hv, tau, up_mask, tau_ge) is None
            if ok and "ddagger" in ax:
                ok = _fail_ddagger(l, hv, tau) is None
            if ok and "I9" in ax:
                w, _ = _fail_i9(l, hv, tau, up_mask, tau_ge, i9_subset_bound, 2000, seed)
                ok = w is None
        if ok:
            found.append(InteriorMap(l, hv))
    return tuple(found)


def check_bicoatomic(l: FiniteLattice, properly: str = "strict") -> CheckResult:
    """Every u, v meeting properly below a coatom refine to a coatom meet.

    Modes for "properly": "strict" asks u, v below the top with u ^ v < p;
    "nontrivial" additionally requires u and v not below p. On finite
    lattices the two modes have identical failure sets.
    """
    if properly not in ("strict", "nontrivial"):
        raise InvariantViolation(f"unknown properly mode {properly!r}")
    coat = l.coatoms
    for p in coat:
        for u in range(l.n):
            if u == l.top:
                continue
            for v in range(l.n):
                if v == l.top:
                    continue
                m = l.meet(u, v)
                if m == p or not l.leq(m, p):
                    continue
                if properly == "nontrivial" and (l.leq(u, p) or l.leq(v, p)):
                    continue
                refined = False
                for c in coat:
                    if not l.leq(u, c):
                        continue
                    for d in coat:
                        if l.leq(v, d) and l.leq(l.meet(c, d), p):
                            refined = True
                            break
                    if refined:
                        break
                if not refined:
                    return CheckResult(
                        "bicoatomic",
                        False,
                        {"p": _lab(l, p), "u": _lab(l, u), "v": _lab(l, v)},
                        f"mode={properly}",
                    )
    return CheckResult("bicoatomic", True, None, f"mode={properly}")


def check_four_coatom(l: FiniteLattice, im: InteriorMap) -> CheckResult:
    """Coatom quadruple implication driven by the interior map.

    For coatoms a, b, c, d with the filter above a ^ d of size four,
    h(a) not below d, h(c) <= d, and h(c) = h(a ^ b), conclude
    h(c) = h(b ^ d).
    """
    if im.lattice != l:
        raise InvariantViolation("interior map belongs to a different lattice")
    h = im.h
    coat = l.coatoms
    for a in coat:
        for d in coat:
            if popcount(l.up[l.meet(a, d)]) != 4:
                continue
            if l.leq(h[a], d):
                continue
            for c in coat:
                if not l.leq(h[c], d):
                    continue
                for b in coat:
                    if h[c] != h[l.meet(a, b)]:
                        continue
                    if h[c] != h[l.meet(b, d)]:
                        return CheckResult(
                            "four-coatom",
                            False,
                            {"a": _lab(l, a), "b": _lab(l, b), "c": _lab(l, c), "d": _lab(l, d)},
                        )
    return CheckResult("four-coatom", True)


def check_coatom_dependence(
    l: FiniteLattice, im: InteriorMap, i9_passed: bool | None = None
) -> AxiomReport:
    """The coatom dependence battery: june2, june1, june5, june6.

    A triple of pairwise distinct coatoms (x, z, a) is in scope when
    x ^ z <= a. june2 checks its four conclusions; june1 checks
    h(x) v (meet of all in-scope z for x) = top; june5 the same per fixed a;
    june6 scans for a family with meet of the a's not below x but meet of
    the z's below x. june5/june6 presuppose I9, so they are skipped (verdict
    None) when I9 is not established.
    """
    if im.lattice != l:
        raise InvariantViolation("interior map belongs to a different lattice")
    if not im.satisfies_i5:
        raise InvariantViolation("coatom dependence checks need a map satisfying I5")
    h, tau = im.h, im.tau
    coat = l.coatoms
    triples = []
    for x in coat:
        for z in coat:
            if z == x:
                continue
            for a in coat:
                if a == x or a == z:
                    continue
                if l.leq(l.meet(x, z), a):
                    triples.append((x, z, a))

    entries: list[tuple[str, Verdict]] = []

    witness = None
    for x, z, a in triples:
        m = l.meet(x, z)
        if not l.leq(h[a], m):
            witness = {"x": _lab(l, x), "z": _lab(l, z), "a": _lab(l, a), "part": "eta(a) <= x^z"}
        elif tau[m] != a:
            witness = {"x": _lab(l, x), "z": _lab(l, z), "a": _lab(l, a), "part": "tau(x^z) = a"}
        elif l.leq(h[x], a):
            witness = {"x": _lab(l, x), "z": _lab(l, z), "a": _lab(l, a), "part": "eta(x) not<= a"}
        elif l.leq(h[x], z):
            witness = {"x": _lab(l, x), "z": _lab(l, z), "a": _lab(l, a), "part": "eta(x) not<= z"}
        if witness:
            break
    entries.append(("june2", Verdict(witness is None, witness, f"instances={len(triples)}")))

    witness = None
    checked = 0
    for x in coat:
        zs = sorted({z for (x2, z, _) in triples if x2 == x})
        if not zs:
            continue
        checked += 1
        if l.join(h[x], l.meet_all(zs)) != l.top:
            witness = {"x": _lab(l, x), "zs": ",".join(_lab(l, z) for z in zs)}
            break
    entries.append(("june1", Verdict(witness is None, witness, f"maximal families={checked}")))

    if i9_passed is None:
        tau_ge = []
        for e in range(l.n):
            mk = 0
            for c in range(l.n):
                if l.leq(e, tau[c]):
                    mk |= 1 << c
            tau_ge.append(mk)
        w9, _ = _fail_i9(l, h, tau, l.up, tau_ge, None, 2000, 0)
        i9_passed = w9 is None

    if not i9_passed:
        skip = Verdict(None, None, "skipped: I9 hypothesis not established")
        entries.append(("june5", skip))
        entries.append(("june6", skip))
        return AxiomReport(tuple(entries))

    witness = None
    checked = 0
    for x in coat:
        for a in coat:
            if a == x:
                continue
            zs = sorted({z for (x2, z, a2) in triples if x2 == x and a2 == a})
            if not zs:
                continue
            checked += 1
            if l.join(h[x], l.meet_all(zs)) != l.top:
                witness = {"x": _lab(l, x), "a": _lab(l, a), "zs": ",".join(_lab(l, z) for z in zs)}
                break
        if witness:
            break
    entries.append(("june5", Verdict(witness is None, witness, f"maximal families={checked}")))

    witness = None
    for x in coat:
        for m in range(l.n):
            if l.leq(m, x):
                continue
            zs = sorted({z for (x2, z, a) in triples if x2 == x and l.leq(m, a)})
            if zs and l.leq(l.meet_all(zs), x):
                witness = {"x": _lab(l, x), "m": _lab(l, m), "zs": ",".join(_lab(l, z) for z in zs)}
                break
        if witness:
            break
    entries.append(("june6", Verdict(witness is None, witness, "family scan over meet lower bounds")))
    return AxiomReport(tuple(entries))
