"""Named example structures, machine-checked claims, and a small-structure catalog.

Builders cover Boolean lattices, chains, chains with the predecessor
operator, three finite truncations of infinite meet-semilattice families
(returned as the dual of their subalgebra lattice), and the nine-element
congruence sublattice generated inside the congruence lattice of the
three-atom Boolean semilattice.

``generate_catalog`` enumerates every join-semilattice with zero up to a
size bound, one representative per isomorphism class, optionally decorated
with operator sets.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .congruence import (
    Congruence,
    all_congruences,
    congruence_generated,
    join_congruences,
    make_congruence,
    meet_congruences,
)
from .errors import (
    BudgetExceeded,
    InvariantViolation,
    ParamOutOfRange,
    SearchBudgetExceeded,
    resolve_budget,
)
from .galois import check_filterable, sublattice_interior
from .interior import (
    CheckResult,
    InteriorMap,
    check_axioms,
    check_bicoatomic,
    enumerate_eios,
    natural_eta,
)
from .order import FiniteLattice, FinitePoset, as_lattice, dual, iter_bits, popcount
from .semilattice import OpSemilattice, all_endomorphisms, from_join_table


@dataclass(frozen=True)
class Claim:
    """One machine-checkable expectation about a corpus entry.

    Assertive claims compare the observed value against ``expected``;
    non-assertive claims only record the observed value (used for finite
    truncations of infinite structures, where nothing is asserted).
    """

    op: str
    expected: object = None
    assertive: bool = True


@dataclass
class CorpusEntry:
    name: str
    structure: object
    claims: tuple[Claim, ...]
    extra: dict = field(default_factory=dict)
    truncated: bool = False


def _as_finite_lattice(structure) -> FiniteLattice:
    if isinstance(structure, FiniteLattice):
        return structure
    return structure.lattice


def _evaluate_claim(entry: CorpusEntry, op: str):
    st = entry.structure
    if op == "element_count":
        return st.n
    if op == "congruence_count":
        return len(all_congruences(st).congruences)
    if op == "con_is_chain":
        lat = all_congruences(st).lattice
        return all(
            lat.leq(i, j) or lat.leq(j, i) for i in range(lat.n) for j in range(i + 1, lat.n)
        )
    if op == "natural_eta_equals_tau":
        conl = all_congruences(st)
        im = natural_eta(st, conl)
        return im.h == im.tau
    if op == "coatom_labels":
        lat = _as_finite_lattice(st)
        return tuple(sorted(lat.labels[i] for i in lat.coatoms))
    if op == "eio_count":
        return len(enumerate_eios(_as_finite_lattice(st), max_subsets=_evidence_cap(entry)))
    if op == "eio_label_maps":
        return tuple(im.as_label_map() for im in enumerate_eios(_as_finite_lattice(st)))
    if op == "eio_i9_all":
        lat = _as_finite_lattice(st)
        eios = enumerate_eios(lat, max_subsets=_evidence_cap(entry))
        if not eios:
            return None
        return all(check_axioms(lat, im).verdict("I9").passed for im in eios)
    if op == "dagger_witness":
        lat = _as_finite_lattice(st)
        return check_axioms(lat, entry.extra["interior"]).verdict("dagger").witness
    if op == "bicoatomic_witness":
        return check_bicoatomic(_as_finite_lattice(st)).witness
    if op == "filterable_pass":
        return check_filterable(entry.extra["ambient"], entry.extra["members"]).passed
    raise InvariantViolation(f"unknown claim op {op!r}")


def _evidence_cap(entry: CorpusEntry) -> int | None:
    """Search cap for evidence-only claims on truncated structures.

    Truncations can be large; their evidence searches get a modest default
    budget (still overridable through EQLAT_BUDGET) instead of the global
    one, and a blown budget is reported as a skipped search, not an error.
    """
    return None if not entry.truncated else resolve_budget(None, 1 << 14)


def run_claims(entry: CorpusEntry) -> tuple[CheckResult, ...]:
    """Evaluate every claim; non-assertive claims pass and report the observation."""
    results = []
    for claim in entry.claims:
        if claim.assertive:
            observed = _evaluate_claim(entry, claim.op)
            ok = observed == claim.expected
            witness = None if ok else {"observed": repr(observed), "expected": repr(claim.expected)}
            results.append(CheckResult(claim.op, ok, witness))
            continue
        try:
            observed = _evaluate_claim(entry, claim.op)
        except (SearchBudgetExceeded, BudgetExceeded) as exc:
            note = f"evidence search skipped: {exc}"
        else:
            note = f"observed={observed!r}; finite-truncation evidence, not asserted"
        results.append(CheckResult(claim.op, True, None, note))
    return tuple(results)


_ATOM_LETTERS = "pqrst"


def _boolean_semilattice(n: int) -> OpSemilattice:
    masks = sorted(range(1 << n), key=lambda m: (popcount(m), m))
    index = {m: i for i, m in enumerate(masks)}

    def name(m: int) -> str:
        if m == 0:
            return "0"
        if n >= 1 and m == (1 << n) - 1:
            return "1"
        return "".join(_ATOM_LETTERS[i] for i in range(n) if (m >> i) & 1)

    labels = [name(m) for m in masks]
    table = [[index[a | b] for b in masks] for a in masks]
    return from_join_table(labels, table, 0)


def boolean(n: int) -> CorpusEntry:
    """The Boolean lattice on n atoms as a join-semilattice with zero (n <= 5)."""
    if not 0 <= n <= 5:
        raise ParamOutOfRange("boolean supports 0 <= n <= 5")
    s = _boolean_semilattice(n)
    claims = [Claim("element_count", 1 << n)]
    if n == 2:
        claims.append(Claim("congruence_count", 7))
    return CorpusEntry(f"boolean({n})", s, tuple(claims))


def chain(n: int) -> CorpusEntry:
    """The (n+1)-element chain 0 < 1 < ... < n as a join-semilattice."""
    if not 0 <= n <= 12:
        raise ParamOutOfRange("chain supports 0 <= n <= 12")
    labels = [str(i) for i in range(n + 1)]
    table = [[max(i, j) for j in range(n + 1)] for i in range(n + 1)]
    s = from_join_table(labels, table, 0)
    claims = [Claim("element_count", n + 1)]
    if n <= 6:
        claims.append(Claim("congruence_count", 1 << n))
    return CorpusEntry(f"chain({n})", s, tuple(claims))


def omega(n: int) -> CorpusEntry:
    """The (n+1)-chain with the predecessor operator fixing zero.

    Its congruence lattice is again an (n+1)-element chain, and the least
    and greatest congruence with each zero class coincide.
    """
    if not 1 <= n <= 10:
        raise ParamOutOfRange("omega supports 1 <= n <= 10")
    labels = [str(i) for i in range(n + 1)]
    table = [[max(i, j) for j in range(n + 1)] for i in range(n + 1)]
    pred = [0] + [i - 1 for i in range(1, n + 1)]
    s = from_join_table(labels, table, 0, [("p", pred)])
    claims = (
        Claim("element_count", n + 1),
        Claim("congruence_count", n + 1),
        Claim("con_is_chain", True),
        Claim("natural_eta_equals_tau", True),
    )
    return CorpusEntry(f"omega({n})", s, claims)


def _check_meet_table(labels: Sequence[str], meet) -> None:
    n = len(labels)
    for i in range(n):
        if meet(i, i) != i:
            raise InvariantViolation(f"meet not idempotent at {labels[i]}")
        for j in range(n):
            if meet(i, j) != meet(j, i):
                raise InvariantViolation(f"meet not commutative at {labels[i]}, {labels[j]}")
            for k in range(n):
                if meet(meet(i, j), k) != meet(i, meet(j, k)):
                    raise InvariantViolation(
                        f"meet not associative at {labels[i]}, {labels[j]}, {labels[k]}"
                    )


def _sub_dual_lattice(labels: Sequence[str], meet) -> FiniteLattice:
    """The dual of the containment lattice of meet-closed subsets (empty set included)."""
    _check_meet_table(labels, meet)
    n = len(labels)
    subs = []
    for mask in range(1 << n):
        elems = list(iter_bits(mask))
        if all((mask >> meet(a, b)) & 1 for a in elems for b in elems):
            subs.append(mask)
    subs.sort(key=lambda m: (popcount(m), m))
    names = ["{" + ",".join(labels[i] for i in iter_bits(m)) + "}" for m in subs]
    up = []
    for m in subs:
        row = 0
        for j, other in enumerate(subs):
            if m & ~other == 0:
                row |= 1 << j
        up.append(row)
    return dual(as_lattice(FinitePoset(tuple(names), tuple(up))))


_TRUNCATION_EVIDENCE = (
    Claim("eio_count", None, assertive=False),
    Claim("eio_i9_all", None, assertive=False),
)


def m_infinity(k: int) -> CorpusEntry:
    """Truncation of the flat family: k atoms over a least element.

    The structure returned is the dual of its lattice of meet-closed
    subsets. The infinite version is the standard non-representability
    witness; for the truncation only finite facts are asserted and the
    interior-operator evidence is recorded without being asserted.
    """
    if not 2 <= k <= 5:
        raise ParamOutOfRange("m_infinity supports 2 <= k <= 5")
    labels = ["a"] + [f"m{i}" for i in range(1, k + 1)]

    def meet(i: int, j: int) -> int:
        return i if i == j else 0

    lat = _sub_dual_lattice(labels, meet)
    claims = (Claim("element_count", (1 << k) + k + 1),) + _TRUNCATION_EVIDENCE
    return CorpusEntry(f"m_infinity({k})", lat, claims, truncated=True)


def m2(k: int) -> CorpusEntry:
    """Truncation of the chain-plus-wing family: a chain m1 < ... < mk, an
    extra element m meeting every chain element at the least element a.

    Returned as the dual of its meet-closed subset lattice; only finite
    facts are asserted.
    """
    if not 1 <= k <= 4:
        raise ParamOutOfRange("m2 supports 1 <= k <= 4")
    labels = ["a", "m"] + [f"m{i}" for i in range(1, k + 1)]

    def meet(i: int, j: int) -> int:
        if i == j:
            return i
        if i == 0 or j == 0:
            return 0
        if i == 1 or j == 1:
            return 0
        return min(i, j)

    lat = _sub_dual_lattice(labels, meet)
    claims = (Claim("element_count", 3 * (1 << k) + 1),) + _TRUNCATION_EVIDENCE
    return CorpusEntry(f"m2({k})", lat, claims, truncated=True)


def p1(k: int) -> CorpusEntry:
    """Truncation of the two-descending-chains family.

    Elements a0 > a1 > ... > ak and b0 > b1 > ... > bk with b0 > a0 and
    every mixed meet given by a at the larger index. Returned as the dual
    of its meet-closed subset lattice; only finite facts are asserted.
    """
    if not 1 <= k <= 3:
        raise ParamOutOfRange("p1 supports 1 <= k <= 3")
    labels = [f"a{i}" for i in range(k + 1)] + [f"b{i}" for i in range(k + 1)]

    def meet(i: int, j: int) -> int:
        ai = i <= k
        aj = j <= k
        ii = i if ai else i - (k + 1)
        jj = j if aj else j - (k + 1)
        if ai and aj:
            return max(ii, jj)
        if not ai and not aj:
            return max(ii, jj) + (k + 1)
        return max(ii, jj)

    lat = _sub_dual_lattice(labels, meet)
    claims: tuple[Claim, ...]
    if k == 1:
        claims = (Claim("element_count", 14),) + _TRUNCATION_EVIDENCE
    else:
        claims = (Claim("element_count", None, assertive=False),) + _TRUNCATION_EVIDENCE
    return CorpusEntry(f"p1({k})", lat, claims, truncated=True)


def _sublattice_closure(s: OpSemilattice, seeds: Iterable[Congruence]) -> list[Congruence]:
    items = {t.rep: t for t in seeds}
    changed = True
    while changed:
        changed = False
        current = list(items.values())
        for i, t1 in enumerate(current):
            for t2 in current[i:]:
                for new in (meet_congruences(t1, t2), join_congruences(s, t1, t2)):
                    if new.rep not in items:
                        items[new.rep] = new
                        changed = True
    return list(items.values())


def k_lattice() -> CorpusEntry:
    """The nine-element congruence sublattice with a unique interior operator.

    Inside the congruence lattice of the three-atom Boolean semilattice,
    close the four congruences
    a = [0][everything else], c = generated by (0, pq),
    x = generated by (0, p), z = generated by (0, q)
    under meets and joins. The result has coatoms a and c, admits exactly
    one interior operator (collapse everything below a), and that operator
    fails the dagger implication at (zeta, gamma, chi) = (z, c, x) while
    the lattice itself fails the bicoatomic refinement at (a, x, z).
    """
    s = _boolean_semilattice(3)
    idx = s.index
    a = make_congruence(s, [[0], list(range(1, s.n))])
    c = congruence_generated(s, [(0, idx["pq"])])
    x = congruence_generated(s, [(0, idx["p"])])
    z = congruence_generated(s, [(0, idx["q"])])
    members = _sublattice_closure(s, [a, c, x, z])
    lat, im, ordered = sublattice_interior(s, members)

    bottom = make_congruence(s, [[i] for i in range(s.n)])
    top = make_congruence(s, [list(range(s.n))])
    role = {
        a.rep: "a",
        c.rep: "c",
        x.rep: "x",
        z.rep: "z",
        meet_congruences(a, x).rep: "m2",
        meet_congruences(a, z).rep: "m3",
        meet_congruences(a, c).rep: "m1",
        bottom.rep: "0",
        top.rep: "1",
    }
    if set(role) != {t.rep for t in ordered}:
        raise InvariantViolation("unexpected closure: not the nine expected congruences")
    labels = tuple(role[t.rep] for t in ordered)
    lat2 = as_lattice(FinitePoset(labels, lat.poset.up))
    im2 = InteriorMap(lat2, im.h)

    threshold_map = {
        "0": "0", "m2": "0", "m3": "0", "m1": "0", "a": "0",
        "x": "x", "z": "z", "c": "c", "1": "1",
    }
    claims = (
        Claim("element_count", 9),
        Claim("coatom_labels", ("a", "c")),
        Claim("eio_count", 1),
        Claim("eio_label_maps", (threshold_map,)),
        Claim("dagger_witness", {"zeta": "z", "gamma": "c", "chi": "x"}),
        Claim("bicoatomic_witness", {"p": "a", "u": "x", "v": "z"}),
        Claim("filterable_pass", True),
    )
    extra = {"ambient": s, "members": tuple(ordered), "interior": im2}
    return CorpusEntry("k_lattice", lat2, claims, extra)


_BUILDERS = {
    "boolean": (boolean, True),
    "chain": (chain, True),
    "omega": (omega, True),
    "m_infinity": (m_infinity, True),
    "m2": (m2, True),
    "p1": (p1, True),
    "k_lattice": (k_lattice, False),
}


def build_named(name: str, n: int | None = None) -> CorpusEntry:
    """Dispatch to a named builder; n is the size parameter where one applies."""
    if name not in _BUILDERS:
        raise ParamOutOfRange(f"unknown corpus name {name!r}; choose from {sorted(_BUILDERS)}")
    fn, wants_param = _BUILDERS[name]
    if wants_param:
        if n is None:
            raise ParamOutOfRange(f"corpus entry {name!r} needs a size parameter")
        return fn(n)
    if n is not None:
        raise ParamOutOfRange(f"corpus entry {name!r} takes no size parameter")
    return fn()


def _join_table_of_poset(down: Sequence[int], n: int) -> list[list[int]] | None:
    """Join table of a naturally labeled poset, or None when some pair has no join."""
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            ub = 0
            for w in range(n):
                if (down[w] >> x) & 1 and (down[w] >> y) & 1:
                    ub |= 1 << w
            if ub == 0:
                return None
            best = None
            for w in iter_bits(ub):
                if down[w] & ub & ~(1 << w) == 0:
                    if best is not None:
                        return None
                    best = w
            table[x][y] = table[y][x] = best
    return table


def _canonical_table(table: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """Minimum bottom-fixing relabeling of a join table, over invariant-respecting maps."""
    down = [0] * n
    up = [0] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == y:
                up[x] |= 1 << y
                down[y] |= 1 << x
    inv0 = [(popcount(up[i]), popcount(down[i])) for i in range(n)]
    inv1 = [
        (inv0[i], tuple(sorted(inv0[j] for j in iter_bits(up[i]))),
         tuple(sorted(inv0[j] for j in iter_bits(down[i]))))
        for i in range(n)
    ]
    bottom = next(i for i in range(n) if popcount(down[i]) == 1)
    groups: dict = {}
    for i in range(n):
        if i != bottom:
            groups.setdefault(inv1[i], []).append(i)
    ordered_groups = [[bottom]] + [groups[k] for k in sorted(groups)]
    starts = []
    pos = 0
    for g in ordered_groups:
        starts.append(pos)
        pos += len(g)
    best = None
    for perms in itertools.product(*[itertools.permutations(g) for g in ordered_groups]):
        sigma = [0] * n
        for start, perm in zip(starts, perms):
            for offset, elem in enumerate(perm):
                sigma[elem] = start + offset
        invperm = [0] * n
        for elem, p in enumerate(sigma):
            invperm[p] = elem
        enc = tuple(
            sigma[table[invperm[r]][invperm[c]]] for r in range(n) for c in range(n)
        )
        if best is None or enc < best:
            best = enc
    return best


def _canonical_semilattices(n: int) -> list[OpSemilattice]:
    if n == 1:
        return [from_join_table(("0",), [[0]], 0)]
    seen: dict[tuple[int, ...], None] = {}
    out: list[OpSemilattice] = []
    down: list[int] = [1]

    def minimal_ub_ok(i: int) -> bool:
        for x in range(i + 1):
            for y in range(x + 1, i + 1):
                ub = 0
                for w in range(i + 1):
                    if (down[w] >> x) & 1 and (down[w] >> y) & 1:
                        ub |= 1 << w
                minimal = 0
                for w in iter_bits(ub):
                    if down[w] & ub & ~(1 << w) == 0:
                        minimal += 1
                        if minimal > 1:
                            return False
        return True

    def emit() -> None:
        table = _join_table_of_poset(down, n)
        if table is None:
            return
        key = _canonical_table(table, n)
        if key in seen:
            return
        seen[key] = None
        labels = tuple(["0"] + [f"e{i}" for i in range(1, n)])
        canon = [[key[r * n + c] for c in range(n)] for r in range(n)]
        out.append(from_join_table(labels, canon, 0))

    def extend(i: int) -> None:
        if i == n:
            emit()
            return
        for pick in range(1 << i):
            if not pick & 1:
                continue
            if any(down[j] & ~pick for j in iter_bits(pick)):
                continue
            down.append(pick | (1 << i))
            if minimal_ub_ok(i):
                extend(i + 1)
            down.pop()

    extend(1)
    return out


def enumerate_semilattices(max_elements: int) -> tuple[OpSemilattice, ...]:
    """One representative per isomorphism class, sizes 1 through the bound (<= 7)."""
    if max_elements < 1:
        raise ParamOutOfRange("need at least one element")
    if max_elements > 7:
        raise BudgetExceeded("exhaustive enumeration is limited to 7 elements")
    out: list[OpSemilattice] = []
    for n in range(1, max_elements + 1):
        out.extend(_canonical_semilattices(n))
    return tuple(out)


@dataclass
class Catalog:
    parameters: dict
    names: tuple[str, ...]
    entries: tuple[OpSemilattice, ...]

    def __iter__(self):
        return iter(zip(self.names, self.entries))

    def __len__(self) -> int:
        return len(self.entries)


def generate_catalog(
    max_elements: int,
    max_operators: int = 0,
    mode: str = "exhaustive",
    seed: int = 0,
    singles_cap: int = 12,
    pair_samples: int = 4,
    random_samples: int = 8,
) -> Catalog:
    """Catalog of small semilattices, optionally decorated with operators.

    Every isomorphism class up to the element bound appears bare. With an
    operator budget of one, each base gains its endomorphisms as single
    operators (all of them, or a seeded sample when there are more than
    ``singles_cap``); with a budget of two, ``pair_samples`` seeded pairs
    are added as well. Random mode keeps a seeded sample of the bases.
    """
    if mode not in ("exhaustive", "random"):
        raise ParamOutOfRange("mode must be exhaustive or random")
    if max_operators < 0:
        raise ParamOutOfRange("operator budget cannot be negative")
    bases = list(enumerate_semilattices(max_elements))
    rng = random.Random(seed)
    if mode == "random":
        bases = list(rng.sample(bases, min(len(bases), random_samples)))
    names: list[str] = []
    entries: list[OpSemilattice] = []
    per_size: dict[int, int] = {}
    for s in bases:
        k = per_size.get(s.n, 0)
        per_size[s.n] = k + 1
        base_name = f"S{s.n}-{k}"
        names.append(base_name)
        entries.append(s)
        if max_operators >= 1:
            endos = all_endomorphisms(s)
            if len(endos) > singles_cap:
                chosen = sorted(rng.sample(endos, singles_cap))
            else:
                chosen = list(endos)
            for j, f in enumerate(chosen):
                names.append(f"{base_name}+f{j}")
                entries.append(s.with_operators([("f", f)]))
            if max_operators >= 2 and len(endos) >= 2:
                for t in range(pair_samples):
                    f, g = rng.sample(endos, 2)
                    names.append(f"{base_name}+pair{t}")
                    entries.append(s.with_operators([("f", f), ("g", g)]))
    params = {
        "max_elements": max_elements,
        "max_operators": max_operators,
        "mode": mode,
        "seed": seed,
    }
    return Catalog(params, tuple(names), tuple(entries))
