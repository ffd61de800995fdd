"""Named verification suites shared by the command line and the test suite.

Each suite runs one theorem-shaped check over a deterministic corpus:
the exhaustive small-structure catalog (optionally decorated with
operators), the named corpus entries, and the enumerated interior maps on
small lattices. A suite returns a list of CheckOutcome rows; a run passes
when no row failed (skips do not count as failures).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .congruence import all_congruences
from .corpus import (
    boolean,
    enumerate_semilattices,
    generate_catalog,
    k_lattice,
    omega,
)
from .errors import ParamOutOfRange
from .galois import check_filterable, sublattice_interior, verify_consl
from .interior import (
    check_axioms,
    check_bicoatomic,
    check_coatom_dependence,
    check_four_coatom,
    enumerate_eios,
    natural_eta,
)
from .semilattice import all_endomorphisms


@dataclass(frozen=True)
class CheckOutcome:
    check: str
    structure: str
    passed: bool | None
    witness: dict | None = None
    note: str | None = None

    @property
    def verdict(self) -> str:
        if self.passed is None:
            return "skip"
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        out: dict = {"check": self.check, "structure": self.structure, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def all_passed(outcomes) -> bool:
    return all(o.passed is not False for o in outcomes)


_CATALOGS: dict = {}


def catalog_for_acceptance(seed: int = 0) -> list[tuple[str, object]]:
    """The deterministic corpus used by the operator-aware suites.

    Every isomorphism class up to six elements, decorated with single
    operators (all endomorphisms, or a seeded sample of twelve when there
    are more) and four seeded operator pairs, plus the predecessor chains
    and the two-atom Boolean semilattice.
    """
    if seed not in _CATALOGS:
        cat = generate_catalog(6, max_operators=2, seed=seed)
        pairs: list[tuple[str, object]] = list(zip(cat.names, cat.entries))
        for n in range(1, 7):
            entry = omega(n)
            pairs.append((entry.name, entry.structure))
        b2 = boolean(2)
        pairs.append((b2.name, b2.structure))
        _CATALOGS[seed] = pairs
    return _CATALOGS[seed]


_NATURAL: dict = {}


def _natural_reports(seed: int = 0):
    """check_axioms on the zero-class collapse map of each catalog congruence lattice."""
    if seed not in _NATURAL:
        rows = []
        for name, s in catalog_for_acceptance(seed):
            conl = all_congruences(s)
            im = natural_eta(s, conl)
            report = check_axioms(conl.lattice, im, seed=seed)
            rows.append((name, conl, im, report))
        _NATURAL[seed] = rows
    return _NATURAL[seed]


_IMPLICATION: dict = {}


def _implication_instances(seed: int = 0):
    """Every (lattice, interior map) pair on the small-lattice corpus.

    Lattices: all isomorphism classes up to seven elements plus the
    three-atom Boolean lattice; maps: every operator passing the default
    interior axioms.
    """
    if seed not in _IMPLICATION:
        lattices = []
        per_size: dict[int, int] = {}
        for s in enumerate_semilattices(7):
            k = per_size.get(s.n, 0)
            per_size[s.n] = k + 1
            lattices.append((f"L{s.n}-{k}", s.lattice))
        lattices.append(("boolean(3)", boolean(3).structure.lattice))
        rows = []
        for lname, lat in lattices:
            for i, im in enumerate(enumerate_eios(lat)):
                report = check_axioms(lat, im, seed=seed)
                rows.append((f"{lname}#h{i}", lname, lat, im, report))
        _IMPLICATION[seed] = rows
    return _IMPLICATION[seed]


_DEPENDENCE: dict = {}


def _dependence_reports(seed: int = 0):
    if seed not in _DEPENDENCE:
        rows = []
        for name, lname, lat, im, report in _implication_instances(seed):
            i9 = report.verdict("I9").passed
            rows.append((name, check_coatom_dependence(lat, im, i9_passed=i9)))
        _DEPENDENCE[seed] = rows
    return _DEPENDENCE[seed]


def suite_consl(seed: int = 0) -> list[CheckOutcome]:
    """Congruence/ideal-family duality on every bare semilattice up to six elements."""
    out = []
    per_size: dict[int, int] = {}
    for s in enumerate_semilattices(6):
        k = per_size.get(s.n, 0)
        per_size[s.n] = k + 1
        res = verify_consl(s)
        out.append(CheckOutcome("consl", f"S{s.n}-{k}", res.passed, res.witness, res.note))
    return out


def _axiom_suite(check_name: str, axiom_names: tuple[str, ...], seed: int) -> list[CheckOutcome]:
    out = []
    for name, conl, im, report in _natural_reports(seed):
        witness = None
        note = None
        passed = True
        for ax in axiom_names:
            v = report.verdict(ax)
            if v.passed is False:
                passed = False
                witness = v.witness
                note = f"failing axiom {ax}"
                break
        if passed and check_name == "twelve":
            note = report.verdict("I9").note
        out.append(CheckOutcome(check_name, name, passed, witness, note))
    return out


def suite_equaint(seed: int = 0) -> list[CheckOutcome]:
    """The zero-class collapse map passes I1 through I7 on every catalog entry."""
    return _axiom_suite("equaint", ("I1", "I2", "I3", "I4", "I5", "I6", "I7"), seed)


def suite_prop(seed: int = 0) -> list[CheckOutcome]:
    """The zero-class collapse map passes dagger and ddagger on every catalog entry."""
    return _axiom_suite("prop", ("dagger", "ddagger"), seed)


def suite_twelve(seed: int = 0) -> list[CheckOutcome]:
    """The zero-class collapse map passes I9 on every catalog entry."""
    return _axiom_suite("twelve", ("I9",), seed)


def suite_bicoatom(seed: int = 0) -> list[CheckOutcome]:
    """Lattices carrying a dagger-passing interior map are bicoatomic."""
    by_lattice: dict[str, tuple] = {}
    dagger_count: dict[str, int] = {}
    for name, lname, lat, im, report in _implication_instances(seed):
        by_lattice.setdefault(lname, (lname, lat))
        if report.verdict("dagger").passed:
            dagger_count[lname] = dagger_count.get(lname, 0) + 1
    out = []
    for lname, lat in by_lattice.values():
        k = dagger_count.get(lname, 0)
        if k == 0:
            out.append(CheckOutcome("bicoatom", lname, None, None, "skip: no dagger-passing map"))
            continue
        res = check_bicoatomic(lat)
        out.append(CheckOutcome("bicoatom", lname, res.passed, res.witness,
                                f"dagger-passing maps: {k}"))
    return out


def suite_four_coatom(seed: int = 0) -> list[CheckOutcome]:
    """Dagger-passing interior maps satisfy the four-coatom implication."""
    out = []
    for name, lname, lat, im, report in _implication_instances(seed):
        if not report.verdict("dagger").passed:
            out.append(CheckOutcome("four-coatom", name, None, None, "skip: dagger fails"))
            continue
        res = check_four_coatom(lat, im)
        out.append(CheckOutcome("four-coatom", name, res.passed, res.witness))
    return out


def _june_suite(entry_name: str, seed: int) -> list[CheckOutcome]:
    out = []
    for name, dep in _dependence_reports(seed):
        v = dep.verdict(entry_name)
        out.append(CheckOutcome(entry_name, name, v.passed, v.witness, v.note))
    return out


def suite_june1(seed: int = 0) -> list[CheckOutcome]:
    """Coatom dependence: the join identity over maximal families."""
    return _june_suite("june1", seed)


def suite_june2(seed: int = 0) -> list[CheckOutcome]:
    """Coatom dependence: the four per-triple conclusions."""
    return _june_suite("june2", seed)


def suite_june5(seed: int = 0) -> list[CheckOutcome]:
    """Coatom dependence under I9: per-coatom families share the join identity."""
    return _june_suite("june5", seed)


def suite_june6(seed: int = 0) -> list[CheckOutcome]:
    """Coatom dependence under I9: meets of witnesses stay off the coatom."""
    return _june_suite("june6", seed)


def suite_filterable(seed: int = 0) -> list[CheckOutcome]:
    """Operator congruence lattices are filterable, and induce interior maps.

    For every decorated catalog entry: the operator-respecting congruences
    form a filterable sublattice of the reduct congruence lattice, and the
    induced zero-class collapse map passes I1 through I7. The nine-element
    reconstruction is included as the standing nontrivial example.
    """
    out = []
    entry = k_lattice()
    res = check_filterable(entry.extra["ambient"], entry.extra["members"])
    out.append(CheckOutcome("filterable", entry.name, res.passed, res.witness, res.note))
    for name, s in catalog_for_acceptance(seed):
        if not getattr(s, "operators", ()):
            continue
        members = all_congruences(s).congruences
        res = check_filterable(s, members)
        out.append(CheckOutcome("filterable", name, res.passed, res.witness, res.note))
        lat, im, _ = sublattice_interior(s, members)
        report = check_axioms(lat, im, seed=seed)
        bad = [ax for ax in ("I1", "I2", "I3", "I4", "I5", "I6", "I7")
               if report.verdict(ax).passed is False]
        out.append(CheckOutcome(
            "filterable-interior", name, not bad,
            None if not bad else report.verdict(bad[0]).witness,
            None if not bad else f"failing axiom {bad[0]}",
        ))
    return out


def suite_simple_scan(max_elements: int = 6, seed: int = 0) -> list[CheckOutcome]:
    """Semilattices with one operator and only two congruences have two elements."""
    out = []
    per_size: dict[int, int] = {}
    for s in enumerate_semilattices(max_elements):
        k = per_size.get(s.n, 0)
        per_size[s.n] = k + 1
        name = f"S{s.n}-{k}"
        endos = all_endomorphisms(s)
        simple = 0
        witness = None
        for f in endos:
            decorated = s.with_operators([("f", f)])
            if len(all_congruences(decorated).congruences) == 2:
                simple += 1
                if s.n != 2 and witness is None:
                    witness = {"operator": ",".join(s.labels[v] for v in f)}
        out.append(CheckOutcome(
            "simple-scan", name, witness is None, witness,
            f"endomorphisms={len(endos)}, simple instances={simple}",
        ))
    return out


def suite_coatomistic(max_elements: int = 6, seed: int = 0) -> list[CheckOutcome]:
    """Every element of an operator-free congruence lattice is a meet of coatoms."""
    out = []
    per_size: dict[int, int] = {}
    for s in enumerate_semilattices(max_elements):
        k = per_size.get(s.n, 0)
        per_size[s.n] = k + 1
        name = f"S{s.n}-{k}"
        conl = all_congruences(s)
        lat = conl.lattice
        witness = None
        for v in range(lat.n):
            above = [c for c in lat.coatoms if lat.leq(v, c)]
            if lat.meet_all(above) != v:
                witness = {"element": lat.labels[v]}
                break
        out.append(CheckOutcome("coatomistic", name, witness is None, witness,
                                f"|Con|={lat.n}"))
    return out


SUITES = {
    "consl": suite_consl,
    "equaint": suite_equaint,
    "prop": suite_prop,
    "twelve": suite_twelve,
    "bicoatom": suite_bicoatom,
    "four-coatom": suite_four_coatom,
    "june1": suite_june1,
    "june2": suite_june2,
    "june5": suite_june5,
    "june6": suite_june6,
    "filterable": suite_filterable,
    "simple-scan": suite_simple_scan,
    "coatomistic": suite_coatomistic,
}


def run_suite(name: str, seed: int = 0) -> list[CheckOutcome]:
    if name not in SUITES:
        raise ParamOutOfRange(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed)
