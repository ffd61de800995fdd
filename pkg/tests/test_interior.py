from __future__ import annotations

import json

import pytest

import oracles
from eqlat.congruence import all_congruences, congruence_generated, eta, tau
from eqlat.corpus import boolean, chain, omega
from eqlat.errors import InvariantViolation, SearchBudgetExceeded
from eqlat.interior import (
    InteriorMap,
    check_axioms,
    check_bicoatomic,
    check_four_coatom,
    enumerate_eios,
    natural_eta,
    normalize_map,
    tau_of_map,
)
from eqlat.order import lattice_from_covers


def m3():
    return lattice_from_covers(
        ("0", "a", "b", "c", "1"),
        (("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")),
    )


def n5():
    return lattice_from_covers(
        ("0", "a", "b", "c", "1"),
        (("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")),
    )


def b3_counterexample_map():
    s = boolean(3).structure
    h = list(range(s.n))
    h[s.index["q"]] = s.index["0"]
    return s, tuple(h)


def test_enumeration_matches_full_map_scan(small_semilattices):
    checked = 0
    for s in small_semilattices:
        l = s.lattice
        if l.n > 5:
            continue
        got = {im.h for im in enumerate_eios(l)}
        assert got == oracles.oracle_eios(l)
        checked += 1
    assert checked >= 10


def test_known_eio_counts():
    assert len(enumerate_eios(boolean(2).structure.lattice)) == 3
    assert len(enumerate_eios(boolean(3).structure.lattice)) == 22


def test_enumeration_requires_the_generating_axioms():
    with pytest.raises(InvariantViolation):
        enumerate_eios(boolean(2).structure.lattice, axioms=("I1", "I2", "I3"))
    with pytest.raises(InvariantViolation):
        enumerate_eios(boolean(2).structure.lattice, axioms=("I1", "I2", "I3", "I4", "bogus"))


def test_enumeration_budget_guard():
    l = chain(6).structure.lattice
    with pytest.raises(SearchBudgetExceeded):
        enumerate_eios(l, max_subsets=16)


def test_interior_map_validates_basic_axioms():
    l = boolean(2).structure.lattice
    with pytest.raises(InvariantViolation):
        InteriorMap(l, (0, 3, 0, 3))
    with pytest.raises(InvariantViolation):
        InteriorMap(l, (0, 1, 2, 0))


def test_normalize_map_accepts_label_dicts():
    s = boolean(2).structure
    h = normalize_map(s.lattice, {"0": "0", "p": "0", "q": "0", "1": "1"})
    assert h == (0, 0, 0, 3)


def test_identity_passes_on_distributive_lattices():
    for l in (boolean(2).structure.lattice, chain(4).structure.lattice):
        report = check_axioms(l, tuple(range(l.n)))
        assert report.passed
        assert report.failing() == ()


def test_identity_fails_the_distributivity_axiom_on_m3_and_n5():
    for l in (m3(), n5()):
        report = check_axioms(l, tuple(range(l.n)))
        verdict = report.verdict("I6")
        assert verdict.passed is False
        assert set(verdict.witness) == {"x", "y", "z"}


def test_counterexample_map_fails_only_the_closing_axioms():
    s, h = b3_counterexample_map()
    report = check_axioms(s.lattice, h)
    for name in ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8"):
        assert report.verdict(name).passed, name
    dd = report.verdict("ddagger")
    assert dd.passed is False
    assert dd.witness == {"x": "p", "z": "r"}
    d = report.verdict("dagger")
    assert d.passed is False
    assert d.witness == {"zeta": "r", "gamma": "pr", "chi": "p"}
    nine = report.verdict("I9")
    assert nine.passed is False
    assert nine.witness is not None and set(nine.witness) == {"x", "c", "zs"}


def test_tau_of_counterexample_map_identifies_the_collapsed_fiber():
    s, h = b3_counterexample_map()
    t = tau_of_map(s.lattice, h)
    q = s.index["q"]
    assert t[0] == q and t[q] == q
    assert all(t[x] == x for x in range(s.n) if x not in (0, q))


def test_fiber_blocks_are_intervals_from_value_to_tau():
    l = boolean(2).structure.lattice
    for im in enumerate_eios(l):
        assert im.satisfies_i5
        blocks = im.blocks
        assert len(blocks) == len(set(im.h))
        for lo, hi in blocks:
            assert l.leq(lo, hi) and im.h[lo] == lo and im.tau[lo] == hi


def test_natural_map_on_the_three_chain_is_not_the_identity():
    s = chain(2).structure
    conl = all_congruences(s)
    im = natural_eta(s, conl)
    upper = make_upper_collapse_index(s, conl)
    assert im.apply(upper) == 0
    assert im.h != tuple(range(conl.lattice.n))


def make_upper_collapse_index(s, conl):
    theta = congruence_generated(s, [(1, 2)])
    return conl.index_of(theta)


def test_natural_map_tau_matches_congruence_tau(small_semilattices):
    for s in small_semilattices[:6]:
        conl = all_congruences(s)
        im = natural_eta(s, conl)
        for i, theta in enumerate(conl.congruences):
            expected = conl.index_of(tau(s, theta))
            assert im.tau[i] == expected
            assert im.apply(i) == conl.index_of(eta(s, theta))


def test_natural_map_passes_the_full_battery_on_small_carriers():
    for s in (chain(3).structure, boolean(2).structure, omega(4).structure):
        conl = all_congruences(s)
        report = check_axioms(conl.lattice, natural_eta(s, conl))
        assert report.passed, report.failing()


def test_i9_family_modes_and_notes():
    s = boolean(2).structure
    conl = all_congruences(s)
    report = check_axioms(conl.lattice, natural_eta(s, conl), i9_subset_bound=4)
    verdict = report.verdict("I9")
    assert verdict.passed
    assert "families up to size 4" in (verdict.note or "")

    big = boolean(4).structure.lattice
    report = check_axioms(big, tuple(range(big.n)))
    verdict = report.verdict("I9")
    assert verdict.passed
    assert "sampled" in (verdict.note or "")


def test_bicoatomic_modes_agree(small_semilattices):
    for s in small_semilattices:
        l = s.lattice
        strict = check_bicoatomic(l, properly="strict")
        loose = check_bicoatomic(l, properly="nontrivial")
        assert strict.passed == loose.passed


def test_bicoatomic_rejects_unknown_mode():
    with pytest.raises(InvariantViolation):
        check_bicoatomic(boolean(2).structure.lattice, properly="bogus")


def test_four_coatom_requires_matching_carrier():
    l = boolean(2).structure.lattice
    other = chain(3).structure.lattice
    im = enumerate_eios(l)[0]
    with pytest.raises(InvariantViolation):
        check_four_coatom(other, im)


def test_report_serialization_round_trips():
    s, h = b3_counterexample_map()
    report = check_axioms(s.lattice, h)
    data = json.loads(report.to_json())
    assert set(data) == {name for name, _ in report.entries}
    assert data["ddagger"]["passed"] is False
    assert data["I1"]["passed"] is True
