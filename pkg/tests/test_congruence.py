from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from eqlat.congruence import (
    all_congruences,
    all_don,
    all_eon,
    con_of_don,
    congruence_generated,
    don_generated,
    don_of,
    don_of_eon,
    eon_generated,
    eon_of_don,
    eta,
    join_congruences,
    make_congruence,
    meet_congruences,
    quotient,
    tau,
    validate_don,
    validate_eon,
)
from eqlat.corpus import boolean, chain, omega
from eqlat.errors import InvariantViolation
from eqlat.semilattice import ideals


def test_congruences_match_partition_oracle(tiny_semilattices):
    for s in tiny_semilattices:
        got = {t.rep for t in all_congruences(s).congruences}
        assert got == oracles.oracle_congruences(s)


def test_known_congruence_counts():
    assert len(all_congruences(chain(2).structure).congruences) == 4
    assert len(all_congruences(boolean(2).structure).congruences) == 7
    for n in range(1, 6):
        assert len(all_congruences(chain(n).structure).congruences) == 2**n


def test_congruence_lattice_order_is_refinement():
    conl = all_congruences(boolean(2).structure)
    lat = conl.lattice
    for i, a in enumerate(conl.congruences):
        for j, b in enumerate(conl.congruences):
            assert lat.leq(i, j) == a.refines(b)


def test_make_congruence_rejects_incompatible_partition():
    b2 = boolean(2).structure
    with pytest.raises(InvariantViolation):
        make_congruence(b2, [[0, b2.index["p"]], [b2.index["q"]], [b2.index["1"]]])


def test_congruence_generated_is_least_in_the_oracle(tiny_semilattices):
    for s in tiny_semilattices:
        universe = oracles.oracle_congruences(s)
        for x in range(s.n):
            for y in range(s.n):
                gen = congruence_generated(s, [(x, y)]).rep
                above = [r for r in universe if r[x] == r[y]]
                least = [r for r in above if all(oracles.refines(r, o) for o in above)]
                assert len(least) == 1 and gen == least[0]


def test_join_and_meet_agree_with_refinement(tiny_semilattices):
    for s in tiny_semilattices:
        cons = all_congruences(s).congruences
        for a in cons:
            for b in cons:
                m = meet_congruences(a, b)
                j = join_congruences(s, a, b)
                assert m.refines(a) and m.refines(b)
                assert a.refines(j) and b.refines(j)
                for c in cons:
                    if c.refines(a) and c.refines(b):
                        assert c.refines(m)
                    if a.refines(c) and b.refines(c):
                        assert j.refines(c)


def test_eta_tau_match_partition_oracle(tiny_semilattices):
    for s in tiny_semilattices:
        for i in ideals(s, f_closed_only=True):
            least, greatest = oracles.oracle_eta_tau(s, i.mask)
            assert eta(s, i).rep == least
            assert tau(s, i).rep == greatest


def test_eta_tau_bound_every_congruence(small_semilattices):
    for s in small_semilattices:
        for theta in all_congruences(s).congruences:
            lo = eta(s, theta)
            hi = tau(s, theta)
            assert lo.refines(theta) and theta.refines(hi)
            assert lo.zero_class_mask(s) == theta.zero_class_mask(s)
            assert hi.zero_class_mask(s) == theta.zero_class_mask(s)


def test_equa_partition_intervals_are_disjoint_and_cover(small_semilattices):
    for s in small_semilattices:
        cons = all_congruences(s).congruences
        by_zero_class: dict[int, list] = {}
        for theta in cons:
            by_zero_class.setdefault(theta.zero_class_mask(s), []).append(theta)
        assert sum(len(v) for v in by_zero_class.values()) == len(cons)
        for mask, group in by_zero_class.items():
            lo = eta(s, group[0])
            hi = tau(s, group[0])
            for theta in group:
                assert lo.refines(theta) and theta.refines(hi)


def test_don_enumeration_matches_relation_scan():
    for s in [chain(2).structure, boolean(2).structure, omega(2).structure]:
        got = {r.rows for r in all_don(s)}
        assert got == oracles.oracle_don(s)


def test_eon_enumeration_matches_relation_scan():
    for s in [chain(2).structure, boolean(2).structure, omega(2).structure]:
        got = {r.rows for r in all_eon(s)}
        assert got == oracles.oracle_eon(s)


def test_con_don_eon_round_trips(small_semilattices):
    for s in small_semilattices:
        for theta in all_congruences(s).congruences:
            d = don_of(s, theta)
            validate_don(s, d)
            assert con_of_don(s, d).rep == theta.rep
            e = eon_of_don(s, d)
            validate_eon(s, e)
            assert don_of_eon(s, e).rows == d.rows
        for d in all_don(s):
            assert don_of(s, con_of_don(s, d)).rows == d.rows
        for e in all_eon(s):
            assert eon_of_don(s, don_of_eon(s, e)).rows == e.rows


def test_generated_relations_are_least(small_semilattices):
    for s in small_semilattices:
        dons = all_don(s)
        eons = all_eon(s)
        for x in range(s.n):
            for y in range(s.n):
                g = don_generated(s, [(x, y)])
                above = [d for d in dons if d.holds(x, y)]
                assert all(d.contains(g) for d in above) and g.rows in {
                    d.rows for d in above
                }
                if s.leq(x, y):
                    ge = eon_generated(s, [(x, y)])
                    above_e = [e for e in eons if e.holds(x, y)]
                    assert all(e.contains(ge) for e in above_e)


def test_quotient_by_congruence():
    b2 = boolean(2).structure
    theta = congruence_generated(b2, [(0, b2.index["p"])])
    q = quotient(b2, theta)
    assert q.n == theta.block_count
    assert q.join_all(range(q.n)) == q.top


def test_quotient_of_omega_keeps_operator():
    s = omega(3).structure
    theta = congruence_generated(s, [(0, 1)])
    q = quotient(s, theta)
    assert len(q.operators) == 1
    assert q.n == theta.block_count


@given(st.data())
def test_congruence_relation_properties(small_semilattices, data):
    s = data.draw(st.sampled_from(small_semilattices))
    cons = all_congruences(s).congruences
    theta = data.draw(st.sampled_from(cons))
    x = data.draw(st.integers(0, s.n - 1))
    y = data.draw(st.integers(0, s.n - 1))
    z = data.draw(st.integers(0, s.n - 1))
    assert theta.relates(x, x)
    assert theta.relates(x, y) == theta.relates(y, x)
    if theta.relates(x, y):
        assert theta.relates(s.join(x, z), s.join(y, z))
        assert theta.relates(x, s.join(x, y))
        for _, images in s.operators:
            assert theta.relates(images[x], images[y])
