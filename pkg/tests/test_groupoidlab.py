"""Finite groupoids, actions, functors, and dualization."""

import pytest

from hopfbundles.exactlin import QQ, prime_field
from hopfbundles.groupoidlab import (
    FinGroupoid,
    GroupoidAction,
    GroupoidError,
    GroupoidFunctor,
    action_groupoid,
    action_orbits,
    action_to_comodule_algebra,
    compose_functors,
    cyclic_group_groupoid,
    discrete_groupoid,
    dualize,
    dualize_functor,
    orbits,
    pair_groupoid,
    point_groupoid,
    semidirect_comparison,
    swap_action,
    symmetric_group_3,
    verify_action,
    verify_groupoid,
    verify_groupoid_functor,
)
from hopfbundles.bundles import verify_comodule_algebra
from hopfbundles.corpus import ACTION_NAMES, GROUPOID_NAMES
from hopfbundles.hopfcore import verify_hopf_algebroid


def test_registry_groupoids_satisfy_the_axioms(corpus):
    for name in GROUPOID_NAMES:
        rep = verify_groupoid(corpus.groupoid(name))
        assert rep.ok, "%s: %s" % (name, rep.render())


def test_stock_sizes():
    assert point_groupoid().n_arrows == 1
    assert discrete_groupoid(3).n_arrows == 3
    assert pair_groupoid(3).n_arrows == 9
    assert cyclic_group_groupoid(4).n_arrows == 4
    s3 = symmetric_group_3()
    assert s3.n_objects == 1 and s3.n_arrows == 6


def test_broken_composition_table_fails_verification():
    c3 = cyclic_group_groupoid(3)
    comp = dict(c3.comp)
    comp[(1, 1)] = 0  # g then g declared to be the identity
    bad = FinGroupoid(c3.objects, c3.arrows, c3.src, c3.tgt, c3.ident, comp, c3.inv)
    rep = verify_groupoid(bad)
    assert not rep.ok
    assert any("associat" in c.name for c in rep.failures())


def test_malformed_tables_are_rejected_at_construction():
    c2 = cyclic_group_groupoid(2)
    with pytest.raises(GroupoidError):
        FinGroupoid(c2.objects, c2.arrows, c2.src, c2.tgt, (5,), c2.comp, c2.inv)


def test_orbit_counts_match_the_oracle(expected):
    counts = expected["orbit_counts"]
    assert len(orbits(cyclic_group_groupoid(3))) == counts["cyclic3"]
    assert len(orbits(discrete_groupoid(2))) == counts["discrete2"]
    assert len(orbits(pair_groupoid(2))) == counts["pair2"]
    assert len(action_orbits(swap_action())) == counts["z2_swap_action"]


def test_registry_actions_verify(corpus):
    for name in ACTION_NAMES:
        assert verify_action(corpus.action(name)).ok, name


def test_action_coverage_is_checked():
    c2 = cyclic_group_groupoid(2)
    with pytest.raises(GroupoidError):
        GroupoidAction(c2, ("p",), (0,), {})  # missing entries


def test_action_groupoid_of_the_swap():
    ag = action_groupoid(swap_action())
    assert ag.n_objects == 2
    assert ag.n_arrows == 4
    assert verify_groupoid(ag).ok
    assert len(orbits(ag)) == 1


def test_functor_verification_and_composition():
    pt = point_groupoid()
    pr2 = pair_groupoid(2)
    incl = GroupoidFunctor(pt, pr2, (0,), (0,))
    assert verify_groupoid_functor(incl).ok
    # sending the identity to the flip of C2 breaks the identity law
    skew = GroupoidFunctor(pt, cyclic_group_groupoid(2), (0,), (1,))
    assert not verify_groupoid_functor(skew).ok
    ident = GroupoidFunctor(pt, pt, (0,), (0,))
    again = compose_functors(ident, incl)
    assert again.obj_map == incl.obj_map and again.arr_map == incl.arr_map


def test_dualize_dimensions(corpus):
    for name in GROUPOID_NAMES:
        g = corpus.groupoid(name)
        h = corpus.algebroid(name)
        assert h.total.dim == g.n_arrows
        assert h.base.dim == g.n_objects


def test_dual_coinvariants_count_orbits(corpus, expected):
    # dual statement of the orbit count, straight from the registry
    from hopfbundles.comod import coinvariants, unit_comodule

    counts = expected["orbit_counts"]
    for name, key in (("c3", "cyclic3"), ("d2", "discrete2"), ("pr2", "pair2")):
        h = corpus.algebroid(name)
        sub = coinvariants(unit_comodule(h, "right"))
        assert sub.cols == counts[key], name


def test_dualize_functor_is_contravariant(corpus):
    fm = corpus.morphism("incl")
    assert fm.dom == corpus.algebroid("pr2")
    assert fm.cod == corpus.algebroid("pt")
    assert fm.phi1.matrix.rows == 1 and fm.phi1.matrix.cols == 4


def test_dualize_over_prime_fields():
    h = dualize(symmetric_group_3(), prime_field(5))
    assert verify_hopf_algebroid(h).ok


def test_action_to_comodule_algebra_verifies():
    ca = action_to_comodule_algebra(swap_action(), QQ)
    assert verify_comodule_algebra(ca).ok


def test_semidirect_comparison_is_bijective():
    dual_semi, lt, mor = semidirect_comparison(swap_action(), QQ)
    assert verify_hopf_algebroid(dual_semi).ok
    assert verify_hopf_algebroid(lt).ok
    from hopfbundles.exactlin import rank

    assert mor.phi1.matrix.rows == mor.phi1.matrix.cols
    assert rank(mor.phi1.matrix) == mor.phi1.matrix.rows
