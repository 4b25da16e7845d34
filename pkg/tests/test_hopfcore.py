"""Hopf algebroid axioms, morphisms, scalar extension, translation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfbundles.corpus import GROUPOID_NAMES
from hopfbundles.exactlin import QQ, Matrix, rank
from hopfbundles.finalg import AlgebraError, AlgMorphism, identity_morphism
from hopfbundles.groupoidlab import dualize, symmetric_group_3
from hopfbundles.hopfcore import (
    HopfAlgebroid,
    HopfMorphism,
    canonical_factor,
    identity_hopf_morphism,
    left_translation,
    scalar_extension,
    verify_hopf_algebroid,
    verify_hopf_morphism,
)


def test_registry_duals_satisfy_all_axioms(corpus):
    for name in GROUPOID_NAMES:
        rep = verify_hopf_algebroid(corpus.algebroid(name))
        assert rep.ok, "%s: %s" % (name, rep.render())


def test_source_and_target_land_in_the_flags(corpus):
    h = corpus.algebroid("s3")
    assert h.flat_s and h.flat_t


def test_counit_splits_source_and_target(corpus):
    for name in ("c3", "pr2", "act"):
        h = corpus.algebroid(name)
        eye = Matrix.identity(QQ, h.base.dim)
        assert h.counit * h.s.matrix == eye
        assert h.counit * h.t.matrix == eye


def test_antipode_is_involutive_and_swaps_legs(corpus):
    for name in ("c3", "s3", "act"):
        h = corpus.algebroid(name)
        eye = Matrix.identity(QQ, h.total.dim)
        assert h.antipode * h.antipode == eye
        assert h.antipode * h.s.matrix == h.t.matrix


def test_wrong_antipode_is_caught():
    h = dualize(symmetric_group_3(), QQ)
    eye = Matrix.identity(QQ, 6)
    bad = HopfAlgebroid(h.base, h.total, h.s, h.t, h.delta_plain, h.counit, eye)
    rep = verify_hopf_algebroid(bad)
    assert not rep.ok


def test_shape_mismatches_raise():
    h = dualize(symmetric_group_3(), QQ)
    with pytest.raises(AlgebraError):
        HopfAlgebroid(h.base, h.total, h.s, h.t, h.delta_plain, h.counit, Matrix.identity(QQ, 5))


def test_nonflat_source_needs_the_flag(corpus):
    # collapsing the total of dual(pr2) onto functions on the diagonal
    # arrows gives a perfectly shaped but non faithfully flat source
    h = corpus.algebroid("pr2")
    cols = []
    for j in range(h.base.dim):
        col = h.s.matrix.col(j)
        cols.append(tuple(x if i == 0 else QQ.zero for i, x in enumerate(col)))
    squash = AlgMorphism(h.base, h.total, Matrix.from_columns(QQ, cols, h.total.dim))
    with pytest.raises(AlgebraError):
        HopfAlgebroid(h.base, h.total, squash, h.t, h.delta_plain, h.counit, h.antipode)
    kept = HopfAlgebroid(
        h.base, h.total, squash, h.t, h.delta_plain, h.counit, h.antipode, allow_nonflat=True
    )
    assert not kept.flat_s


def test_morphism_verification(corpus):
    assert verify_hopf_morphism(corpus.morphism("incl")).ok
    assert verify_hopf_morphism(corpus.morphism("noneq")).ok
    assert verify_hopf_morphism(identity_hopf_morphism(corpus.algebroid("c3"))).ok


def test_morphism_with_broken_total_map_fails(corpus):
    fm = corpus.morphism("incl")
    skew = Matrix.zeros(QQ, fm.phi1.matrix.rows, fm.phi1.matrix.cols)
    bad = HopfMorphism(fm.dom, fm.cod, fm.phi0, AlgMorphism(fm.dom.total, fm.cod.total, skew))
    assert not verify_hopf_morphism(bad).ok


def test_morphism_composition(corpus):
    fm = corpus.morphism("incl")
    comp = fm.then(identity_hopf_morphism(fm.cod))
    assert comp == fm


def test_scalar_extension_dims_match_the_oracle(corpus, expected):
    hc2 = corpus.algebroid("c2")
    P = corpus.bundle("sqrt2").carrier
    ext, mor = scalar_extension(hc2, AlgMorphism(hc2.base, P, P.unit_column()))
    assert ext.total.dim == expected["scalarext_c2_sqrt2_total_dim"]
    assert verify_hopf_algebroid(ext).ok
    assert verify_hopf_morphism(mor).ok

    hpr2 = corpus.algebroid("pr2")
    ev1 = AlgMorphism(hpr2.base, corpus.algebroid("pt").base, Matrix(QQ, [[1, 0]]))
    ext2, _ = scalar_extension(hpr2, ev1)
    assert ext2.total.dim == expected["scalarext_pr2_ev1_total_dim"]


def test_canonical_factor_numbers(corpus, expected):
    for name, key in (("incl", "phi_incl"), ("noneq", "phi_noneq")):
        fm = corpus.morphism(name)
        ext_mor, factor = canonical_factor(fm)
        want = expected[key]
        assert factor.phi1.matrix.cols == want["dom"]
        assert factor.phi1.matrix.rows == want["cod"]
        assert rank(factor.phi1.matrix) == want["rank"]
        assert ext_mor.then(factor).phi1.matrix == fm.phi1.matrix


def test_left_translation_oracle_dims(corpus, expected):
    lt2, m2 = left_translation(corpus.bundle("unit_c2").left)
    assert lt2.total.dim == expected["lt_c2_total_dim"]
    assert verify_hopf_algebroid(lt2).ok
    assert verify_hopf_morphism(m2).ok
    lt4, _ = left_translation(corpus.bundle("unit_pr2").left)
    assert lt4.total.dim == expected["lt_pr2_total_dim"]


HS3 = dualize(symmetric_group_3(), QQ)

vec6 = st.tuples(*[st.integers(min_value=-4, max_value=4) for _ in range(6)]).map(
    lambda t: tuple(Fraction(x) for x in t)
)


@given(u=vec6, v=vec6)
@settings(max_examples=25, deadline=None)
def test_antipode_is_an_algebra_map_on_random_elements(u, v):
    total = HS3.total
    su = HS3.antipode.apply(u)
    sv = HS3.antipode.apply(v)
    assert HS3.antipode.apply(total.mul_vec(u, v)) == total.mul_vec(su, sv)


@given(u=vec6)
@settings(max_examples=25, deadline=None)
def test_counit_law_on_random_elements(u):
    # multiply the two legs of the comultiplication after hitting the
    # first with s . counit; the result must be the element itself
    n = HS3.total.dim
    from hopfbundles.exactlin import kron

    eye = Matrix.identity(QQ, n)
    collapse = HS3.total.mul_matrix() * kron(HS3.s.matrix * HS3.counit, eye) * HS3.delta_plain
    assert collapse.apply(u) == tuple(u)
