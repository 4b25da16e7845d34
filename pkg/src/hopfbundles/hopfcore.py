"""Commutative Hopf algebroids presented by exact matrices.

An object here is a pair of finite dimensional commutative algebras
(base A, total H) with source and target maps s, t: A -> H, a
comultiplication landing in the balanced square H (x)_A H (left leg an
A-module through s, right leg through t), a counit H -> A and an
antipode H -> H.  Every structure map is a concrete matrix over an
exact field, so each axiom is a finite matrix identity and the verifier
can report every one of them separately.

Besides construction and verification this module builds the standard
examples that produce new algebroids from old ones: scalar extension
along an algebra map on the base, the canonical factorization of a
morphism through its scalar extension, and the translation algebroids
of (bi)comodule algebras.
"""

from .exactlin import Matrix, apply_tensor_permutation, kron, tensor_permutation
from .finalg import (
    AlgebraError,
    AlgMorphism,
    FinAlgebra,
    balanced_chain,
    balanced_tensor_algebra,
    identity_morphism,
    induce,
    is_faithfully_flat,
    verify_alg_morphism,
    verify_algebra,
)
from .report import Report


def pair_labels(a, b):
    return ["%s(x)%s" % (la, lb) for la in a.labels for lb in b.labels]


def check_map_equal(rep, name, lhs, rhs, labels=None, verbose=False):
    """Record lhs == rhs as one check, witnessing basis columns where
    the two maps differ."""
    if lhs.rows != rhs.rows or lhs.cols != rhs.cols:
        rep.add(name, False, "shape %dx%d vs %dx%d" % (lhs.rows, lhs.cols, rhs.rows, rhs.cols))
        return
    bad = []
    for j in range(lhs.cols):
        if lhs.col(j) != rhs.col(j):
            bad.append("fails at %s" % (labels[j] if labels else "basis column %d" % j))
    rep.add_witnessed(name, bad, verbose)


class HopfAlgebroid:
    """A commutative Hopf algebroid at finite dimension.

    comult may be given either on the plain tensor square (rows ==
    total.dim ** 2), in which case it is projected to the balanced
    square automatically, or directly in carrier coordinates.

    Faithful flatness of s and t is decided on construction.  A failure
    raises unless allow_nonflat=True; scalar extensions along badly
    behaved base maps are the intended use of that flag, the flags
    flat_s / flat_t stay inspectable either way.
    """

    def __init__(self, base, total, s, t, comult, counit, antipode, allow_nonflat=False):
        if base.field != total.field:
            raise AlgebraError("base and total algebra over different fields")
        self.field = base.field
        self.base = base
        self.total = total
        for name, m in (("source", s), ("target", t)):
            if not isinstance(m, AlgMorphism) or m.src != base or m.dst != total:
                raise AlgebraError("%s must be an algebra map base -> total" % name)
        self.s = s
        self.t = t
        n = total.dim
        self.t_mult = [total.lmul_matrix(t(base.basis_vec(i))) for i in range(base.dim)]
        self.s_mult = [total.lmul_matrix(s(base.basis_vec(i))) for i in range(base.dim)]
        self.square = balanced_chain(self.field, (n, n), [(base, self.t_mult, self.s_mult)])
        if comult.rows == n * n:
            comult = self.square.projection * comult
        if comult.rows != self.square.dim or comult.cols != n:
            raise AlgebraError("comultiplication shape mismatch")
        if counit.rows != base.dim or counit.cols != n:
            raise AlgebraError("counit shape mismatch")
        if antipode.rows != n or antipode.cols != n:
            raise AlgebraError("antipode shape mismatch")
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.allow_nonflat = allow_nonflat
        self.flat_s = is_faithfully_flat(s)
        self.flat_t = is_faithfully_flat(t)
        if not (self.flat_s and self.flat_t) and not allow_nonflat:
            raise AlgebraError(
                "source or target fails faithful flatness; "
                "pass allow_nonflat=True to keep the object and inspect the flags"
            )
        self._delta_plain = None
        self._triple = None

    def data(self):
        return (
            self.base,
            self.total,
            self.s.matrix,
            self.t.matrix,
            self.comult,
            self.counit,
            self.antipode,
        )

    def __eq__(self, other):
        return isinstance(other, HopfAlgebroid) and self.data() == other.data()

    def __hash__(self):
        return hash((self.base, self.total, self.s.matrix, self.t.matrix))

    def __repr__(self):
        return "HopfAlgebroid(base dim %d, total dim %d, %s)" % (
            self.base.dim,
            self.total.dim,
            self.field.name,
        )

    @property
    def delta_plain(self):
        """Comultiplication followed by the canonical plain-tensor lift."""
        if self._delta_plain is None:
            self._delta_plain = self.square.section * self.comult
        return self._delta_plain

    def triple(self):
        """The balanced cube H (x)_A H (x)_A H, built on demand."""
        if self._triple is None:
            n = self.total.dim
            link = (self.base, self.t_mult, self.s_mult)
            self._triple = balanced_chain(self.field, (n, n, n), [link, link])
        return self._triple

    def unit_col(self):
        return self.total.unit_column()


def verify_hopf_algebroid(h, verbose=False):
    """Check every Hopf algebroid axiom for h and report each as its
    own line: algebra and morphism axioms for the pieces, the coring
    axioms of the comultiplication and counit, the antipode identities,
    and faithful flatness of source and target."""
    A, H = h.base, h.total
    n = H.dim
    f = h.field
    eye_h = Matrix.identity(f, n)
    rep = Report("hopf algebroid axioms (base dim %d, total dim %d over %s)" % (A.dim, n, f.name))
    rep.merge(verify_algebra(A, verbose), prefix="base: ")
    rep.merge(verify_algebra(H, verbose), prefix="total: ")
    rep.merge(verify_alg_morphism(h.s, verbose), prefix="source: ")
    rep.merge(verify_alg_morphism(h.t, verbose), prefix="target: ")

    mul_h = H.mul_matrix()
    mul_a = A.mul_matrix()
    dplain = h.delta_plain
    labels = H.labels
    plabels = pair_labels(H, H)

    check_map_equal(rep, "counit splits source", h.counit * h.s.matrix, Matrix.identity(f, A.dim), A.labels, verbose)
    check_map_equal(rep, "counit splits target", h.counit * h.t.matrix, Matrix.identity(f, A.dim), A.labels, verbose)

    unit = h.unit_col()
    rep.add(
        "comultiplication preserves the unit",
        h.comult * unit == h.square.projection * kron(unit, unit),
    )
    rep.add("counit preserves the unit", h.counit * unit == Matrix.column(f, A.unit))

    # product on the plain square is (u1 (x) u2)(v1 (x) v2) = u1 v1 (x) u2 v2;
    # permute rows of kron(dplain, dplain) instead of building the n^4 swap
    interleaved = apply_tensor_permutation(kron(dplain, dplain), [n, n, n, n], [0, 2, 1, 3])
    check_map_equal(
        rep,
        "comultiplication is multiplicative",
        h.comult * mul_h,
        h.square.projection * (kron(mul_h, mul_h) * interleaved),
        plabels,
        verbose,
    )
    check_map_equal(
        rep,
        "counit is multiplicative",
        h.counit * mul_h,
        mul_a * kron(h.counit, h.counit),
        plabels,
        verbose,
    )

    triple = h.triple()
    check_map_equal(
        rep,
        "coassociativity",
        triple.projection * kron(dplain, eye_h) * dplain,
        triple.projection * kron(eye_h, dplain) * dplain,
        labels,
        verbose,
    )
    check_map_equal(
        rep,
        "counit collapse on the left leg",
        mul_h * kron(h.s.matrix * h.counit, eye_h) * dplain,
        eye_h,
        labels,
        verbose,
    )
    check_map_equal(
        rep,
        "counit collapse on the right leg",
        mul_h * kron(eye_h, h.t.matrix * h.counit) * dplain,
        eye_h,
        labels,
        verbose,
    )

    S = h.antipode
    check_map_equal(
        rep,
        "antipode convolution gives target of counit",
        mul_h * kron(S, eye_h) * dplain,
        h.t.matrix * h.counit,
        labels,
        verbose,
    )
    check_map_equal(
        rep,
        "antipode convolution gives source of counit",
        mul_h * kron(eye_h, S) * dplain,
        h.s.matrix * h.counit,
        labels,
        verbose,
    )
    check_map_equal(rep, "antipode is multiplicative", S * mul_h, mul_h * kron(S, S), plabels, verbose)
    rep.add("antipode preserves the unit", S * unit == unit)
    check_map_equal(rep, "antipode swaps source to target", S * h.s.matrix, h.t.matrix, A.labels, verbose)
    check_map_equal(rep, "antipode swaps target to source", S * h.t.matrix, h.s.matrix, A.labels, verbose)
    check_map_equal(rep, "antipode is an involution", S * S, eye_h, labels, verbose)

    rep.add("source faithfully flat", h.flat_s)
    rep.add("target faithfully flat", h.flat_t)
    return rep


class HopfMorphism:
    """A morphism of Hopf algebroids: an algebra map on bases and one on
    totals, compatible with all structure maps (checked by
    verify_hopf_morphism, not on construction)."""

    def __init__(self, dom, cod, phi0, phi1):
        if phi0.src != dom.base or phi0.dst != cod.base:
            raise AlgebraError("base map must go dom.base -> cod.base")
        if phi1.src != dom.total or phi1.dst != cod.total:
            raise AlgebraError("total map must go dom.total -> cod.total")
        self.dom = dom
        self.cod = cod
        self.phi0 = phi0
        self.phi1 = phi1

    def then(self, other):
        if self.cod != other.dom:
            raise AlgebraError("composition mismatch")
        return HopfMorphism(self.dom, other.cod, self.phi0.then(other.phi0), self.phi1.then(other.phi1))

    def __eq__(self, other):
        return (
            isinstance(other, HopfMorphism)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.phi0.matrix == other.phi0.matrix
            and self.phi1.matrix == other.phi1.matrix
        )

    def __repr__(self):
        return "HopfMorphism(total dim %d -> %d)" % (self.dom.total.dim, self.cod.total.dim)


def identity_hopf_morphism(h):
    return HopfMorphism(h, h, identity_morphism(h.base), identity_morphism(h.total))


def verify_hopf_morphism(fm, verbose=False):
    dom, cod = fm.dom, fm.cod
    rep = Report(
        "hopf algebroid morphism (total dim %d -> total dim %d)" % (dom.total.dim, cod.total.dim)
    )
    rep.merge(verify_alg_morphism(fm.phi0, verbose), prefix="base map: ")
    rep.merge(verify_alg_morphism(fm.phi1, verbose), prefix="total map: ")
    labels = dom.total.labels
    check_map_equal(
        rep,
        "intertwines source",
        fm.phi1.matrix * dom.s.matrix,
        cod.s.matrix * fm.phi0.matrix,
        dom.base.labels,
        verbose,
    )
    check_map_equal(
        rep,
        "intertwines target",
        fm.phi1.matrix * dom.t.matrix,
        cod.t.matrix * fm.phi0.matrix,
        dom.base.labels,
        verbose,
    )
    check_map_equal(
        rep,
        "intertwines comultiplication",
        cod.comult * fm.phi1.matrix,
        cod.square.projection * kron(fm.phi1.matrix, fm.phi1.matrix) * dom.delta_plain,
        labels,
        verbose,
    )
    check_map_equal(
        rep,
        "intertwines counit",
        fm.phi0.matrix * dom.counit,
        cod.counit * fm.phi1.matrix,
        labels,
        verbose,
    )
    check_map_equal(
        rep,
        "intertwines antipode",
        fm.phi1.matrix * dom.antipode,
        cod.antipode * fm.phi1.matrix,
        labels,
        verbose,
    )
    return rep


def scalar_extension(h, phi0):
    """Base change of h along an algebra map phi0: base -> B.

    Returns (extended algebroid over B with total B (x)_A H (x)_A B,
    morphism u |-> 1 (x) u (x) 1).  The result is built with
    allow_nonflat=True: base maps that break faithful flatness give a
    flagged object rather than an error.
    """
    if phi0.src != h.base:
        raise AlgebraError("scalar extension: map must start at the base algebra")
    A, H, B = h.base, h.total, phi0.dst
    f = h.field
    n, dB = H.dim, B.dim
    total, bt = balanced_tensor_algebra([B, H, B], [(A, phi0, h.s), (A, h.t, phi0)])

    unit_h = h.unit_col()
    unit_b = B.unit_column()
    eye_b = Matrix.identity(f, dB)
    eye_h = Matrix.identity(f, n)

    s_new = AlgMorphism(B, total, bt.projection * kron(eye_b, kron(unit_h, unit_b)))
    t_new = AlgMorphism(B, total, bt.projection * kron(kron(unit_b, unit_h), eye_b))

    mul_b = B.mul_matrix()
    mul3_b = mul_b * kron(mul_b, eye_b)
    counit_new = mul3_b * kron(eye_b, kron(phi0.matrix * h.counit, eye_b)) * bt.section

    flip = tensor_permutation(f, [dB, n, dB], [2, 1, 0])
    antipode_new = induce(flip * kron(eye_b, kron(h.antipode, eye_b)), bt, bt)

    # (b (x) u (x) b') |-> (b (x) u1 (x) 1) (x) (1 (x) u2 (x) b')
    split = kron(eye_b, kron(h.delta_plain, eye_b))
    insert_units = kron(
        Matrix.identity(f, dB * n),
        kron(unit_b, kron(unit_b, Matrix.identity(f, n * dB))),
    )
    comult_plain_sq = kron(bt.projection, bt.projection) * insert_units * split * bt.section

    ext = HopfAlgebroid(B, total, s_new, t_new, comult_plain_sq, counit_new, antipode_new, allow_nonflat=True)
    ext.extension_carrier = bt
    mor = HopfMorphism(h, ext, phi0, AlgMorphism(H, total, bt.projection * kron(unit_b, kron(eye_h, unit_b))))
    return ext, mor


def canonical_factor(fm):
    """Factor a morphism through the scalar extension along its base map.

    Returns (ext_mor, factor) with ext_mor: dom -> extension and
    factor: extension -> cod satisfying ext_mor then factor == fm.  The
    factor sends the class of b (x) u (x) b' to s(b) phi1(u) t(b').
    """
    ext, ext_mor = scalar_extension(fm.dom, fm.phi0)
    cod = fm.cod
    K = cod.total
    f = fm.dom.field
    bt = ext.extension_carrier
    mul_k = K.mul_matrix()
    mul3_k = mul_k * kron(mul_k, Matrix.identity(f, K.dim))
    phi1 = mul3_k * kron(cod.s.matrix, kron(fm.phi1.matrix, cod.t.matrix)) * bt.section
    factor = HopfMorphism(ext, cod, identity_morphism(cod.base), AlgMorphism(ext.total, K, phi1))
    composed = ext_mor.then(factor)
    assert composed.phi1.matrix == fm.phi1.matrix and composed.phi0.matrix == fm.phi0.matrix
    return ext_mor, factor


def left_translation(r, check=True):
    """Translation algebroid of a left comodule algebra: base R, total
    H (x)_A R, source the coaction, target r |-> 1 (x) r.

    Returns (algebroid, morphism from the original algebroid) where the
    morphism is (structure map, u |-> u (x) 1).
    """
    if r.side != "left":
        raise AlgebraError("left translation needs a left comodule algebra")
    if check:
        from .bundles import verify_comodule_algebra

        pre = verify_comodule_algebra(r)
        if not pre.ok:
            raise AlgebraError("left translation: comodule algebra axioms fail:\n" + pre.render())
    h = r.algebroid
    A, H, R = h.base, h.total, r.carrier
    f = h.field
    n, dR = H.dim, R.dim
    total, bt = balanced_tensor_algebra([H, R], [(A, h.t, r.structure)])
    if bt.projection != r.tensor.projection:
        raise AlgebraError("left translation: carrier mismatch with the coaction codomain")

    unit_h = h.unit_col()
    unit_r = R.unit_column()
    eye_h = Matrix.identity(f, n)
    eye_r = Matrix.identity(f, dR)

    s_new = AlgMorphism(R, total, r.coaction)
    t_new = AlgMorphism(R, total, bt.projection * kron(unit_h, eye_r))
    counit_new = R.mul_matrix() * kron(r.structure.matrix * h.counit, eye_r) * bt.section

    # (u (x) r) |-> (u1 (x) 1) (x) (u2 (x) r)
    split = kron(h.delta_plain, eye_r)
    insert_unit = kron(eye_h, kron(unit_r, Matrix.identity(f, n * dR)))
    comult_plain_sq = kron(bt.projection, bt.projection) * insert_unit * split * bt.section

    # (u (x) r) |-> S(u) r(-1) (x) r(0)
    lam_plain = r.tensor.section * r.coaction
    antipode_plain = kron(H.mul_matrix() * kron(h.antipode, eye_h), eye_r) * kron(eye_h, lam_plain)
    antipode_new = induce(antipode_plain, bt, bt)

    lt = HopfAlgebroid(R, total, s_new, t_new, comult_plain_sq, counit_new, antipode_new, allow_nonflat=True)
    lt.extension_carrier = bt
    mor = HopfMorphism(h, lt, r.structure, AlgMorphism(H, total, bt.projection * kron(eye_h, unit_r)))
    return lt, mor


def two_sided_translation(p, check=True):
    """Translation algebroid of a bicomodule algebra P between (A, H)
    and (B, K): base P, total H (x)_A P (x)_B K.

    Returns (algebroid, alpha_mor, beta_mor) with alpha_mor from the
    left algebroid (u |-> u (x) 1 (x) 1 over the left structure map)
    and beta_mor from the right one (w |-> 1 (x) 1 (x) w).
    """
    if check:
        from .bundles import verify_bicomodule_algebra

        pre = verify_bicomodule_algebra(p)
        if not pre.ok:
            raise AlgebraError("two sided translation: bicomodule axioms fail:\n" + pre.render())
    hl = p.left.algebroid
    hr = p.right.algebroid
    A, H = hl.base, hl.total
    B, K = hr.base, hr.total
    P = p.carrier
    f = P.field
    n, dP, k = H.dim, P.dim, K.dim
    alpha = p.left.structure
    beta = p.right.structure

    # the first link couples through s, not t: the target and antipode
    # formulas below push an antipode through the H leg, which turns
    # t-balancing into s-balancing
    total, bt = balanced_tensor_algebra([H, P, K], [(A, hl.s, alpha), (B, beta, hr.s)])

    unit_h = hl.unit_col()
    unit_k = hr.unit_col()
    unit_p = P.unit_column()
    eye_h = Matrix.identity(f, n)
    eye_k = Matrix.identity(f, k)
    eye_p = Matrix.identity(f, dP)

    lam_plain = p.left.tensor.section * p.left.coaction
    rho_plain = p.right.tensor.section * p.right.coaction
    two_coact = kron(lam_plain, eye_k) * rho_plain  # P -> H (x) P (x) K plain

    s_new = AlgMorphism(P, total, bt.projection * kron(unit_h, kron(eye_p, unit_k)))
    t_new = AlgMorphism(P, total, bt.projection * kron(hl.antipode, Matrix.identity(f, dP * k)) * two_coact)

    mul_p = P.mul_matrix()
    mul3_p = mul_p * kron(mul_p, eye_p)
    counit_new = (
        mul3_p
        * kron(alpha.matrix * hl.counit, kron(eye_p, beta.matrix * hr.counit))
        * bt.section
    )

    # (u (x) p (x) w) |-> (u1 (x) p (x) w1) (x) (u2 (x) 1 (x) w2)
    split = kron(hl.delta_plain, kron(eye_p, hr.delta_plain))
    arrange = tensor_permutation(f, [n, n, dP, k, k], [0, 2, 3, 1, 4])
    insert_unit = kron(Matrix.identity(f, n * dP * k * n), kron(unit_p, eye_k))
    comult_plain_sq = kron(bt.projection, bt.projection) * insert_unit * arrange * split * bt.section

    # (u (x) p (x) w) |-> S(u p(-1)) (x) p(0) (x) p(1) S(w)
    expand = kron(eye_h, kron(two_coact, eye_k))
    collapse = kron(
        hl.antipode * H.mul_matrix(),
        kron(eye_p, K.mul_matrix() * kron(eye_k, hr.antipode)),
    )
    antipode_new = induce(collapse * expand, bt, bt)

    ts = HopfAlgebroid(P, total, s_new, t_new, comult_plain_sq, counit_new, antipode_new, allow_nonflat=True)
    ts.extension_carrier = bt
    alpha_mor = HopfMorphism(
        hl, ts, alpha, AlgMorphism(H, total, bt.projection * kron(eye_h, kron(unit_p, unit_k)))
    )
    beta_mor = HopfMorphism(
        hr, ts, beta, AlgMorphism(K, total, bt.projection * kron(unit_h, kron(unit_p, eye_k)))
    )
    return ts, alpha_mor, beta_mor
