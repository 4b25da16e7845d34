"""Comodules over commutative Hopf algebroids.

One-sided comodules (left and right), bicomodules, coinvariants,
cotensor products, opposite comodules, codiagonal tensor products, and
the induction / coinduction adjunction along a Hopf algebroid morphism.

Conventions.  A right comodule is a module M over the base algebra A
with a coaction M -> M (x)_A H, balanced by m.a (x) u = m (x) s(a)u; the
carrier is an A-module through the target map, (m (x) u).a = m (x) u t(a).
A left comodule coacts M -> H (x)_A M with balancing u t(a) (x) m =
u (x) a.m and carrier action a.(u (x) m) = s(a)u (x) m.  Coactions may be
handed to the constructor either on the plain tensor space or already in
balanced carrier coordinates.
"""

from .exactlin import (
    Matrix,
    apply_tensor_permutation,
    kernel_basis,
    kron,
    rank,
    solve,
)
from .finalg import (
    FinModule,
    balanced_chain,
    induce,
    module_via,
    regular_module,
    verify_module,
)
from .hopfcore import check_map_equal
from .report import Report


class ComodError(ValueError):
    pass


class Comodule:
    """A left or right comodule over a HopfAlgebroid.

    The carrier is a FinModule over the base algebra; the coaction is a
    matrix into the balanced tensor with the total algebra (plain input
    is projected automatically).
    """

    def __init__(self, algebroid, module, coaction, side="right"):
        if side not in ("left", "right"):
            raise ComodError("side must be 'left' or 'right'")
        h = algebroid
        if not isinstance(module, FinModule) or module.over != h.base:
            raise ComodError("carrier must be a FinModule over the base algebra")
        self.algebroid = h
        self.module = module
        self.side = side
        n = h.total.dim
        dm = module.dim
        if side == "right":
            self.tensor = balanced_chain(h.field, (dm, n), [(h.base, module.action, h.s_mult)])
        else:
            self.tensor = balanced_chain(h.field, (n, dm), [(h.base, h.t_mult, module.action)])
        if coaction.field != h.field:
            raise ComodError("coaction field mismatch")
        if coaction.rows == self.tensor.plain_dim and coaction.rows != self.tensor.dim:
            coaction = self.tensor.projection * coaction
        if coaction.rows != self.tensor.dim or coaction.cols != dm:
            raise ComodError(
                "coaction shape %dx%d does not fit carrier dim %d"
                % (coaction.rows, coaction.cols, dm)
            )
        self.coaction = coaction

    @property
    def dim(self):
        return self.module.dim

    @property
    def coaction_plain(self):
        """The coaction followed by the canonical plain-tensor lift."""
        return self.tensor.section * self.coaction

    def carrier_action(self, i):
        """Action of the i-th base basis vector on the tensor carrier,
        through t on the Hopf leg for right comodules and through s for
        left ones."""
        h = self.algebroid
        eye_m = Matrix.identity(h.field, self.module.dim)
        if self.side == "right":
            plain = kron(eye_m, h.t_mult[i])
        else:
            plain = kron(h.s_mult[i], eye_m)
        return induce(plain, self.tensor, self.tensor)

    def data(self):
        return (self.side, self.algebroid, self.module.action, self.coaction)

    def __eq__(self, other):
        return isinstance(other, Comodule) and self.data() == other.data()

    def __repr__(self):
        return "Comodule(%s, dim %d, total dim %d)" % (
            self.side,
            self.dim,
            self.algebroid.total.dim,
        )


def unit_comodule(h, side="right"):
    """The base algebra with coaction a -> 1 (x) t(a) on the right, or
    a -> s(a) (x) 1 on the left; the monoidal unit on either side."""
    A = h.base
    if side == "right":
        plain = kron(A.unit_column(), h.t.matrix)
    else:
        plain = kron(h.s.matrix, A.unit_column())
    return Comodule(h, regular_module(A), plain, side)


def regular_comodule(h, side="right"):
    """The total algebra coacting on itself by comultiplication; the
    base acts through t (right) or s (left)."""
    if side == "right":
        return Comodule(h, module_via(h.t), h.delta_plain, "right")
    return Comodule(h, module_via(h.s), h.delta_plain, "left")


def verify_comodule(c, verbose=False):
    """Check module axioms, coassociativity, counitality, and the
    twisted A-linearity of the coaction, one report line each."""
    h = c.algebroid
    f = h.field
    A = h.base
    n = h.total.dim
    dm = c.module.dim
    rep = Report("%s comodule axioms (dim %d, total dim %d)" % (c.side, dm, n))
    rep.merge(verify_module(c.module), "carrier: ")
    eye_m = Matrix.identity(f, dm)
    eye_h = Matrix.identity(f, n)
    rho = c.coaction_plain
    eps_act = [c.module.act(h.counit.col(i)) for i in range(n)]
    cols = []
    if c.side == "right":
        for j in range(dm):
            for i in range(n):
                cols.append(eps_act[i].col(j))
    else:
        for i in range(n):
            for j in range(dm):
                cols.append(eps_act[i].col(j))
    collapse = Matrix.from_columns(f, cols, dm)
    check_map_equal(rep, "counit collapses the coaction", collapse * rho, eye_m, verbose=verbose)
    if c.side == "right":
        triple = balanced_chain(
            f, (dm, n, n), [(A, c.module.action, h.s_mult), (A, h.t_mult, h.s_mult)]
        )
        lhs = triple.projection * (kron(rho, eye_h) * rho)
        rhs = triple.projection * (kron(eye_m, h.delta_plain) * rho)
    else:
        triple = balanced_chain(
            f, (n, n, dm), [(A, h.t_mult, h.s_mult), (A, h.t_mult, c.module.action)]
        )
        lhs = triple.projection * (kron(h.delta_plain, eye_m) * rho)
        rhs = triple.projection * (kron(eye_h, rho) * rho)
    check_map_equal(rep, "coaction is coassociative", lhs, rhs, verbose=verbose)
    bad = []
    for i in range(A.dim):
        if c.coaction * c.module.action[i] != c.carrier_action(i) * c.coaction:
            bad.append("fails for %s" % A.labels[i])
    rep.add_witnessed("coaction is base-linear for the twisted action", bad, verbose)
    return rep


def coinvariants(c):
    """Basis, as columns, of the subspace where the coaction is the unit
    insertion m -> m (x) 1 (right) or m -> 1 (x) m (left)."""
    h = c.algebroid
    eye_m = Matrix.identity(h.field, c.module.dim)
    if c.side == "right":
        plain = kron(eye_m, h.unit_col())
    else:
        plain = kron(h.unit_col(), eye_m)
    return kernel_basis(c.coaction - c.tensor.projection * plain)


# ---------------------------------------------------------------------------
# bicomodules


class Bicomodule:
    """A carrier with a left coaction of one algebroid and a right
    coaction of another over the same scalars, the two base actions
    commuting."""

    def __init__(self, left, right):
        if left.side != "left" or right.side != "right":
            raise ComodError("Bicomodule takes (left comodule, right comodule)")
        if left.module.dim != right.module.dim:
            raise ComodError("the two comodule structures must share a carrier")
        if left.algebroid.field != right.algebroid.field:
            raise ComodError("bicomodule halves over different fields")
        self.left = left
        self.right = right
        self.dim = left.module.dim

    def __repr__(self):
        return "Bicomodule(dim %d, totals %d|%d)" % (
            self.dim,
            self.left.algebroid.total.dim,
            self.right.algebroid.total.dim,
        )


def verify_bicomodule(b, verbose=False):
    """Both one-sided axiom suites, commuting base actions, cross
    linearity of each coaction over the other base, and the commuting
    square of the two coactions."""
    rep = Report("bicomodule axioms (dim %d)" % b.dim)
    rep.merge(verify_comodule(b.left, verbose), "left: ")
    rep.merge(verify_comodule(b.right, verbose), "right: ")
    h = b.left.algebroid
    k = b.right.algebroid
    f = h.field
    nh, nk = h.total.dim, k.total.dim
    bad = []
    for i in range(h.base.dim):
        for j in range(k.base.dim):
            lhs = b.left.module.action[i] * b.right.module.action[j]
            if lhs != b.right.module.action[j] * b.left.module.action[i]:
                bad.append("%s | %s" % (h.base.labels[i], k.base.labels[j]))
    rep.add_witnessed("the two base actions commute", bad, verbose)
    eye_h = Matrix.identity(f, nh)
    eye_k = Matrix.identity(f, nk)
    bad = []
    for j in range(k.base.dim):
        act = b.right.module.action[j]
        if b.left.coaction * act != induce(kron(eye_h, act), b.left.tensor, b.left.tensor) * b.left.coaction:
            bad.append(k.base.labels[j])
    rep.add_witnessed("left coaction is linear over the right base", bad, verbose)
    bad = []
    for i in range(h.base.dim):
        act = b.left.module.action[i]
        if b.right.coaction * act != induce(kron(act, eye_k), b.right.tensor, b.right.tensor) * b.right.coaction:
            bad.append(h.base.labels[i])
    rep.add_witnessed("right coaction is linear over the left base", bad, verbose)
    lam = b.left.coaction_plain
    rho = b.right.coaction_plain
    amb = balanced_chain(
        f,
        (nh, b.dim, nk),
        [(h.base, h.t_mult, b.left.module.action), (k.base, b.right.module.action, k.s_mult)],
    )
    check_map_equal(
        rep,
        "the two coactions commute",
        amb.projection * (kron(lam, eye_k) * rho),
        amb.projection * (kron(eye_h, rho) * lam),
        verbose=verbose,
    )
    return rep


# ---------------------------------------------------------------------------
# cotensor products


class Cotensor:
    """Cotensor product of a right comodule and a left comodule over the
    same algebroid, kept as an embedded subspace: `space` is the
    balanced tensor of the two carriers, the columns of `inclusion` form
    a basis of the equalizer of the two coaction legs, and `comodule`
    holds the induced structure when a Bicomodule was supplied."""

    def __init__(self, m, n, space, inclusion):
        self.m = m
        self.n = n
        self.space = space
        self.inclusion = inclusion
        self.dim = inclusion.cols
        self.comodule = None

    def plain_inclusion(self):
        return self.space.section * self.inclusion

    def __repr__(self):
        return "Cotensor(dim %d inside carrier dim %d)" % (self.dim, self.space.dim)


def cotensor(m, n):
    """Equalizer of rho (x) id and id (x) lambda inside the balanced
    tensor of the carriers of m (a right comodule) and n (a left
    comodule) over one algebroid.

    Either argument may be a Bicomodule; its spare coaction is carried
    to the subspace through the inclusion and stored on the result as
    `comodule` (a Comodule, or a Bicomodule when both arguments were
    two-sided)."""
    mright = m.right if isinstance(m, Bicomodule) else m
    nleft = n.left if isinstance(n, Bicomodule) else n
    if mright.side != "right" or nleft.side != "left":
        raise ComodError("cotensor needs a right comodule and a left comodule")
    h = mright.algebroid
    if nleft.algebroid != h:
        raise ComodError("cotensor factors live over different algebroids")
    f = h.field
    A = h.base
    dm, dn = mright.module.dim, nleft.module.dim
    nH = h.total.dim
    space = balanced_chain(f, (dm, dn), [(A, mright.module.action, nleft.module.action)])
    ambient = balanced_chain(
        f,
        (dm, nH, dn),
        [(A, mright.module.action, h.s_mult), (A, h.t_mult, nleft.module.action)],
    )
    d1 = induce(kron(mright.coaction_plain, Matrix.identity(f, dn)), space, ambient)
    d2 = induce(kron(Matrix.identity(f, dm), nleft.coaction_plain), space, ambient)
    ct = Cotensor(m, n, space, kernel_basis(d1 - d2))
    if isinstance(m, Bicomodule) and isinstance(n, Bicomodule):
        ct.comodule = Bicomodule(_induced_left(ct, m.left), _induced_right(ct, n.right))
    elif isinstance(n, Bicomodule):
        ct.comodule = _induced_right(ct, n.right)
    elif isinstance(m, Bicomodule):
        ct.comodule = _induced_left(ct, m.left)
    return ct


def _restrict(inclusion, big):
    sol = solve(inclusion, big, want_kernel=False)
    if not sol.consistent:
        raise ComodError("map does not preserve the cotensor subspace")
    return sol.particular


def _induced_right(ct, spare):
    """Right comodule structure on a cotensor subspace, inherited from
    the spare right coaction of the second factor."""
    k = spare.algebroid
    f = k.field
    dm = ct.space.factor_dims[0]
    nk = k.total.dim
    eye_m = Matrix.identity(f, dm)
    eye_k = Matrix.identity(f, nk)
    acts = []
    for j in range(k.base.dim):
        onspace = induce(kron(eye_m, spare.module.action[j]), ct.space, ct.space)
        acts.append(_restrict(ct.inclusion, onspace * ct.inclusion))
    big = kron(ct.space.projection, eye_k) * kron(eye_m, spare.coaction_plain) * ct.space.section
    co = _restrict(kron(ct.inclusion, eye_k), big * ct.inclusion)
    return Comodule(k, FinModule(k.base, acts, dim=ct.dim), co, "right")


def _induced_left(ct, spare):
    """Mirror of _induced_right for a spare left coaction on the first
    factor."""
    l = spare.algebroid
    f = l.field
    dn = ct.space.factor_dims[1]
    nl = l.total.dim
    eye_n = Matrix.identity(f, dn)
    eye_l = Matrix.identity(f, nl)
    acts = []
    for j in range(l.base.dim):
        onspace = induce(kron(spare.module.action[j], eye_n), ct.space, ct.space)
        acts.append(_restrict(ct.inclusion, onspace * ct.inclusion))
    big = kron(eye_l, ct.space.projection) * kron(spare.coaction_plain, eye_n) * ct.space.section
    co = _restrict(kron(eye_l, ct.inclusion), big * ct.inclusion)
    return Comodule(l, FinModule(l.base, acts, dim=ct.dim), co, "left")


# ---------------------------------------------------------------------------
# opposite and codiagonal constructions


def opposite_comodule(c):
    """Swap chirality through the antipode: a left coaction
    m -> m_(-1) (x) m_(0) becomes the right coaction
    m -> m_(0) (x) S(m_(-1)), and symmetrically.  The carrier module is
    unchanged; applying the construction twice restores the original
    coaction because the antipode is an involution."""
    h = c.algebroid
    f = h.field
    dm = c.module.dim
    n = h.total.dim
    eye_m = Matrix.identity(f, dm)
    if c.side == "left":
        plain = apply_tensor_permutation(
            kron(h.antipode, eye_m) * c.coaction_plain, (n, dm), (1, 0)
        )
        return Comodule(h, c.module, plain, "right")
    plain = apply_tensor_permutation(
        kron(eye_m, h.antipode) * c.coaction_plain, (dm, n), (1, 0)
    )
    return Comodule(h, c.module, plain, "left")


def codiagonal_tensor(m, n):
    """Tensor of two same-side comodules over the base algebra, coacting
    through the product of the two Hopf legs."""
    if m.side != n.side:
        raise ComodError("codiagonal tensor needs two comodules of one side")
    h = m.algebroid
    if n.algebroid != h:
        raise ComodError("codiagonal tensor factors over different algebroids")
    f = h.field
    dm, dn = m.module.dim, n.module.dim
    nH = h.total.dim
    space = balanced_chain(f, (dm, dn), [(h.base, m.module.action, n.module.action)])
    eye_m = Matrix.identity(f, dm)
    acts = [
        induce(kron(eye_m, n.module.action[i]), space, space) for i in range(h.base.dim)
    ]
    mod = FinModule(h.base, acts, dim=space.dim)
    mul_h = h.total.mul_matrix()
    big = kron(m.coaction_plain, n.coaction_plain)
    if m.side == "right":
        big = apply_tensor_permutation(big, (dm, nH, dn, nH), (0, 2, 1, 3))
        plain = kron(space.projection, mul_h) * big * space.section
    else:
        big = apply_tensor_permutation(big, (nH, dm, nH, dn), (0, 2, 1, 3))
        plain = kron(mul_h, space.projection) * big * space.section
    out = Comodule(h, mod, plain, m.side)
    out.space = space
    return out


def is_comodule_map(g, src, dst):
    """Whether the matrix g: src -> dst intertwines coactions and base
    actions of two same-side comodules over one algebroid."""
    if src.side != dst.side or src.algebroid != dst.algebroid:
        raise ComodError("comodule map endpoints do not match")
    h = src.algebroid
    f = h.field
    eye_h = Matrix.identity(f, h.total.dim)
    if src.side == "right":
        moved = dst.tensor.projection * kron(g, eye_h) * src.coaction_plain
    else:
        moved = dst.tensor.projection * kron(eye_h, g) * src.coaction_plain
    if dst.coaction * g != moved:
        return False
    return all(
        g * src.module.action[i] == dst.module.action[i] * g
        for i in range(h.base.dim)
    )


# ---------------------------------------------------------------------------
# induction and coinduction along a Hopf algebroid morphism


def _phi_mult(fm):
    A = fm.dom.base
    B = fm.cod.base
    return [B.lmul_matrix(fm.phi0(A.basis_vec(i))) for i in range(A.dim)]


def induction(fm, c):
    """Push a right comodule along a Hopf algebroid morphism: extend the
    carrier over the new base and feed the Hopf leg through phi1,
    m (x) b  ->  (m_(0) (x) 1) (x) phi1(m_(1)) t(b)."""
    if c.side != "right":
        raise ComodError("induction acts on right comodules")
    if c.algebroid != fm.dom:
        raise ComodError("comodule does not live over the morphism domain")
    h, k = fm.dom, fm.cod
    f = h.field
    B = k.base
    dm = c.module.dim
    nH, nK = h.total.dim, k.total.dim
    pres = balanced_chain(f, (dm, B.dim), [(h.base, c.module.action, _phi_mult(fm))])
    eye_m = Matrix.identity(f, dm)
    eye_k = Matrix.identity(f, nK)
    acts = [induce(kron(eye_m, B.lmul_basis(j)), pres, pres) for j in range(B.dim)]
    hb_to_k = k.total.mul_matrix() * kron(fm.phi1.matrix, k.t.matrix)
    plain = (
        kron(eye_m, kron(B.unit_column(), eye_k))
        * kron(eye_m, hb_to_k)
        * kron(c.coaction_plain, Matrix.identity(f, B.dim))
    )
    plain = kron(pres.projection, eye_k) * plain * pres.section
    out = Comodule(k, FinModule(B, acts, dim=pres.dim), plain, "right")
    out.presentation = pres
    out.induced_from = c
    out.along = fm
    return out


def left_induction(fm, c):
    """Mirror of induction for left comodules,
    b (x) m  ->  s(b) phi1(m_(-1)) (x) (1 (x) m_(0))."""
    if c.side != "left":
        raise ComodError("left_induction acts on left comodules")
    if c.algebroid != fm.dom:
        raise ComodError("comodule does not live over the morphism domain")
    h, k = fm.dom, fm.cod
    f = h.field
    B = k.base
    dm = c.module.dim
    nK = k.total.dim
    pres = balanced_chain(f, (B.dim, dm), [(h.base, _phi_mult(fm), c.module.action)])
    eye_m = Matrix.identity(f, dm)
    eye_k = Matrix.identity(f, nK)
    acts = [induce(kron(B.lmul_basis(j), eye_m), pres, pres) for j in range(B.dim)]
    bh_to_k = k.total.mul_matrix() * kron(k.s.matrix, fm.phi1.matrix)
    plain = (
        kron(eye_k, kron(B.unit_column(), eye_m))
        * kron(bh_to_k, eye_m)
        * kron(Matrix.identity(f, B.dim), c.coaction_plain)
    )
    plain = kron(eye_k, pres.projection) * plain * pres.section
    out = Comodule(k, FinModule(B, acts, dim=pres.dim), plain, "left")
    out.presentation = pres
    out.induced_from = c
    out.along = fm
    return out


def induction_bicomodule(fm):
    """The extended total algebra B (x)_phi H as a bicomodule: a left
    comodule over the codomain through phi1 on the first
    comultiplication leg, a right comodule over the domain through the
    second leg."""
    h = fm.dom
    f = h.field
    nH = h.total.dim
    dB = fm.cod.base.dim
    lc = left_induction(fm, regular_comodule(h, "left"))
    pres = lc.presentation
    eye_b = Matrix.identity(f, dB)
    eye_h = Matrix.identity(f, nH)
    acts = [induce(kron(eye_b, h.t_mult[i]), pres, pres) for i in range(h.base.dim)]
    plain = kron(pres.projection, eye_h) * kron(eye_b, h.delta_plain) * pres.section
    rc = Comodule(h, FinModule(h.base, acts, dim=pres.dim), plain, "right")
    out = Bicomodule(lc, rc)
    out.presentation = pres
    out.along = fm
    return out


def coinduction(fm, c):
    """Right adjoint of induction: the cotensor of c with the extended
    total algebra, carrying the leftover coaction of the domain."""
    if c.side != "right":
        raise ComodError("coinduction acts on right comodules")
    if c.algebroid != fm.cod:
        raise ComodError("comodule does not live over the morphism codomain")
    w = induction_bicomodule(fm)
    ct = cotensor(c, w)
    out = ct.comodule
    assert out is not None and out.side == "right"
    out.cotensor = ct
    out.web = w
    out.induced_from = c
    out.along = fm
    return out


def induction_map(fm, src_ind, dst_ind, g):
    """Induction applied to a comodule map g, in the presented
    coordinates attached by induction()."""
    f = fm.dom.field
    eye_b = Matrix.identity(f, fm.cod.base.dim)
    return dst_ind.presentation.projection * kron(g, eye_b) * src_ind.presentation.section


def coinduction_map(fm, src_coi, dst_coi, g):
    """Coinduction applied to a comodule map g: restrict g (x) id to the
    embedded cotensor subspaces."""
    ct_s, ct_d = src_coi.cotensor, dst_coi.cotensor
    f = fm.dom.field
    eye_w = Matrix.identity(f, ct_s.space.factor_dims[1])
    big = ct_d.space.projection * kron(g, eye_w) * ct_s.space.section
    return _restrict(ct_d.inclusion, big * ct_s.inclusion)


def adjunction_unit(fm, c):
    """The comodule map m -> (m_(0) (x) 1) (x) (1 (x) m_(1)) from a right
    comodule into coinduction(induction(c)); returns (matrix, roundtrip
    comodule) with the matrix in the subspace basis of the roundtrip."""
    ind = induction(fm, c)
    coi = coinduction(fm, ind)
    ct = coi.cotensor
    h, k = fm.dom, fm.cod
    f = h.field
    dm = c.module.dim
    unit_b = k.base.unit_column()
    plain = (
        kron(Matrix.identity(f, dm), kron(unit_b, kron(unit_b, Matrix.identity(f, h.total.dim))))
        * c.coaction_plain
    )
    carrier = (
        ct.space.projection
        * kron(ind.presentation.projection, coi.web.presentation.projection)
        * plain
    )
    return _restrict(ct.inclusion, carrier), coi


def adjunction_counit(fm, c):
    """The comodule map induction(coinduction(c)) -> c collapsing the
    middle legs, (n (x) (b (x) u)) (x) b' -> n . (b phi0(eps(u)) b');
    returns (matrix, roundtrip comodule)."""
    coi = coinduction(fm, c)
    ind = induction(fm, coi)
    ct = coi.cotensor
    h, k = fm.dom, fm.cod
    f = h.field
    B = k.base
    dn = c.module.dim
    eye_b = Matrix.identity(f, B.dim)
    mul3_b = B.mul_matrix() * kron(B.mul_matrix(), eye_b)
    bhb_to_b = mul3_b * kron(eye_b, kron(fm.phi0.matrix * h.counit, eye_b))
    cols = []
    for jn in range(dn):
        for jb in range(B.dim):
            cols.append(c.module.action[jb].col(jn))
    eval_n = Matrix.from_columns(f, cols, dn)
    into_plain = (
        kron(Matrix.identity(f, dn), coi.web.presentation.section)
        * ct.space.section
        * ct.inclusion
    )
    big = (
        eval_n
        * kron(Matrix.identity(f, dn), bhb_to_b)
        * kron(into_plain, eye_b)
        * ind.presentation.section
    )
    return big, ind


# ---------------------------------------------------------------------------
# comodule algebras seen as comodules


def underlying_comodule(ca):
    """The comodule of a comodule algebra: its carrier as a module over
    the base through the structure map, with the same coaction."""
    return Comodule(ca.algebroid, module_via(ca.structure), ca.coaction, ca.side)


def coinvariants_of_product(s, r):
    """Coinvariants of the codiagonal product of two left comodule
    algebras, with the exact change of basis onto the cotensor of the
    opposite of the first against the second.

    Returns (subspace, bridge) where subspace has the coinvariant basis
    as columns inside the balanced product carrier and bridge solves
    cotensor_inclusion * bridge == subspace as an invertible matrix."""
    cs = underlying_comodule(s)
    cr = underlying_comodule(r)
    if cs.side != "left" or cr.side != "left":
        raise ComodError("coinvariants_of_product expects left comodule algebras")
    prod = codiagonal_tensor(cs, cr)
    sub = coinvariants(prod)
    ct = cotensor(opposite_comodule(cs), cr)
    # both subspaces live in the same balanced carrier by construction
    assert ct.space.projection == prod.space.projection
    sol = solve(ct.inclusion, sub, want_kernel=False)
    if not sol.consistent:
        raise ComodError("coinvariants do not land in the cotensor subspace")
    bridge = sol.particular
    if sub.cols != ct.dim or rank(bridge) != ct.dim:
        raise ComodError("coinvariants-to-cotensor comparison is not bijective")
    return sub, bridge
