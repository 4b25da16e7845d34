"""Finite groupoids, groupoid actions, orbits, and the dualization
bridge that turns them into function-algebra Hopf algebroids, comodule
algebras, and the shipped test corpus.

Composition is written diagrammatically throughout: comp[(a, b)] is
"a then b", an arrow src(a) -> tgt(b).  Dually Delta(delta_g) sums
delta_{g1} (x) delta_{g2} over factorizations comp(g1, g2) = g, and the
source map is precomposition with src.
"""

from .exactlin import Matrix, ravel_index
from .finalg import AlgMorphism, function_algebra, identity_morphism
from .hopfcore import HopfAlgebroid, HopfMorphism
from .report import Report


class GroupoidError(Exception):
    pass


class FinGroupoid:
    """A groupoid on finitely many objects and arrows, all tables
    explicit.  src, tgt, ident, inv are index tuples; comp is a dict on
    exactly the composable pairs (tgt(a) == src(b))."""

    def __init__(self, objects, arrows, src, tgt, ident, comp, inv):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.ident = tuple(ident)
        self.comp = dict(comp)
        self.inv = tuple(inv)
        if len(set(self.objects)) != len(self.objects):
            raise GroupoidError("duplicate object labels")
        if len(set(self.arrows)) != len(self.arrows):
            raise GroupoidError("duplicate arrow labels")
        no, na = len(self.objects), len(self.arrows)
        if len(self.src) != na or len(self.tgt) != na or len(self.inv) != na:
            raise GroupoidError("arrow table sizes do not match the arrow count")
        if len(self.ident) != no:
            raise GroupoidError("need one identity arrow per object")
        if any(not 0 <= x < no for x in self.src + self.tgt):
            raise GroupoidError("arrow endpoint out of range")
        if any(not 0 <= a < na for a in self.inv + self.ident):
            raise GroupoidError("arrow index out of range")
        want = {(a, b) for a in range(na) for b in range(na) if self.tgt[a] == self.src[b]}
        if set(self.comp) != want:
            raise GroupoidError("composition table must cover exactly the composable pairs")
        if any(not 0 <= c < na for c in self.comp.values()):
            raise GroupoidError("composite index out of range")

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def object_index(self, label):
        return self.objects.index(label)

    def arrow_index(self, label):
        return self.arrows.index(label)

    def __eq__(self, other):
        return isinstance(other, FinGroupoid) and (
            self.objects,
            self.arrows,
            self.src,
            self.tgt,
            self.ident,
            self.comp,
            self.inv,
        ) == (other.objects, other.arrows, other.src, other.tgt, other.ident, other.comp, other.inv)

    def __repr__(self):
        return "FinGroupoid(%d objects, %d arrows)" % (self.n_objects, self.n_arrows)


def verify_groupoid(g, verbose=False):
    rep = Report("groupoid axioms (%d objects, %d arrows)" % (g.n_objects, g.n_arrows))
    bad = [
        "id_%s" % g.objects[x]
        for x in range(g.n_objects)
        if g.src[g.ident[x]] != x or g.tgt[g.ident[x]] != x
    ]
    rep.add_witnessed("identity arrows are loops at their objects", bad, verbose)

    bad = []
    for (a, b), c in g.comp.items():
        if g.src[c] != g.src[a] or g.tgt[c] != g.tgt[b]:
            bad.append("%s then %s" % (g.arrows[a], g.arrows[b]))
    rep.add_witnessed("composites have the right endpoints", bad, verbose)

    bad = []
    for a in range(g.n_arrows):
        if g.comp[(g.ident[g.src[a]], a)] != a or g.comp[(a, g.ident[g.tgt[a]])] != a:
            bad.append(g.arrows[a])
    rep.add_witnessed("identities are neutral", bad, verbose)

    bad = []
    for (a, b) in g.comp:
        for c in range(g.n_arrows):
            if g.tgt[b] == g.src[c]:
                if g.comp[(g.comp[(a, b)], c)] != g.comp[(a, g.comp[(b, c)])]:
                    bad.append("%s, %s, %s" % (g.arrows[a], g.arrows[b], g.arrows[c]))
    rep.add_witnessed("associativity", bad, verbose)

    bad = []
    for a in range(g.n_arrows):
        ia = g.inv[a]
        ok = (
            g.src[ia] == g.tgt[a]
            and g.tgt[ia] == g.src[a]
            and g.comp[(a, ia)] == g.ident[g.src[a]]
            and g.comp[(ia, a)] == g.ident[g.tgt[a]]
        )
        if not ok:
            bad.append(g.arrows[a])
    rep.add_witnessed("every arrow has a two-sided inverse", bad, verbose)
    return rep


# ---------------------------------------------------------------------------
# generators


def discrete_groupoid(n):
    objs = [str(i + 1) for i in range(n)]
    arrows = ["id_%s" % o for o in objs]
    rng = range(n)
    return FinGroupoid(objs, arrows, rng, rng, rng, {(i, i): i for i in rng}, rng)


def point_groupoid():
    return FinGroupoid(("*",), ("id",), (0,), (0,), (0,), {(0, 0): 0}, (0,))


def pair_groupoid(n):
    """Exactly one arrow (i,j): i -> j between any two objects."""
    objs = [str(i + 1) for i in range(n)]
    arrows = []
    index = {}
    for i in range(n):
        for j in range(n):
            index[(i, j)] = len(arrows)
            arrows.append("(%d,%d)" % (i + 1, j + 1))
    src = [i for i in range(n) for _ in range(n)]
    tgt = [j for _ in range(n) for j in range(n)]
    ident = [index[(i, i)] for i in range(n)]
    comp = {}
    for (i, j), a in index.items():
        for (jj, k), b in index.items():
            if jj == j:
                comp[(a, b)] = index[(i, k)]
    inv = [index[(j, i)] for (i, j) in sorted(index, key=index.get)]
    return FinGroupoid(objs, arrows, src, tgt, ident, comp, inv)


def group_groupoid(labels, table):
    """One-object groupoid from a finite group; table[(i, j)] is the
    diagrammatic composite "i then j"."""
    n = len(labels)
    comp = {(i, j): table[(i, j)] for i in range(n) for j in range(n)}
    ident = None
    for e in range(n):
        if all(comp[(e, i)] == i and comp[(i, e)] == i for i in range(n)):
            ident = e
            break
    if ident is None:
        raise GroupoidError("table has no identity element")
    inv = []
    for i in range(n):
        found = [j for j in range(n) if comp[(i, j)] == ident and comp[(j, i)] == ident]
        if len(found) != 1:
            raise GroupoidError("element %s has no unique inverse" % labels[i])
        inv.append(found[0])
    return FinGroupoid(("*",), labels, [0] * n, [0] * n, (ident,), comp, inv)


def cyclic_group_groupoid(n):
    labels = ["e"] + ["g" if k == 1 else "g%d" % k for k in range(1, n)]
    table = {(i, j): (i + j) % n for i in range(n) for j in range(n)}
    return group_groupoid(labels, table)


def symmetric_group_3():
    perms = [
        ((0, 1, 2), "e"),
        ((1, 0, 2), "(12)"),
        ((2, 1, 0), "(13)"),
        ((0, 2, 1), "(23)"),
        ((1, 2, 0), "(123)"),
        ((2, 0, 1), "(132)"),
    ]
    lookup = {p: i for i, (p, _) in enumerate(perms)}
    table = {}
    for i, (p, _) in enumerate(perms):
        for j, (q, _) in enumerate(perms):
            then = tuple(q[p[x]] for x in range(3))
            table[(i, j)] = lookup[then]
    return group_groupoid([name for _, name in perms], table)


# ---------------------------------------------------------------------------
# actions


class GroupoidAction:
    """Left action of a groupoid on a finite set over its objects.

    anchor[n] is the object a point sits over; act[(g, n)] is defined
    exactly when src(g) == anchor(n) and moves n over tgt(g).
    """

    def __init__(self, groupoid, points, anchor, act):
        self.groupoid = groupoid
        self.points = tuple(points)
        self.anchor = tuple(anchor)
        self.act = dict(act)
        if len(set(self.points)) != len(self.points):
            raise GroupoidError("duplicate point labels")
        np = len(self.points)
        if len(self.anchor) != np:
            raise GroupoidError("need one anchor object per point")
        if any(not 0 <= x < groupoid.n_objects for x in self.anchor):
            raise GroupoidError("anchor object out of range")
        want = {
            (a, n)
            for a in range(groupoid.n_arrows)
            for n in range(np)
            if groupoid.src[a] == self.anchor[n]
        }
        if set(self.act) != want:
            raise GroupoidError("action table must cover exactly the composable pairs")
        if any(not 0 <= m < np for m in self.act.values()):
            raise GroupoidError("action value out of range")

    @property
    def n_points(self):
        return len(self.points)

    def __repr__(self):
        return "GroupoidAction(%d points over %r)" % (self.n_points, self.groupoid)


def verify_action(act, verbose=False):
    g = act.groupoid
    rep = Report("groupoid action axioms (%d points)" % act.n_points)
    bad = [
        "%s at %s" % (g.arrows[a], act.points[n])
        for (a, n), m in act.act.items()
        if act.anchor[m] != g.tgt[a]
    ]
    rep.add_witnessed("moved points sit over the arrow target", bad, verbose)

    bad = [
        act.points[n]
        for n in range(act.n_points)
        if act.act[(g.ident[act.anchor[n]], n)] != n
    ]
    rep.add_witnessed("identity arrows act trivially", bad, verbose)

    bad = []
    for (a, n), m in act.act.items():
        for b in range(g.n_arrows):
            if g.src[b] == g.tgt[a]:
                if act.act.get((b, m)) != act.act.get((g.comp[(a, b)], n)):
                    bad.append("%s then %s at %s" % (g.arrows[a], g.arrows[b], act.points[n]))
    rep.add_witnessed("action respects composition", bad, verbose)
    return rep


def action_groupoid(act):
    """Semi-direct product groupoid: objects the points, one arrow
    (g, n): n -> g.n per action pair."""
    g = act.groupoid
    pairs = sorted(act.act)
    index = {p: i for i, p in enumerate(pairs)}
    arrows = ["%s@%s" % (g.arrows[a], act.points[n]) for (a, n) in pairs]
    src = [n for (_, n) in pairs]
    tgt = [act.act[p] for p in pairs]
    ident = [index[(g.ident[act.anchor[n]], n)] for n in range(act.n_points)]
    comp = {}
    for (a, n) in pairs:
        m = act.act[(a, n)]
        for b in range(g.n_arrows):
            if g.src[b] == act.anchor[m]:
                comp[(index[(a, n)], index[(b, m)])] = index[(g.comp[(a, b)], n)]
    inv = [index[(g.inv[a], act.act[(a, n)])] for (a, n) in pairs]
    return FinGroupoid(act.points, arrows, src, tgt, ident, comp, inv)


def object_action(g):
    """The tautological action of a groupoid on its own objects."""
    anchor = range(g.n_objects)
    act = {(a, g.src[a]): g.tgt[a] for a in range(g.n_arrows)}
    return GroupoidAction(g, g.objects, anchor, act)


def trivial_action(g, points):
    """Every arrow fixes every point; needs a single object."""
    if g.n_objects != 1:
        raise GroupoidError("trivial action needs a one-object groupoid")
    anchor = [0] * len(points)
    act = {(a, n): n for a in range(g.n_arrows) for n in range(len(points))}
    return GroupoidAction(g, points, anchor, act)


def swap_action():
    """Z/2 swapping two points over its single object."""
    g = cyclic_group_groupoid(2)
    act = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    return GroupoidAction(g, ("1", "2"), (0, 0), act)


# ---------------------------------------------------------------------------
# orbits


def _partition(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    blocks = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return tuple(tuple(blocks[r]) for r in sorted(blocks))


def orbits(g):
    """Partition of the objects, x ~ tgt(a) for a starting at x."""
    return _partition(g.n_objects, [(g.src[a], g.tgt[a]) for a in range(g.n_arrows)])


def action_orbits(act):
    return _partition(act.n_points, [(n, m) for (_, n), m in act.act.items()])


# ---------------------------------------------------------------------------
# functors


class GroupoidFunctor:
    def __init__(self, dom, cod, obj_map, arr_map):
        self.dom = dom
        self.cod = cod
        self.obj_map = tuple(obj_map)
        self.arr_map = tuple(arr_map)
        if len(self.obj_map) != dom.n_objects or len(self.arr_map) != dom.n_arrows:
            raise GroupoidError("functor table sizes do not match")
        if any(not 0 <= x < cod.n_objects for x in self.obj_map):
            raise GroupoidError("object image out of range")
        if any(not 0 <= a < cod.n_arrows for a in self.arr_map):
            raise GroupoidError("arrow image out of range")


def verify_groupoid_functor(fun, verbose=False):
    dom, cod = fun.dom, fun.cod
    rep = Report("groupoid functor")
    bad = [
        dom.arrows[a]
        for a in range(dom.n_arrows)
        if cod.src[fun.arr_map[a]] != fun.obj_map[dom.src[a]]
        or cod.tgt[fun.arr_map[a]] != fun.obj_map[dom.tgt[a]]
    ]
    rep.add_witnessed("preserves endpoints", bad, verbose)
    bad = [
        dom.objects[x]
        for x in range(dom.n_objects)
        if fun.arr_map[dom.ident[x]] != cod.ident[fun.obj_map[x]]
    ]
    rep.add_witnessed("preserves identities", bad, verbose)
    bad = [
        "%s then %s" % (dom.arrows[a], dom.arrows[b])
        for (a, b), c in dom.comp.items()
        if cod.comp[(fun.arr_map[a], fun.arr_map[b])] != fun.arr_map[c]
    ]
    rep.add_witnessed("preserves composition", bad, verbose)
    bad = [
        dom.arrows[a]
        for a in range(dom.n_arrows)
        if fun.arr_map[dom.inv[a]] != cod.inv[fun.arr_map[a]]
    ]
    rep.add_witnessed("preserves inverses", bad, verbose)
    return rep


def compose_functors(f, g):
    if f.cod != g.dom:
        raise GroupoidError("functor composition mismatch")
    return GroupoidFunctor(
        f.dom,
        g.cod,
        [g.obj_map[x] for x in f.obj_map],
        [g.arr_map[a] for a in f.arr_map],
    )


# ---------------------------------------------------------------------------
# dualization


def dualize(g, field):
    """Functions on a finite groupoid as a Hopf algebroid: the base is
    functions on objects, the total functions on arrows, and every
    structure map is precomposition with the corresponding table."""
    A = function_algebra(field, g.objects)
    H = function_algebra(field, g.arrows)
    no, na = g.n_objects, g.n_arrows
    z, o = field.zero, field.one

    def precompose(rows, cols, table):
        data = [[z] * cols for _ in range(rows)]
        for j in range(rows):
            data[j][table[j]] = o
        return Matrix(field, data, cols)

    s = AlgMorphism(A, H, precompose(na, no, g.src))
    t = AlgMorphism(A, H, precompose(na, no, g.tgt))

    comult = [[z] * na for _ in range(na * na)]
    for (a, b), c in g.comp.items():
        comult[ravel_index((na, na), (a, b))][c] = o
    counit = [[z] * na for _ in range(no)]
    for x in range(no):
        counit[x][g.ident[x]] = o
    antipode = [[z] * na for _ in range(na)]
    for a in range(na):
        antipode[g.inv[a]][a] = o
    return HopfAlgebroid(
        A,
        H,
        s,
        t,
        Matrix(field, comult, na),
        Matrix(field, counit, na),
        Matrix(field, antipode, na),
    )


def dualize_functor(fun, field):
    """Contravariant: a functor F: G -> G' gives a Hopf algebroid
    morphism dualize(G') -> dualize(G) by precomposition with F."""
    hdom = dualize(fun.cod, field)
    hcod = dualize(fun.dom, field)
    z, o = field.zero, field.one

    def pullback(table, rows, cols):
        data = [[z] * cols for _ in range(rows)]
        for j, image in enumerate(table):
            data[j][image] = o
        return Matrix(field, data, cols)

    phi0 = AlgMorphism(hdom.base, hcod.base, pullback(fun.obj_map, fun.dom.n_objects, fun.cod.n_objects))
    phi1 = AlgMorphism(hdom.total, hcod.total, pullback(fun.arr_map, fun.dom.n_arrows, fun.cod.n_arrows))
    return HopfMorphism(hdom, hcod, phi0, phi1)


def action_to_comodule_algebra(act, field):
    """Functions on the acted-on set as a left comodule algebra over the
    dual of the acting groupoid.

    The coaction carries an inverse twist so that it lands in the
    balanced tensor: delta_n |-> sum over act(g, m) = n of
    delta_{inv g} (x) delta_m.
    """
    from .bundles import ComoduleAlgebra

    g = act.groupoid
    h = dualize(g, field)
    R = function_algebra(field, act.points)
    z, o = field.zero, field.one
    np = act.n_points
    na = g.n_arrows

    sigma = [[z] * g.n_objects for _ in range(np)]
    for n in range(np):
        sigma[n][act.anchor[n]] = o
    structure = AlgMorphism(h.base, R, Matrix(field, sigma, g.n_objects))

    lam = [[z] * np for _ in range(na * np)]
    for (a, m), n in act.act.items():
        lam[ravel_index((na, np), (g.inv[a], m))][n] = o
    return ComoduleAlgebra(h, R, structure, Matrix(field, lam, np), side="left")


def semidirect_comparison(act, field):
    """The closed-form isomorphism between the dual of the semi-direct
    product groupoid and the left translation algebroid of the dual
    comodule algebra: delta_(g,n) |-> class(delta_g (x) delta_{g.n}).

    Returns (dual of the action groupoid, translation algebroid,
    comparison morphism)."""
    from .hopfcore import left_translation

    g = act.groupoid
    semi = action_groupoid(act)
    dual_semi = dualize(semi, field)
    r = action_to_comodule_algebra(act, field)
    lt, _ = left_translation(r)

    pairs = sorted(act.act)
    np = act.n_points
    cols = []
    for (a, n) in pairs:
        plain = [field.zero] * (g.n_arrows * np)
        plain[ravel_index((g.n_arrows, np), (a, act.act[(a, n)]))] = field.one
        cols.append(r.tensor.projection.apply(plain))
    phi1 = AlgMorphism(dual_semi.total, lt.total, Matrix.from_columns(field, cols, lt.total.dim))
    mor = HopfMorphism(dual_semi, lt, identity_morphism(dual_semi.base), phi1)
    return dual_semi, lt, mor
