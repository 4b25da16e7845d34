"""Finite-dimensional commutative algebras, morphisms, modules, and
balanced tensor products, all presented by exact structure constants.

An algebra lives on a chosen basis e_0..e_{n-1} with products
e_i e_j = sum_k c[i][j][k] e_k.  Modules are given by per-basis action
matrices.  A tensor product over an algebra is realized concretely as a
quotient of the plain tensor space, carried around as a
projection/section pair so that every map defined on representatives can
be transported to the quotient and back deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactlin import (
    Field,
    Matrix,
    kernel_basis,
    kron,
    quotient_by_span,
    solve,
)
from .report import Report


class AlgebraError(ValueError):
    """Structural misuse: mismatched algebras, shapes, or fields."""


def _default_labels(n: int, stem: str = "e") -> tuple:
    return tuple("%s%d" % (stem, i) for i in range(n))


class FinAlgebra:
    """Commutative unital algebra of finite dimension over an exact field."""

    def __init__(self, field: Field, structconst, unit, labels: Optional[Sequence[str]] = None):
        self.field = field
        self.dim = len(structconst)
        conv = field.from_int
        self.structconst = tuple(
            tuple(tuple(conv(x) if isinstance(x, int) else x for x in vec) for vec in row)
            for row in structconst
        )
        for row in self.structconst:
            if len(row) != self.dim or any(len(vec) != self.dim for vec in row):
                raise AlgebraError("structure constants are not dim^3")
        self.unit = tuple(conv(x) if isinstance(x, int) else x for x in unit)
        if len(self.unit) != self.dim:
            raise AlgebraError("unit vector has wrong length")
        self.labels = tuple(labels) if labels is not None else _default_labels(self.dim)
        if len(self.labels) != self.dim:
            raise AlgebraError("label count mismatch")
        # left-multiplication matrices by basis elements, used everywhere
        z = field.zero
        self._lmul_basis = tuple(
            Matrix(field, [[self.structconst[i][j][k] for j in range(self.dim)] for k in range(self.dim)], self.dim)
            for i in range(self.dim)
        )
        self._zero = z

    def __eq__(self, other):
        return (
            isinstance(other, FinAlgebra)
            and self.field == other.field
            and self.structconst == other.structconst
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.field, self.structconst, self.unit))

    def __repr__(self):
        return "FinAlgebra(dim=%d over %s)" % (self.dim, self.field.name)

    def zero_vec(self) -> tuple:
        return (self._zero,) * self.dim

    def basis_vec(self, i: int) -> tuple:
        return tuple(self.field.one if j == i else self._zero for j in range(self.dim))

    def mul_vec(self, u: Sequence, v: Sequence) -> tuple:
        f = self.field
        z = f.zero
        add, mul = f.add, f.mul
        out = [z] * self.dim
        for i, ui in enumerate(u):
            if ui == z:
                continue
            row = self.structconst[i]
            for j, vj in enumerate(v):
                if vj == z:
                    continue
                coef = mul(ui, vj)
                vec = row[j]
                for k in range(self.dim):
                    ck = vec[k]
                    if ck != z:
                        out[k] = add(out[k], mul(coef, ck))
        return tuple(out)

    def lmul_matrix(self, v: Sequence) -> Matrix:
        """Matrix of multiplication by the element with coordinates v."""
        f = self.field
        z = f.zero
        acc = Matrix.zeros(f, self.dim, self.dim)
        for i, vi in enumerate(v):
            if vi != z:
                acc = acc + self._lmul_basis[i].scale(vi)
        return acc

    def lmul_basis(self, i: int) -> Matrix:
        return self._lmul_basis[i]

    def mul_matrix(self) -> Matrix:
        """Multiplication as a map from the plain tensor square,
        column (i, j) (row-major) holding e_i e_j."""
        if not hasattr(self, "_mul_matrix"):
            cols = [self.structconst[i][j] for i in range(self.dim) for j in range(self.dim)]
            self._mul_matrix = Matrix.from_columns(self.field, cols, self.dim)
        return self._mul_matrix

    def unit_column(self) -> Matrix:
        return Matrix.column(self.field, self.unit)

    def label_of(self, i: int) -> str:
        return self.labels[i]

    def show_vec(self, v: Sequence) -> str:
        f = self.field
        terms = []
        for i, x in enumerate(v):
            if x == f.zero:
                continue
            c = f.fmt(x)
            terms.append(self.labels[i] if c == "1" else "%s*%s" % (c, self.labels[i]))
        return " + ".join(terms) if terms else "0"

    def is_idempotent_basis(self) -> bool:
        """True when e_i e_j = delta_ij e_i, i.e. the basis consists of
        orthogonal idempotents (function algebras on finite sets)."""
        f = self.field
        for i in range(self.dim):
            for j in range(self.dim):
                want = self.basis_vec(i) if i == j else self.zero_vec()
                if self.structconst[i][j] != want:
                    return False
        return True


def verify_algebra(a: FinAlgebra, verbose: bool = False) -> Report:
    rep = Report("algebra axioms (dim %d over %s)" % (a.dim, a.field.name))
    comm = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if a.structconst[i][j] != a.structconst[j][i]:
                comm.append("%s*%s != %s*%s" % (a.labels[i], a.labels[j], a.labels[j], a.labels[i]))
    rep.add_witnessed("commutative", comm, verbose)
    assoc = []
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.structconst[i][j]
            for k in range(a.dim):
                lhs = a.mul_vec(ij, a.basis_vec(k))
                rhs = a.mul_vec(a.basis_vec(i), a.structconst[j][k])
                if lhs != rhs:
                    assoc.append("(%s*%s)*%s != %s*(%s*%s)" % (a.labels[i], a.labels[j], a.labels[k], a.labels[i], a.labels[j], a.labels[k]))
    rep.add_witnessed("associative", assoc, verbose)
    unit = []
    for i in range(a.dim):
        if a.mul_vec(a.unit, a.basis_vec(i)) != a.basis_vec(i):
            unit.append("1*%s != %s" % (a.labels[i], a.labels[i]))
    rep.add_witnessed("unital", unit, verbose)
    return rep


# ---------------------------------------------------------------------------
# constructors for the algebras the corpus lives on


def base_field_algebra(field: Field) -> FinAlgebra:
    one = field.one
    return FinAlgebra(field, [[[one]]], [one], labels=("1",))


def function_algebra(field: Field, points: Sequence[str]) -> FinAlgebra:
    """Functions on a finite set with pointwise product; basis = delta functions."""
    n = len(points)
    z, o = field.zero, field.one
    c = [[[o if i == j == k else z for k in range(n)] for j in range(n)] for i in range(n)]
    return FinAlgebra(field, c, [o] * n, labels=tuple("d(%s)" % p for p in points))


def monogenic_algebra(field: Field, modulus: Sequence, var: str = "x") -> FinAlgebra:
    """k[x]/(f) for monic f of degree d given by its coefficient list
    [a_0, ..., a_{d-1}, 1]; basis 1, x, ..., x^{d-1}."""
    coeffs = [field.from_int(x) if isinstance(x, int) else x for x in modulus]
    if coeffs[-1] != field.one:
        raise AlgebraError("modulus must be monic")
    d = len(coeffs) - 1
    z = field.zero
    neg, mul, add = field.neg, field.mul, field.add
    # reduction table: x^d = -a_0 - a_1 x - ...
    powers = []
    cur = [z] * d
    cur[0] = field.one
    for _ in range(2 * d):
        powers.append(tuple(cur))
        nxt = [z] + cur[:-1]
        lead = cur[-1]
        if lead != z:
            for i in range(d):
                nxt[i] = add(nxt[i], neg(mul(lead, coeffs[i])))
        cur = nxt
    c = [[powers[i + j] for j in range(d)] for i in range(d)]
    labels = tuple("1" if i == 0 else (var if i == 1 else "%s^%d" % (var, i)) for i in range(d))
    unit = [z] * d
    unit[0] = field.one
    return FinAlgebra(field, c, unit, labels=labels)


def tensor_product_algebra(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    """Plain tensor product algebra on the row-major product basis."""
    if a.field != b.field:
        raise AlgebraError("field mismatch in tensor product")
    f = a.field
    z = f.zero
    mul = f.mul
    n = a.dim * b.dim
    c = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i1 in range(a.dim):
        for i2 in range(b.dim):
            i = i1 * b.dim + i2
            for j1 in range(a.dim):
                va = a.structconst[i1][j1]
                for j2 in range(b.dim):
                    vb = b.structconst[i2][j2]
                    j = j1 * b.dim + j2
                    vec = c[i][j]
                    for k1 in range(a.dim):
                        x = va[k1]
                        if x == z:
                            continue
                        for k2 in range(b.dim):
                            y = vb[k2]
                            if y != z:
                                vec[k1 * b.dim + k2] = mul(x, y)
    unit = [z] * n
    for k1 in range(a.dim):
        x = a.unit[k1]
        if x == z:
            continue
        for k2 in range(b.dim):
            y = b.unit[k2]
            if y != z:
                unit[k1 * b.dim + k2] = mul(x, y)
    labels = tuple("%s(x)%s" % (la, lb) for la in a.labels for lb in b.labels)
    return FinAlgebra(f, c, unit, labels=labels)


def quotient_algebra(t: FinAlgebra, projection: Matrix, section: Matrix) -> FinAlgebra:
    """Algebra structure on a quotient of t along a projection/section pair.

    Only correct when the kernel of the projection is an ideal; callers
    arrange that (balancing relations over algebra maps into a commutative
    algebra always generate an ideal).
    """
    dim = projection.rows
    c = []
    for i in range(dim):
        row = []
        si = section.col(i)
        for j in range(dim):
            sj = section.col(j)
            row.append(list(projection.apply(t.mul_vec(si, sj))))
        c.append(row)
    unit = projection.apply(t.unit)
    # label quotient basis vectors by the plain basis element the section picks
    labels = []
    for i in range(dim):
        col = section.col(i)
        nz = [j for j, x in enumerate(col) if x != t.field.zero]
        labels.append("[%s]" % t.labels[nz[0]] if len(nz) == 1 else "[q%d]" % i)
    return FinAlgebra(t.field, c, unit, labels=tuple(labels))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class AlgMorphism:
    src: FinAlgebra
    dst: FinAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.dst.dim or self.matrix.cols != self.src.dim:
            raise AlgebraError("morphism matrix shape mismatch")
        if self.matrix.field != self.src.field or self.src.field != self.dst.field:
            raise AlgebraError("morphism field mismatch")

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def then(self, other: "AlgMorphism") -> "AlgMorphism":
        """Composite self followed by other."""
        if other.src != self.dst:
            raise AlgebraError("composition mismatch")
        return AlgMorphism(self.src, other.dst, other.matrix * self.matrix)


def identity_morphism(a: FinAlgebra) -> AlgMorphism:
    return AlgMorphism(a, a, Matrix.identity(a.field, a.dim))


def alg_morphism(src: FinAlgebra, dst: FinAlgebra, basis_images: Sequence[Sequence]) -> AlgMorphism:
    """Morphism from images of the source basis vectors."""
    conv = dst.field.from_int
    cols = [tuple(conv(x) if isinstance(x, int) else x for x in img) for img in basis_images]
    return AlgMorphism(src, dst, Matrix.from_columns(src.field, cols, dst.dim))


def verify_alg_morphism(f: AlgMorphism, verbose: bool = False) -> Report:
    rep = Report("algebra morphism (dim %d -> dim %d)" % (f.src.dim, f.dst.dim))
    mult = []
    for i in range(f.src.dim):
        fi = f(f.src.basis_vec(i))
        for j in range(i, f.src.dim):
            lhs = f(f.src.structconst[i][j])
            rhs = f.dst.mul_vec(fi, f(f.src.basis_vec(j)))
            if lhs != rhs:
                mult.append("f(%s*%s) != f(%s)f(%s)" % (f.src.labels[i], f.src.labels[j], f.src.labels[i], f.src.labels[j]))
    rep.add_witnessed("multiplicative", mult, verbose)
    rep.add("unital", f(f.src.unit) == f.dst.unit)
    return rep


# ---------------------------------------------------------------------------
# modules


class FinModule:
    """Module over a FinAlgebra, given by one action matrix per basis
    element of the algebra.  Everything here is commutative, so no
    left/right distinction is carried by the type; the balancing in
    tensor_over says which side each factor is used on.
    """

    def __init__(self, over: FinAlgebra, action: Sequence[Matrix], dim: Optional[int] = None):
        self.over = over
        self.action = tuple(action)
        if len(self.action) != over.dim:
            raise AlgebraError("need one action matrix per algebra basis element")
        self.dim = self.action[0].rows if self.action else (dim or 0)
        for m in self.action:
            if m.rows != self.dim or m.cols != self.dim:
                raise AlgebraError("action matrices must be square of module dim")
            if m.field != over.field:
                raise AlgebraError("module field mismatch")

    def act(self, a_vec: Sequence) -> Matrix:
        f = self.over.field
        z = f.zero
        acc = Matrix.zeros(f, self.dim, self.dim)
        for i, c in enumerate(a_vec):
            if c != z:
                acc = acc + self.action[i].scale(c)
        return acc

    def __repr__(self):
        return "FinModule(dim=%d over dim=%d)" % (self.dim, self.over.dim)


def regular_module(a: FinAlgebra) -> FinModule:
    return FinModule(a, [a.lmul_basis(i) for i in range(a.dim)])


def free_module(a: FinAlgebra, rank: int) -> FinModule:
    eye = Matrix.identity(a.field, rank)
    return FinModule(a, [kron(eye, a.lmul_basis(i)) for i in range(a.dim)])


def module_via(beta: AlgMorphism) -> FinModule:
    """The target algebra as a module over the source, acting through beta."""
    return FinModule(beta.src, [beta.dst.lmul_matrix(beta(beta.src.basis_vec(i))) for i in range(beta.src.dim)])


def verify_module(m: FinModule, verbose: bool = False) -> Report:
    a = m.over
    rep = Report("module axioms (dim %d over dim %d)" % (m.dim, a.dim))
    rep.add("unit acts as identity", m.act(a.unit) == Matrix.identity(a.field, m.dim))
    bad = []
    for i in range(a.dim):
        for j in range(a.dim):
            if m.action[i] * m.action[j] != m.act(a.structconst[i][j]):
                bad.append("action(%s)action(%s) != action(%s*%s)" % (a.labels[i], a.labels[j], a.labels[i], a.labels[j]))
    rep.add_witnessed("action respects products", bad, verbose)
    return rep


# ---------------------------------------------------------------------------
# balanced tensor products


@dataclass
class BalancedTensor:
    """Quotient of a plain tensor space by balancing relations.

    projection: carrier <- plain, section: plain <- carrier,
    projection * section = identity.
    """

    field: Field
    factor_dims: tuple
    plain_dim: int
    dim: int
    projection: Matrix
    section: Matrix

    def project(self, vec: Sequence) -> tuple:
        return self.projection.apply(vec)

    def lift(self, vec: Sequence) -> tuple:
        return self.section.apply(vec)

    def relation_space(self) -> Matrix:
        return kernel_basis(self.projection)


def balanced_chain(field: Field, dims: Sequence[int], links) -> BalancedTensor:
    """Tensor product of several factors balanced over algebras between
    adjacent factors.

    links[i] = (algebra, right_mats, left_mats): right_mats[b] acts on
    factor i, left_mats[b] on factor i+1; the relations identify
    (x . a) (x) y with x (x) (a . y) for every algebra basis element a.
    """
    dims = tuple(dims)
    if len(links) != len(dims) - 1:
        raise AlgebraError("need one link per adjacent factor pair")
    plain = 1
    for d in dims:
        plain *= d
    z = field.zero
    add, sub, div = field.add, field.sub, field.div
    rel_rows = []
    seen = set()
    for pos, (alg, right_mats, left_mats) in enumerate(links):
        if len(right_mats) != alg.dim or len(left_mats) != alg.dim:
            raise AlgebraError("link %d: one matrix per algebra basis element" % pos)
        d1, d2 = dims[pos], dims[pos + 1]
        tail = 1
        for d in dims[pos + 2:]:
            tail *= d
        outer = plain // (d1 * d2 * tail)
        stride2 = tail
        stride1 = d2 * tail
        block = d1 * stride1
        for b in range(alg.dim):
            r, l = right_mats[b], left_mats[b]
            rcols = [
                [(i, r.entry(i, j)) for i in range(d1) if r.entry(i, j)]
                for j in range(d1)
            ]
            lcols = [
                [(i, l.entry(i, j)) for i in range(d2) if l.entry(i, j)]
                for j in range(d2)
            ]
            for o in range(outer):
                base = o * block
                for i1 in range(d1):
                    rc = rcols[i1]
                    off1 = base + i1 * stride1
                    for i2 in range(d2):
                        lc = lcols[i2]
                        entries = {}
                        for i, c in rc:
                            k = base + i * stride1 + i2 * stride2
                            entries[k] = add(entries.get(k, z), c)
                        for i, c in lc:
                            k = off1 + i * stride2
                            entries[k] = sub(entries.get(k, z), c)
                        items = sorted((k, v) for k, v in entries.items() if v)
                        if not items:
                            continue
                        lead = items[0][1]
                        key = tuple((k, div(v, lead)) for k, v in items)
                        if key in seen:
                            continue
                        seen.add(key)
                        for t in range(tail):
                            row = [z] * plain
                            for k, v in key:
                                row[k + t] = v
                            rel_rows.append(row)
    proj, sect = quotient_by_span(field, plain, rel_rows)
    return BalancedTensor(field, dims, plain, proj.rows, proj, sect)


def tensor_over(m: FinModule, n: FinModule, a: FinAlgebra) -> BalancedTensor:
    """m (x)_a n with m used through its right action, n its left action."""
    if m.over != a or n.over != a:
        raise AlgebraError("tensor_over: modules not over the given algebra")
    return balanced_chain(a.field, (m.dim, n.dim), [(a, m.action, n.action)])


def descends(plain_map: Matrix, dom: BalancedTensor, cod: BalancedTensor) -> bool:
    """Whether a map on plain representatives is well defined on carriers."""
    rel = dom.relation_space()
    return (cod.projection * plain_map * rel).is_zero()


def induce(plain_map: Matrix, dom: BalancedTensor, cod: BalancedTensor) -> Matrix:
    if not descends(plain_map, dom, cod):
        raise AlgebraError("map does not descend to the balanced quotient")
    return cod.projection * plain_map * dom.section


def balanced_tensor_algebra(factors: Sequence[FinAlgebra], links) -> tuple:
    """Algebra structure on a chain tensor of algebras balanced through
    algebra maps.

    links[i] = (algebra A_i, right: AlgMorphism A_i -> factors[i],
    left: AlgMorphism A_i -> factors[i+1]).  Returns (algebra, bt) where
    bt is the underlying BalancedTensor of the carrier.
    """
    field = factors[0].field
    plain = factors[0]
    for f in factors[1:]:
        plain = tensor_product_algebra(plain, f)
    chain_links = []
    for pos, (alg, right, left) in enumerate(links):
        chain_links.append(
            (
                alg,
                [factors[pos].lmul_matrix(right(alg.basis_vec(b))) for b in range(alg.dim)],
                [factors[pos + 1].lmul_matrix(left(alg.basis_vec(b))) for b in range(alg.dim)],
            )
        )
    bt = balanced_chain(field, [f.dim for f in factors], chain_links)
    # plain labels are built by tensor_product_algebra in the same order
    quot = quotient_algebra(plain, bt.projection, bt.section)
    return quot, bt


# ---------------------------------------------------------------------------
# projectivity and faithful flatness


def is_projective(m: FinModule) -> tuple:
    """Decide projectivity by trying to split the free cover A^dim(m) -> m.

    Returns (flag, section) where section is a module map m -> A^dim(m)
    with cover . section = identity when flag is true.
    """
    a = m.over
    f = a.field
    dm, da = m.dim, a.dim
    if dm == 0:
        return True, Matrix.zeros(f, 0, 0)
    free = free_module(a, dm)
    # cover sends the slot-j unit basis vector of A^dm to m_j, and is
    # A-linear; column (j, i) (slot-major) goes to e_i . m_j
    cover_cols = []
    for j in range(dm):
        for i in range(da):
            cover_cols.append(m.action[i].col(j))
    cover = Matrix.from_columns(f, cover_cols, dm)
    df = dm * da
    eye_dm = Matrix.identity(f, dm)

    # unknown X: df x dm, row-major vectorization; vec(AXB) = (A kron B^T) vec(X)
    blocks = [kron(cover, eye_dm)]
    rhs_blocks = [Matrix.column(f, [x for row in eye_dm.data for x in row])]
    eye_df = Matrix.identity(f, df)
    for i in range(da):
        lhs = kron(free.action[i], eye_dm) - kron(eye_df, m.action[i].transpose())
        blocks.append(lhs)
        rhs_blocks.append(Matrix.zeros(f, df * dm, 1))
    big = Matrix(f, [row for b in blocks for row in b.data], df * dm)
    rhs = Matrix(f, [row for b in rhs_blocks for row in b.data], 1)
    sol = solve(big, rhs, want_kernel=False)
    if not sol.consistent:
        return False, None
    flat = [x for (x,) in sol.particular.data]
    x = Matrix(f, [flat[r * dm:(r + 1) * dm] for r in range(df)], dm)
    assert cover * x == eye_dm
    return True, x


def annihilator_basis(m: FinModule) -> Matrix:
    """Kernel of a |-> action(a) as a subspace of the algebra."""
    f = m.over.field
    cols = []
    for i in range(m.over.dim):
        cols.append([x for row in m.action[i].data for x in row])
    mat = Matrix.from_columns(f, cols, m.dim * m.dim)
    return kernel_basis(mat)


def is_faithfully_flat(beta: AlgMorphism) -> bool:
    """Faithful flatness of dst as a module over src through beta:
    finitely generated projective with zero annihilator."""
    mod = module_via(beta)
    proj, _ = is_projective(mod)
    if not proj:
        return False
    return annihilator_basis(mod).cols == 0
