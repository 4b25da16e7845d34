"""Plain-text file formats for every object the command line handles.

All six formats share one lexical layer: UTF-8 text, `#` starts a
comment running to the end of the line, blank lines are skipped, and
tokens are separated by whitespace.  Scalars are exact rationals
written `p` or `p/q` and are read into whichever field the caller
supplies, so one fixture file serves Q and every F_p alike.

  .gpd   groupoid        objects / arrows / id / comp / inv lines
  .alg   algebra         labels / unit / mul lines
  .halg  Hopf algebroid  base and total algebra blocks plus matrix
                         blocks s, t, comult, counit, antipode
  .hmor  morphism        dom / cod file references plus phi0, phi1
  .cmd   comodule        algebroid reference, side, action blocks and
                         the coaction
  .bnd   bundle          two algebroid references, carrier block,
                         alpha / beta and the two coactions

`arrows f x y` declares an arrow f from x to y, `comp f g h` that f
followed by g is h, `inv f g` that g inverts f.  Matrix blocks start
with `matrix <name> <rows> <cols>` and continue with one line per row.
Comultiplications and coactions are stored on the plain tensor space
and projected to balanced coordinates on load.  File references inside
.hmor, .cmd and .bnd are resolved relative to the referencing file and
must not contain whitespace.
"""

import os

from .exactlin import Matrix
from .finalg import AlgebraError, AlgMorphism, FinAlgebra, FinModule
from .hopfcore import HopfAlgebroid, HopfMorphism
from .comod import ComodError, Comodule
from .bundles import BundleError, bicomodule_algebra
from .groupoidlab import FinGroupoid, GroupoidError


class FormatError(ValueError):
    """Parse or assembly failure, carrying file position or entity."""


SEMANTIC_ERRORS = (AlgebraError, ComodError, BundleError, GroupoidError)


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text, line, col):
        self.text = text
        self.line = line
        self.col = col


class _Reader:
    """Logical lines of tokens with positions for error messages."""

    def __init__(self, path, text):
        self.path = path
        self.lines = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = []
            col = 0
            for piece in body.split():
                col = body.index(piece, col)
                toks.append(_Tok(piece, lineno, col + 1))
                col += len(piece)
            if toks:
                self.lines.append(toks)
        self.pos = 0

    def fail(self, msg, tok=None):
        where = self.path
        if tok is not None:
            where = "%s:%d:%d" % (self.path, tok.line, tok.col)
        raise FormatError("%s: %s" % (where, msg))

    def done(self):
        return self.pos >= len(self.lines)

    def peek_word(self):
        return None if self.done() else self.lines[self.pos][0].text

    def take(self, keyword=None):
        if self.done():
            raise FormatError("%s: unexpected end of file (wanted %s)" % (self.path, keyword or "more input"))
        toks = self.lines[self.pos]
        self.pos += 1
        if keyword is not None and toks[0].text != keyword:
            self.fail("expected '%s', found '%s'" % (keyword, toks[0].text), toks[0])
        return toks

    def scalar(self, field, tok):
        try:
            return field.parse(tok.text)
        except (ValueError, ZeroDivisionError):
            self.fail("bad scalar '%s'" % tok.text, tok)

    def matrix_block(self, field):
        head = self.take("matrix")
        if len(head) != 4:
            self.fail("matrix header needs a name and two sizes", head[0])
        name = head[1].text
        try:
            nrows, ncols = int(head[2].text), int(head[3].text)
        except ValueError:
            self.fail("matrix sizes must be integers", head[2])
        data = []
        for _ in range(nrows):
            toks = self.take()
            if len(toks) != ncols:
                self.fail("expected %d entries in this matrix row, found %d" % (ncols, len(toks)), toks[0])
            data.append([self.scalar(field, t) for t in toks])
        return name, Matrix(field, data, ncols)


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return _Reader(path, fh.read())
    except OSError as e:
        raise FormatError("%s: %s" % (path, e.strerror or e))


def _resolve(base_path, ref):
    return os.path.normpath(os.path.join(os.path.dirname(os.path.abspath(base_path)), ref))


def _wrap_semantic(path, entity, fn):
    try:
        return fn()
    except SEMANTIC_ERRORS as e:
        raise FormatError("%s: %s: %s" % (path, entity, e))


# ---------------------------------------------------------------------------
# groupoids (.gpd)


def load_groupoid(path):
    r = _read(path)
    objects = [t.text for t in r.take("objects")[1:]]
    if not objects:
        r.fail("need at least one object")
    arrows, src, tgt = [], [], []
    obj_index = {o: i for i, o in enumerate(objects)}
    while r.peek_word() == "arrows":
        toks = r.take()
        if len(toks) != 4:
            r.fail("arrows line is 'arrows <name> <src> <tgt>'", toks[0])
        arrows.append(toks[1].text)
        for t, out in ((toks[2], src), (toks[3], tgt)):
            if t.text not in obj_index:
                r.fail("unknown object '%s'" % t.text, t)
            out.append(obj_index[t.text])
    arrow_index = {a: i for i, a in enumerate(arrows)}

    def arrow_of(t):
        if t.text not in arrow_index:
            r.fail("unknown arrow '%s'" % t.text, t)
        return arrow_index[t.text]

    ident = [None] * len(objects)
    while r.peek_word() == "id":
        toks = r.take()
        if len(toks) != 3 or toks[1].text not in obj_index:
            r.fail("id line is 'id <object> <arrow>'", toks[0])
        ident[obj_index[toks[1].text]] = arrow_of(toks[2])
    comp = {}
    while r.peek_word() == "comp":
        toks = r.take()
        if len(toks) != 4:
            r.fail("comp line is 'comp <f> <g> <fg>'", toks[0])
        comp[(arrow_of(toks[1]), arrow_of(toks[2]))] = arrow_of(toks[3])
    inv = [None] * len(arrows)
    while r.peek_word() == "inv":
        toks = r.take()
        if len(toks) != 3:
            r.fail("inv line is 'inv <f> <g>'", toks[0])
        inv[arrow_of(toks[1])] = arrow_of(toks[2])
    if not r.done():
        r.fail("unexpected line", r.lines[r.pos][0])
    if any(x is None for x in ident):
        r.fail("missing id line for some object")
    if any(x is None for x in inv):
        r.fail("missing inv line for some arrow")
    return _wrap_semantic(
        path, "groupoid", lambda: FinGroupoid(objects, arrows, src, tgt, ident, comp, inv)
    )


def save_groupoid(g, path):
    out = ["objects " + " ".join(g.objects)]
    for i, a in enumerate(g.arrows):
        out.append("arrows %s %s %s" % (a, g.objects[g.src[i]], g.objects[g.tgt[i]]))
    for x, a in enumerate(g.ident):
        out.append("id %s %s" % (g.objects[x], g.arrows[a]))
    for (a, b) in sorted(g.comp):
        out.append("comp %s %s %s" % (g.arrows[a], g.arrows[b], g.arrows[g.comp[(a, b)]]))
    for a, b in enumerate(g.inv):
        out.append("inv %s %s" % (g.arrows[a], g.arrows[b]))
    _write(path, out)


# ---------------------------------------------------------------------------
# algebras (.alg and embedded blocks)


def _algebra_body(r, field, end_at=None):
    labels = [t.text for t in r.take("labels")[1:]]
    dim = len(labels)
    if dim == 0:
        r.fail("need at least one basis label")
    unit_toks = r.take("unit")
    if len(unit_toks) != dim + 1:
        r.fail("unit vector needs %d entries" % dim, unit_toks[0])
    unit = [r.scalar(field, t) for t in unit_toks[1:]]
    struct = [[None] * dim for _ in range(dim)]
    while r.peek_word() == "mul":
        toks = r.take()
        if len(toks) != 3 + dim:
            r.fail("mul line is 'mul <i> <j>' plus %d entries" % dim, toks[0])
        try:
            i, j = int(toks[1].text), int(toks[2].text)
        except ValueError:
            r.fail("mul indices must be integers", toks[1])
        if not (0 <= i < dim and 0 <= j < dim):
            r.fail("mul index out of range", toks[1])
        struct[i][j] = [r.scalar(field, t) for t in toks[3:]]
    missing = [(i, j) for i in range(dim) for j in range(dim) if struct[i][j] is None]
    if missing:
        r.fail("missing mul line for basis pair %s" % (missing[0],))
    if end_at is not None:
        r.take(end_at)
    return struct, unit, labels


def load_algebra(path, field):
    r = _read(path)
    struct, unit, labels = _algebra_body(r, field)
    if not r.done():
        r.fail("unexpected line after the algebra body", r.lines[r.pos][0])
    return _wrap_semantic(path, "algebra", lambda: FinAlgebra(field, struct, unit, labels))


def _algebra_lines(a):
    f = a.field
    out = ["labels " + " ".join(a.labels)]
    out.append("unit " + " ".join(f.fmt(x) for x in a.unit))
    for i in range(a.dim):
        for j in range(a.dim):
            vec = " ".join(f.fmt(x) for x in a.structconst[i][j])
            out.append("mul %d %d %s" % (i, j, vec))
    return out


def save_algebra(a, path):
    _write(path, _algebra_lines(a))


def _matrix_lines(name, m):
    f = m.field
    out = ["matrix %s %d %d" % (name, m.rows, m.cols)]
    for i in range(m.rows):
        out.append(" ".join(f.fmt(m.entry(i, j)) for j in range(m.cols)))
    return out


def _named_blocks(r, field, wanted, path):
    blocks = {}
    while r.peek_word() == "matrix":
        name, m = r.matrix_block(field)
        if name in blocks:
            r.fail("duplicate matrix block '%s'" % name)
        blocks[name] = m
    if not r.done():
        r.fail("unexpected line", r.lines[r.pos][0])
    for name in wanted:
        if name not in blocks:
            raise FormatError("%s: missing matrix block '%s'" % (path, name))
    extra = set(blocks) - set(wanted)
    if extra:
        raise FormatError("%s: unknown matrix block '%s'" % (path, sorted(extra)[0]))
    return blocks


# ---------------------------------------------------------------------------
# Hopf algebroids (.halg)


def load_hopf_algebroid(path, field, cache=None):
    key = (os.path.abspath(path), field.name)
    if cache is not None and key in cache:
        return cache[key]
    r = _read(path)
    head = r.take("begin")
    if head[-1].text != "base":
        r.fail("first block must be 'begin base'", head[0])
    base = _wrap_semantic(
        path, "base algebra", lambda: FinAlgebra(field, *_algebra_body(r, field, end_at="end"))
    )
    head = r.take("begin")
    if head[-1].text != "total":
        r.fail("second block must be 'begin total'", head[0])
    total = _wrap_semantic(
        path, "total algebra", lambda: FinAlgebra(field, *_algebra_body(r, field, end_at="end"))
    )
    blocks = _named_blocks(r, field, ("s", "t", "comult", "counit", "antipode"), path)
    h = _wrap_semantic(
        path,
        "Hopf algebroid",
        lambda: HopfAlgebroid(
            base,
            total,
            AlgMorphism(base, total, blocks["s"]),
            AlgMorphism(base, total, blocks["t"]),
            blocks["comult"],
            blocks["counit"],
            blocks["antipode"],
            allow_nonflat=True,
        ),
    )
    if cache is not None:
        cache[key] = h
    return h


def save_hopf_algebroid(h, path):
    out = ["begin base"]
    out += _algebra_lines(h.base)
    out.append("end")
    out.append("begin total")
    out += _algebra_lines(h.total)
    out.append("end")
    out += _matrix_lines("s", h.s.matrix)
    out += _matrix_lines("t", h.t.matrix)
    out += _matrix_lines("comult", h.delta_plain)
    out += _matrix_lines("counit", h.counit)
    out += _matrix_lines("antipode", h.antipode)
    _write(path, out)


# ---------------------------------------------------------------------------
# morphisms (.hmor)


def load_hopf_morphism(path, field, cache=None):
    r = _read(path)
    dom_toks = r.take("dom")
    cod_toks = r.take("cod")
    if len(dom_toks) != 2 or len(cod_toks) != 2:
        r.fail("dom and cod lines each take one file reference")
    dom = load_hopf_algebroid(_resolve(path, dom_toks[1].text), field, cache)
    cod = load_hopf_algebroid(_resolve(path, cod_toks[1].text), field, cache)
    blocks = _named_blocks(r, field, ("phi0", "phi1"), path)
    return _wrap_semantic(
        path,
        "morphism",
        lambda: HopfMorphism(
            dom,
            cod,
            AlgMorphism(dom.base, cod.base, blocks["phi0"]),
            AlgMorphism(dom.total, cod.total, blocks["phi1"]),
        ),
    )


def save_hopf_morphism(fm, path, dom_ref, cod_ref):
    """dom_ref / cod_ref are the .halg paths to record, as written."""
    out = ["dom %s" % dom_ref, "cod %s" % cod_ref]
    out += _matrix_lines("phi0", fm.phi0.matrix)
    out += _matrix_lines("phi1", fm.phi1.matrix)
    _write(path, out)


# ---------------------------------------------------------------------------
# comodules (.cmd)


def load_comodule(path, field, cache=None):
    r = _read(path)
    alg_toks = r.take("algebroid")
    if len(alg_toks) != 2:
        r.fail("algebroid line takes one file reference")
    h = load_hopf_algebroid(_resolve(path, alg_toks[1].text), field, cache)
    side_toks = r.take("side")
    if len(side_toks) != 2 or side_toks[1].text not in ("left", "right"):
        r.fail("side line is 'side left' or 'side right'")
    side = side_toks[1].text
    dim_toks = r.take("dim")
    try:
        dim = int(dim_toks[1].text)
    except (IndexError, ValueError):
        r.fail("dim line takes one integer", dim_toks[0])
    wanted = tuple("action%d" % i for i in range(h.base.dim)) + ("coaction",)
    blocks = _named_blocks(r, field, wanted, path)
    action = [blocks["action%d" % i] for i in range(h.base.dim)]
    for m in action:
        if m.rows != dim or m.cols != dim:
            raise FormatError("%s: action blocks must be %dx%d" % (path, dim, dim))
    return _wrap_semantic(
        path,
        "comodule",
        lambda: Comodule(h, FinModule(h.base, action), blocks["coaction"], side),
    )


def save_comodule(c, path, algebroid_ref):
    out = ["algebroid %s" % algebroid_ref, "side %s" % c.side, "dim %d" % c.dim]
    for i, m in enumerate(c.module.action):
        out += _matrix_lines("action%d" % i, m)
    out += _matrix_lines("coaction", c.coaction_plain)
    _write(path, out)


# ---------------------------------------------------------------------------
# bundles (.bnd)


def load_bundle(path, field, cache=None):
    r = _read(path)
    left_toks = r.take("left")
    right_toks = r.take("right")
    if len(left_toks) != 2 or len(right_toks) != 2:
        r.fail("left and right lines each take one file reference")
    hl = load_hopf_algebroid(_resolve(path, left_toks[1].text), field, cache)
    hr = load_hopf_algebroid(_resolve(path, right_toks[1].text), field, cache)
    head = r.take("begin")
    if head[-1].text != "carrier":
        r.fail("carrier block must open with 'begin carrier'", head[0])
    carrier = _wrap_semantic(
        path, "carrier algebra", lambda: FinAlgebra(field, *_algebra_body(r, field, end_at="end"))
    )
    blocks = _named_blocks(r, field, ("alpha", "beta", "lam", "rho"), path)
    return _wrap_semantic(
        path,
        "bundle",
        lambda: bicomodule_algebra(
            hl,
            hr,
            carrier,
            AlgMorphism(hl.base, carrier, blocks["alpha"]),
            AlgMorphism(hr.base, carrier, blocks["beta"]),
            blocks["lam"],
            blocks["rho"],
        ),
    )


def save_bundle(p, path, left_ref, right_ref):
    alg = p.algebra if hasattr(p, "algebra") else p
    out = ["left %s" % left_ref, "right %s" % right_ref, "begin carrier"]
    out += _algebra_lines(alg.carrier)
    out.append("end")
    out += _matrix_lines("alpha", alg.alpha.matrix)
    out += _matrix_lines("beta", alg.beta.matrix)
    out += _matrix_lines("lam", alg.left.coaction_plain)
    out += _matrix_lines("rho", alg.right.coaction_plain)
    _write(path, out)


def _write(path, lines):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


LOADERS = {
    ".gpd": lambda path, field, cache=None: load_groupoid(path),
    ".alg": lambda path, field, cache=None: load_algebra(path, field),
    ".halg": load_hopf_algebroid,
    ".hmor": load_hopf_morphism,
    ".cmd": load_comodule,
    ".bnd": load_bundle,
}


def load_any(path, field, cache=None):
    """Dispatch on the file extension."""
    _, ext = os.path.splitext(path)
    if ext not in LOADERS:
        raise FormatError("%s: unknown file extension '%s'" % (path, ext))
    return LOADERS[ext](path, field, cache)
