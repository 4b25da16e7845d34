"""Command line front end.

Reads the plain-text fixture formats, runs the named verifiers, and
emits the same record stream as text or as versioned JSON.  The JSON
rendering is byte-identical across runs for identical inputs and
flags: keys are sorted, no timings or absolute paths enter the
payload, and suites are assembled in name order.

Exit codes: 0 when every check passes, 1 when a verification fails,
2 for unusable input (bad flags, parse errors, mismatched objects).
The default field is `q`; set HOPFBUNDLES_FIELD or pass --field to
pick another (`fp:<p>` for a prime field).
"""

import argparse
import json
import os
import sys

from . import corpus as corpus_mod
from .bundles import (
    BundleError,
    PrincipalBundle,
    verify_bicomodule_algebra,
    verify_principal,
    verify_translation_identities,
)
from .comod import regular_comodule, unit_comodule
from .exactlin import ScalarFieldError, field_by_name
from .formats import (
    FormatError,
    load_bundle,
    load_comodule,
    load_groupoid,
    load_hopf_algebroid,
    load_hopf_morphism,
    save_bundle,
    save_comodule,
    save_groupoid,
    save_hopf_algebroid,
    save_hopf_morphism,
)
from .groupoidlab import discrete_groupoid, dualize, verify_groupoid
from .hopfcore import verify_hopf_algebroid, verify_hopf_morphism
from .morita import (
    compose_bundles,
    morita_witness,
    reconstruct_bundle,
    weak_equivalence_test,
    zigzag_complete,
)
from .report import Report

SCHEMA = "hopfbundles-report/1"
FIELD_ENV = "HOPFBUNDLES_FIELD"
SIDES = {"l": "left", "r": "right", "b": "both"}


class InputError(Exception):
    """Unusable input: maps to exit code 2."""


def _load(loader, path, field, cache):
    try:
        return loader(path, field, cache)
    except FormatError as e:
        raise InputError(str(e))


def _upgrade(alg, path, side="both"):
    """Verify principality for a loaded bundle; a failure is a result,
    not an input error, so the failing report comes back as-is."""
    out = verify_principal(alg, side=side)
    if isinstance(out, Report):
        rep = Report("bundle %s" % os.path.basename(path))
        rep.merge(verify_bicomodule_algebra(alg))
        rep.merge(out)
        return None, rep
    return out, out.report


# ---------------------------------------------------------------------------
# command handlers: each returns (suites, extras) where suites is a
# list of (name, Report) pairs


def cmd_verify(args, field, cache):
    path = args.path
    if args.kind == "hopf":
        h = _load(load_hopf_algebroid, path, field, cache)
        rep = verify_hopf_algebroid(h, verbose=args.verbose)
        return [("hopf", rep)], {"base_dim": h.base.dim, "total_dim": h.total.dim}
    alg = _load(load_bundle, path, field, cache)
    if args.kind == "bundle":
        side = SIDES[args.side]
        rep = Report("bundle %s (%s)" % (os.path.basename(path), side))
        rep.merge(verify_bicomodule_algebra(alg, verbose=args.verbose))
        out = verify_principal(alg, side=side, verbose=args.verbose)
        rep.merge(out if isinstance(out, Report) else out.report)
        return [("bundle", rep)], {"carrier_dim": alg.dim}
    # translation identities on whichever sides verify
    rep = Report("translation identities %s" % os.path.basename(path))
    bundle = None
    for side in ("both", "left", "right"):
        out = verify_principal(alg, side=side, verbose=args.verbose)
        if isinstance(out, PrincipalBundle):
            bundle = out
            if side != "both":
                rep.note("only the %s side is principal" % side)
            break
    if bundle is None:
        rep.merge(verify_principal(alg, side="both", verbose=args.verbose))
        return [("identities", rep)], {"carrier_dim": alg.dim}
    rep.merge(verify_translation_identities(bundle, verbose=args.verbose))
    return [("identities", rep)], {"carrier_dim": alg.dim}


def cmd_compose(args, field, cache):
    p_alg = _load(load_bundle, args.first, field, cache)
    q_alg = _load(load_bundle, args.second, field, cache)
    if p_alg.right.algebroid != q_alg.left.algebroid:
        raise InputError(
            "%s and %s share no middle algebroid to compose over" % (args.first, args.second)
        )
    suites = []
    p, rep_p = _upgrade(p_alg, args.first)
    suites.append(("first factor", rep_p))
    q, rep_q = _upgrade(q_alg, args.second)
    suites.append(("second factor", rep_q))
    if p is None or q is None:
        return suites, {}
    rep = Report("composite")
    try:
        comp = compose_bundles(p, q)
    except BundleError as e:
        rep.add("composite verifies", False, str(e).splitlines()[0])
        suites.append(("composite", rep))
        return suites, {}
    rep.merge(comp.report)
    suites.append(("composite", rep))
    extras = {"carrier_dim": comp.dim, "ambient_dim": comp.ambient.dim}
    if args.out:
        base = os.path.splitext(args.out)[0]
        left_path = base + ".left.halg"
        right_path = base + ".right.halg"
        save_hopf_algebroid(comp.algebra.left.algebroid, left_path)
        save_hopf_algebroid(comp.algebra.right.algebroid, right_path)
        save_bundle(comp, args.out, os.path.basename(left_path), os.path.basename(right_path))
        extras["written"] = [args.out, left_path, right_path]
    return suites, extras


def cmd_weakequiv(args, field, cache):
    fm = _load(load_hopf_morphism, args.path, field, cache)
    rep = verify_hopf_morphism(fm, verbose=args.verbose)
    v = weak_equivalence_test(fm, verbose=args.verbose)
    rep.merge(v.report)
    extras = {
        "verdict": "weak_equivalence" if v.ok else "not_weak_equivalence",
        "Phi_rank": v.rank,
        "Phi_dom": v.dom_dim,
        "Phi_cod": v.cod_dim,
    }
    return [("weakequiv", rep)], extras


def cmd_zigzag(args, field, cache):
    m1 = _load(load_hopf_morphism, args.first, field, cache)
    m2 = _load(load_hopf_morphism, args.second, field, cache)
    if m1.dom != m2.dom:
        raise InputError("%s and %s start at different algebroids" % (args.first, args.second))
    rep = Report("zig-zag completion")
    try:
        zz = zigzag_complete(m1, m2, verbose=args.verbose)
    except BundleError as e:
        rep.add("completion exists", False, str(e).splitlines()[0])
        return [("zigzag", rep)], {}
    rep.merge(zz.report)
    return [("zigzag", rep)], {"apex_total_dim": zz.apex.total.dim}


def cmd_morita(args, field, cache):
    alg = _load(load_bundle, args.path, field, cache)
    p, rep_p = _upgrade(alg, args.path)
    suites = [("bundle", rep_p)]
    if p is None:
        return suites, {}
    probes = None
    if args.probe:
        probes = []
        h = p.algebra.left.algebroid
        for probe_path in args.probe:
            m = _load(load_comodule, probe_path, field, cache)
            if m.side != "right" or m.algebroid != h:
                raise InputError(
                    "%s is not a right comodule over the bundle's left algebroid" % probe_path
                )
            probes.append((os.path.splitext(os.path.basename(probe_path))[0], m))
    rep = morita_witness(p, probes=probes, verbose=args.verbose)
    suites.append(("witness", rep))
    return suites, {"probes": [name for name, _ in probes] if probes else ["A", "H"]}


def cmd_reconstruct(args, field, cache):
    alg = _load(load_bundle, args.path, field, cache)
    p, rep_p = _upgrade(alg, args.path)
    suites = [("bundle", rep_p)]
    if p is None:
        return suites, {}
    rep = Report("reconstruction")
    try:
        out, iso, sub = reconstruct_bundle(p, verbose=args.verbose)
    except BundleError as e:
        rep.add("reconstruction verifies", False, str(e).splitlines()[0])
        suites.append(("reconstruction", rep))
        return suites, {}
    rep.merge(sub)
    suites.append(("reconstruction", rep))
    return suites, {"rebuilt_carrier_dim": out.dim}


def cmd_dualize(args, field, cache):
    g = _load(lambda p, f, c: load_groupoid(p), args.path, field, cache)
    rep = Report("dual of %s" % os.path.basename(args.path))
    rep.merge(verify_groupoid(g, verbose=args.verbose))
    h = dualize(g, field)
    rep.merge(verify_hopf_algebroid(h, verbose=args.verbose))
    extras = {"base_dim": h.base.dim, "total_dim": h.total.dim}
    if args.out:
        save_hopf_algebroid(h, args.out)
        extras["written"] = [args.out]
    return [("dualize", rep)], extras


def cmd_corpus(args, field, cache):
    if args.action == "run-all":
        return corpus_mod.run_all(field), {}
    if args.action == "list":
        extras = {
            "groupoids": list(corpus_mod.GROUPOID_NAMES),
            "morphisms": list(corpus_mod.MORPHISM_NAMES),
            "bundles": list(corpus_mod.BUNDLE_NAMES),
            "actions": list(corpus_mod.ACTION_NAMES),
            "suite_names": sorted(corpus_mod.SUITES),
        }
        return [], extras
    # write the fixture files
    outdir = args.dir
    if outdir is None:
        raise InputError("corpus write needs a target directory")
    os.makedirs(outdir, exist_ok=True)
    written = write_fixtures(outdir, field)
    return [], {"written": written}


def write_fixtures(outdir, field):
    """Every registry object as a fixture file; returns the paths."""
    c = corpus_mod.Corpus(field)
    written = []

    def emit(name, saver):
        path = os.path.join(outdir, name)
        saver(path)
        written.append(path)

    for name in corpus_mod.GROUPOID_NAMES:
        emit("%s.gpd" % name, lambda p, n=name: save_groupoid(c.groupoid(n), p))
        emit("%s.halg" % name, lambda p, n=name: save_hopf_algebroid(c.algebroid(n), p))
    d1 = dualize(discrete_groupoid(1), field)
    emit("d1.halg", lambda p: save_hopf_algebroid(d1, p))
    emit("incl.hmor", lambda p: save_hopf_morphism(c.morphism("incl"), p, "pr2.halg", "pt.halg"))
    emit("noneq.hmor", lambda p: save_hopf_morphism(c.morphism("noneq"), p, "d1.halg", "d2.halg"))
    refs = {
        "unit_pt": ("pt.halg", "pt.halg"),
        "unit_c2": ("c2.halg", "c2.halg"),
        "unit_pr2": ("pr2.halg", "pr2.halg"),
        "triv_incl": ("pr2.halg", "pt.halg"),
        "sqrt2": ("c2.halg", "c2.halg"),
    }
    for name in corpus_mod.BUNDLE_NAMES:
        left_ref, right_ref = refs[name]
        emit("%s.bnd" % name, lambda p, n=name: save_bundle(c.bundle(n), p, *refs[n]))
    hpr2 = c.algebroid("pr2")
    emit("unit_pr2.cmd", lambda p: save_comodule(unit_comodule(hpr2, "right"), p, "pr2.halg"))
    emit("reg_pr2.cmd", lambda p: save_comodule(regular_comodule(hpr2, "right"), p, "pr2.halg"))
    return written


# ---------------------------------------------------------------------------
# rendering


def _payload(command, field, inputs, suites, extras):
    payload = {
        "schema": SCHEMA,
        "command": command,
        "field": field.name,
        "inputs": list(inputs),
        "ok": all(rep.ok for _, rep in suites),
        "suites": [dict(rep.to_dict(), name=name) for name, rep in suites],
    }
    for key, value in extras.items():
        assert key not in payload, key
        payload[key] = value
    return payload


def _emit(payload, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    for suite in payload["suites"]:
        stream.write("=" * 72 + "\n")
        stream.write("%s :: %s\n" % (suite["name"], suite["title"]))
        for check in suite["checks"]:
            mark = "✓" if check["ok"] else "✗"
            line = "%s %s" % (mark, check["name"])
            if check["witness"]:
                line += ": " + check["witness"]
            stream.write(line + "\n")
        for note in suite["notes"]:
            stream.write("note: %s\n" % note)
    for key in sorted(payload):
        if key in ("schema", "command", "field", "inputs", "ok", "suites"):
            continue
        stream.write("%s: %s\n" % (key, payload[key]))
    n_checks = sum(len(s["checks"]) for s in payload["suites"])
    n_bad = sum(1 for s in payload["suites"] for c in s["checks"] if not c["ok"])
    stream.write(
        "RESULT: %s (%d checks, %d failures, field %s)\n"
        % ("PASS" if payload["ok"] else "FAIL", n_checks, n_bad, payload["field"])
    )


# ---------------------------------------------------------------------------
# argument surface


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--field",
        default=None,
        help="scalar field, q or fp:<p> (default: $%s, else q)" % FIELD_ENV,
    )
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hopfbundles",
        description="exact verification of Hopf algebroids, principal bundles, and their equivalences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run one verifier on one file")
    p.add_argument("kind", choices=("hopf", "bundle", "identities"))
    p.add_argument("path")
    p.add_argument("--side", choices=sorted(SIDES), default="b", help="bundle side to verify")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("compose", parents=[common], help="cotensor composite of two bundles")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", default=None, help="write the composite bundle here")
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("weakequiv", parents=[common], help="two-condition weak equivalence test")
    p.add_argument("path")
    p.set_defaults(handler=cmd_weakequiv)

    p = sub.add_parser("zigzag", parents=[common], help="complete two weak equivalences to a square")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_zigzag)

    p = sub.add_parser("morita", parents=[common], help="comodule equivalence witness of a bibundle")
    p.add_argument("path")
    p.add_argument("--probe", action="append", default=[], help="extra probe comodule (.cmd), repeatable")
    p.set_defaults(handler=cmd_morita)

    p = sub.add_parser("reconstruct", parents=[common], help="rebuild a bundle from its functor")
    p.add_argument("path")
    p.set_defaults(handler=cmd_reconstruct)

    p = sub.add_parser("corpus", parents=[common], help="pinned corpus operations")
    p.add_argument("action", choices=("run-all", "list", "write"))
    p.add_argument("dir", nargs="?", default=None, help="target directory for corpus write")
    p.set_defaults(handler=cmd_corpus)

    p = sub.add_parser("dualize", parents=[common], help="functions on a finite groupoid")
    p.add_argument("path")
    p.add_argument("--out", default=None, help="write the dual algebroid here")
    p.set_defaults(handler=cmd_dualize)
    return parser


def _input_paths(args):
    out = []
    for key in ("path", "first", "second"):
        if getattr(args, key, None):
            out.append(getattr(args, key))
    out.extend(getattr(args, "probe", []) or [])
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = field_by_name(args.field or os.environ.get(FIELD_ENV, "q"))
    except ScalarFieldError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    cache = {}
    try:
        suites, extras = args.handler(args, field, cache)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    payload = _payload(args.command, field, _input_paths(args), suites, extras)
    _emit(payload, args.format, sys.stdout)
    return 0 if payload["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
