"""Command line entry point: ``tlk <command> ...``.

Exit codes: 0 when the queried property holds, 1 when it fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import formulas as fm
from . import papercheck as pc
from .catalog import (
    KINDS,
    classify_bs222,
    classify_s43,
    is_c_irreducible,
    make,
    preskeleton,
    pretabularity_report,
)
from .enumeration import EnumSpec, enumerate_frames
from .frames import (
    CLOSED,
    NONE,
    FrameError,
    close,
    dumps,
    frame_to_dict,
    is_skeleton,
    metrics,
    read_frame,
    to_dot,
    write_frame,
    zigzag_ball,
)
from .jankov import jankov
from .morphisms import (
    check_k_t_morphism,
    check_tmorphism,
    enumerate_images,
    find_k_t_morphism,
    find_tmorphism_onto,
    isomorphic,
)
from .semantics import BudgetExceeded, check_at, check_omega, check_valid, omega_lambda
from .sequences import BitSeq, all_embeddings, dissimilarity_witness, embeds, gtm
from .umbrella import umbrella, umbrella_check

OK, FAIL, INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj):
    print(json.dumps(obj, indent=1, default=_jsonable))


def _jsonable(o):
    if hasattr(o, "succ"):
        return frame_to_dict(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, BitSeq):
        return str(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _param(text):
    try:
        return int(text)
    except ValueError:
        return text


def _formula(text):
    return fm.parse(text)


# frame


def cmd_frame(a):
    F = read_frame(a.frame)
    if a.close:
        F = close(F)
    out = frame_to_dict(F)
    if F.is_closed:
        m = metrics(F)
        out["metrics"] = m.as_dict()
        out["skeleton"] = is_skeleton(F)
    if a.ball:
        x, n = a.ball
        out["ball"] = zigzag_ball(F, x, n if n == "omega" else int(n))
    if a.plot:
        from .plotting import draw_frame, save

        save(draw_frame(F, title=os.path.basename(a.frame)), a.plot)
    _emit(out)
    return OK


# check


def cmd_check(a):
    F = read_frame(a.frame)
    phi = _formula(a.formula)
    if a.omega:
        if a.root is None:
            raise InputError("--omega needs --root")
        v = check_omega(F, a.root, phi, a.budget, a.lam)
        where = {"omega_root": a.root, "lambda": a.lam or omega_lambda(len(fm.variables(phi)))}
    elif a.at is not None:
        v = check_at(F, a.at, phi, a.budget)
        where = {"at": a.at}
    else:
        v = check_valid(F, phi, a.budget)
        where = {"valid": True}
    out = {"formula": fm.render(phi), **where, "holds": v.holds}
    if not v.holds:
        out["counter_valuation"] = v.counter
    _emit(out)
    return OK if v.holds else FAIL


# morphism


def _mapping(text):
    """Inline JSON object or a path to one."""
    if not text.lstrip().startswith("{"):
        with open(text) as fh:
            text = fh.read()
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed map JSON: {e.msg}") from None
    if not isinstance(mapping, dict):
        raise InputError("map must be a JSON object")
    return mapping


def cmd_morphism(a):
    F, G = read_frame(a.source), read_frame(a.target)
    if a.action == "check":
        mapping = _mapping(a.map)
        if a.k:
            ok = check_k_t_morphism(F, a.root, G, a.target_root, a.k, mapping)
            _emit({"k_t_morphism": ok})
            return OK if ok else FAIL
        bad = check_tmorphism(F, G, mapping)
        _emit({"t_morphism": bad is None, "violation": None if bad is None else vars(bad)})
        return OK if bad is None else FAIL
    if a.iso:
        w = isomorphic(F, G)
    elif a.k:
        if a.root is None or a.target_root is None:
            raise InputError("--k needs --root and --target-root")
        f = find_k_t_morphism(F, a.root, G, a.target_root, a.k)
        w = None if f is None else f.mapping
    else:
        w = find_tmorphism_onto(F, G)
    _emit(w)
    return OK if w is not None else FAIL


def cmd_images(a):
    F = read_frame(a.frame)
    imgs = enumerate_images(F, cap=a.cap)
    _emit([{"image": frame_to_dict(G), "map": q} for G, q in imgs])
    return OK


# jankov


def cmd_jankov(a):
    G = read_frame(a.frame)
    phi = jankov(G, a.root, a.degree)
    print(fm.render(fm.Not(phi) if a.negate else phi))
    return OK


# catalog and classification


def cmd_catalog(a):
    if a.action == "make":
        F = make(a.kind, *map(_param, a.params))
    else:
        F = preskeleton(read_frame(a.frame), a.mark, a.lam)
    if a.out:
        write_frame(F, a.out)
    else:
        print(dumps(F))
    return OK


def cmd_classify(a):
    F = read_frame(a.frame)
    c = classify_s43(F) if a.logic == "s43" else classify_bs222(F)
    _emit({"class": str(c), "family": c.family, "param": c.param, "reason": c.reason,
           "matches": list(c.matches)})
    return OK if c.applicable else FAIL


def cmd_pretab(a):
    F = read_frame(a.frame)
    r = pretabularity_report(F, a.mark)
    _emit(r)
    return OK if r.get("c_irreducible") else FAIL


def cmd_irreducible(a):
    r = is_c_irreducible(read_frame(a.frame), a.mark)
    _emit({"c_irreducible": r.answer, "images": r.images, "witness": r.witness})
    return OK if r.answer else FAIL


# enumerate


def cmd_enumerate(a):
    bounds = {k: v for k, v in (("dep", a.dep), ("widF", a.widf), ("widB", a.widb), ("zdg", a.zdg)) if v is not None}
    if a.skeleton:
        bounds["gir"] = 1
    spec = EnumSpec(a.max, bounds, a.rooted, NONE if a.plain else CLOSED)
    count = 0
    for F in enumerate_frames(spec):
        count += 1
        if not a.count:
            print(dumps(F))
    if a.count:
        print(count)
    return OK


# sequences


def _pad(bits, n):
    return bits + bits[-1] * max(0, n - len(bits))


def cmd_seq(a):
    if a.action == "gtm":
        chi = gtm(a.bits, a.stage)
        if a.format == "json":
            _emit({"anchor": chi.anchor, "bits": chi.text(), "length": len(chi)})
        else:
            print(chi.text())
        return OK
    if a.action == "embed":
        gamma, beta = BitSeq.parse(a.needle), BitSeq.parse(a.hay)
        t = embeds(gamma, beta)
        _emit({"shift": t, "all": all_embeddings(gamma, beta)})
        return OK if t is not None else FAIL
    if not a.f or not a.g:
        raise InputError("--f and --g must be nonempty")
    diff = next((i for i, (x, y) in enumerate(zip(a.f, a.g)) if x != y), None)
    if diff is None:
        raise InputError("control prefixes agree on their common length")
    # the witness reads two stages beyond the first difference
    need = diff + 4
    d = dissimilarity_witness(_pad(a.f, need), _pad(a.g, need), diff + 1)
    _emit({"index": d.index, "witness": str(d.witness), "window": str(d.window), "verified": d.verified})
    return OK if d.verified else FAIL


# umbrella


def cmd_umbrella(a):
    Z = umbrella(BitSeq.parse(a.bits))
    if a.out:
        write_frame(Z.frame, a.out)
    if a.dot:
        with open(a.dot, "w") as fh:
            fh.write(to_dot(Z.frame, f"Z_{a.bits}"))
    if a.plot:
        from .plotting import draw_frame, save

        save(draw_frame(Z.frame, title=f"umbrella {a.bits}"), a.plot)
    report = umbrella_check(Z, semantic=a.semantic, budget=a.budget)
    report["points"] = len(Z.frame)
    _emit(report)
    return OK if report["ok"] else FAIL


# papercheck


def _write_report(report, outdir):
    from . import plotting

    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "report.json"), "w") as fh:
        json.dump(report, fh, indent=1, default=_jsonable)
    with open(os.path.join(outdir, "cases.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "name", "status", "seconds", "claim"])
        for c in report["cases"]:
            w.writerow([c["id"], c["name"], c["status"], c["seconds"], c["claim"]])
    figs = [plotting.save(plotting.draw_timings(report), os.path.join(outdir, "timings.png"))]
    ids = {c["id"] for c in report["cases"]}
    if 4 in ids:
        import matplotlib.pyplot as plt

        fig, (l, r) = plt.subplots(1, 2, figsize=(7, 3.5))
        plotting.draw_frame(make("F1"), l, "five-point figure frame")
        plotting.draw_frame(make("F2"), r, "four-point figure frame")
        figs.append(plotting.save(l, os.path.join(outdir, "figure_frames.png")))
    if 10 in ids:
        rows = {f"f=00 stage {i}": gtm("00", i) for i in range(3)}
        rows.update({f"g=11 stage {i}": gtm("11", i) for i in range(3)})
        figs.append(plotting.save(plotting.draw_bits(rows, title="generalized Thue-Morse stages"),
                                  os.path.join(outdir, "gtm.png")))
    if 13 in ids:
        figs.append(plotting.save(plotting.draw_frame(umbrella("01").frame, title="umbrella 01"),
                                  os.path.join(outdir, "umbrella_01.png")))
    return figs


def cmd_papercheck(a):
    if a.suite not in pc.SUITES:
        raise InputError(f"unknown suite {a.suite!r}; expected one of {', '.join(pc.SUITES)}")
    if a.case:
        cases = [pc.run_case(a.case, a.seed).as_dict()]
        report = {"suite": f"case {a.case}", "seed": a.seed, "cases": cases,
                  "totals": {"cases": 1, "passed": int(cases[0]["status"] == "pass"),
                             "failed": int(cases[0]["status"] != "pass")}}
    else:
        report = pc.run_suite(a.suite, a.seed, a.workers)
    for c in report["cases"]:
        print(f"{c['id']}\t{c['status'].upper()}\t{c['seconds']:.2f}s\t{c['name']}")
    t = report["totals"]
    print(f"# {t['passed']}/{t['cases']} passed")
    if a.out:
        for path in _write_report(report, a.out):
            print(f"# wrote {path}")
    if a.json:
        _emit(report)
    return OK if t["failed"] == 0 else FAIL


# export


def cmd_export(a):
    F = read_frame(a.frame)
    if a.format == "png":
        if not a.out:
            raise InputError("png export needs --out")
        from .plotting import draw_frame, save

        save(draw_frame(F), a.out)
        return OK
    text = to_dot(F, a.name) if a.format == "dot" else json.dumps(frame_to_dict(F), indent=1) + "\n"
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def _budget(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("budget must be non-negative")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="tlk", description="Finite tense-logic frames: checking, morphisms, catalogs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("frame", help="show a frame with its metrics")
    s.add_argument("frame")
    s.add_argument("--close", action="store_true", help="take the reflexive-transitive closure first")
    s.add_argument("--ball", nargs=2, metavar=("POINT", "N"), help="zigzag ball of radius N (or omega)")
    s.add_argument("--plot", metavar="PNG")
    s.set_defaults(fn=cmd_frame)

    s = sub.add_parser("check", help="model-check a formula")
    s.add_argument("--frame", required=True)
    s.add_argument("--formula", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--at", metavar="POINT")
    g.add_argument("--valid", action="store_true")
    g.add_argument("--omega", action="store_true")
    s.add_argument("--root", help="marked point for --omega")
    s.add_argument("--lambda", dest="lam", type=int, help="cluster size override for --omega")
    s.add_argument("--budget", type=_budget, help="valuation bits allowed (default TLK_BUDGET or 24)")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("morphism", help="find or check t-morphisms")
    msub = s.add_subparsers(dest="action", required=True)
    for name in ("find", "check"):
        m = msub.add_parser(name)
        m.add_argument("--from", dest="source", required=True)
        m.add_argument("--to", dest="target", required=True)
        m.add_argument("--k", type=int)
        m.add_argument("--root")
        m.add_argument("--target-root")
        if name == "find":
            g = m.add_mutually_exclusive_group()
            g.add_argument("--onto", action="store_true", help="surjective t-morphism (default)")
            g.add_argument("--iso", action="store_true")
        else:
            m.add_argument("--map", required=True, help="JSON object point -> point, inline or a file path")
        m.set_defaults(fn=cmd_morphism)
    m = msub.add_parser("images", help="t-morphic images up to isomorphism")
    m.add_argument("--frame", required=True)
    m.add_argument("--cap", type=int, default=12)
    m.set_defaults(fn=cmd_images)

    s = sub.add_parser("jankov", help="print a Jankov formula")
    s.add_argument("--frame", required=True)
    s.add_argument("--root", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--negate", action="store_true")
    s.set_defaults(fn=cmd_jankov)

    s = sub.add_parser("catalog", help="build catalog frames")
    csub = s.add_subparsers(dest="action", required=True)
    c = csub.add_parser("make")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("params", nargs="*")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_catalog)
    c = csub.add_parser("preskeleton")
    c.add_argument("--frame", required=True)
    c.add_argument("--mark", required=True)
    c.add_argument("--lambda", dest="lam", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_catalog)
    c = csub.add_parser("irreducible", help="decide c-irreducibility of a marked skeleton")
    c.add_argument("--frame", required=True)
    c.add_argument("--mark", required=True)
    c.set_defaults(fn=cmd_irreducible)

    s = sub.add_parser("classify", help="classify a frame within a logic's frame shapes")
    s.add_argument("--frame", required=True)
    s.add_argument("--logic", choices=("s43", "bs222"), default="bs222")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("pretab", help="pretabularity report for a marked rooted skeleton")
    s.add_argument("--frame", required=True)
    s.add_argument("--mark", required=True)
    s.set_defaults(fn=cmd_pretab)

    s = sub.add_parser("enumerate", help="small frames up to isomorphism, one JSON per line")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--dep", type=int)
    s.add_argument("--widf", type=int)
    s.add_argument("--widb", type=int)
    s.add_argument("--zdg", type=int)
    s.add_argument("--rooted", action="store_true")
    s.add_argument("--skeleton", action="store_true")
    s.add_argument("--plain", action="store_true", help="arbitrary relations instead of closed ones")
    s.add_argument("--count", action="store_true")
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("seq", help="binary sequences")
    qsub = s.add_subparsers(dest="action", required=True)
    q = qsub.add_parser("gtm")
    q.add_argument("--bits", required=True)
    q.add_argument("--stage", type=int, required=True)
    q.add_argument("--format", choices=("bits", "json"), default="bits")
    q.set_defaults(fn=cmd_seq)
    q = qsub.add_parser("embed")
    q.add_argument("--needle", required=True, help="bits[@anchor]")
    q.add_argument("--hay", required=True, help="bits[@anchor]")
    q.set_defaults(fn=cmd_seq)
    q = qsub.add_parser("witness")
    q.add_argument("--f", required=True)
    q.add_argument("--g", required=True)
    q.set_defaults(fn=cmd_seq)

    s = sub.add_parser("umbrella", help="build and check an umbrella frame")
    s.add_argument("--bits", required=True)
    s.add_argument("--out")
    s.add_argument("--dot")
    s.add_argument("--plot", metavar="PNG")
    s.add_argument("--semantic", action="store_true", help="also model-check the cell axioms")
    s.add_argument("--budget", type=_budget)
    s.set_defaults(fn=cmd_umbrella)

    s = sub.add_parser("papercheck", help="run verification suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--case", type=int, choices=sorted(pc.CASES))
    s.add_argument("--seed", type=int, default=pc.DEFAULT_SEED)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", metavar="DIR", help="write report.json, cases.csv and figures here")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_papercheck)

    s = sub.add_parser("export", help="export a frame as DOT, JSON or PNG")
    s.add_argument("--frame", required=True)
    s.add_argument("--format", choices=("dot", "json", "png"), default="dot")
    s.add_argument("--name", default="F")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_export)
    return p


def main(argv=None):
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        return a.fn(a)
    except (InputError, FrameError, fm.FormulaSyntaxError, ValueError, KeyError, TypeError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"tlk: error: {msg}", file=sys.stderr)
        return INPUT
    except BudgetExceeded as e:
        print(f"tlk: error: {e} (raise TLK_BUDGET or --budget)", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
