"""``qrep`` command line.

Exit codes: 0 success, 1 computation error, 2 parse or usage error,
3 verdict mismatch in ``paper-demo``.
"""
from __future__ import annotations

import json
import sys

import click

from ..ar_theory import knit_ar_quiver, standard_label, tau, tau_inv
from ..cluster_tilting import check_via_endo, check_via_list
from ..endomorphism import basic_presentation, endo_algebra
from ..errors import ParseError, QrepError
from ..homology import (
    complexity_report,
    dominant_dimension,
    ext_dim,
    global_dimension,
    min_proj_resolution,
)
from ..representations import decompose, hom_dim, regular_module, simple
from ..representations import dual_regular_module, direct_sum
from .formats import parse_field
from .workspace import Workspace

EXIT_OK, EXIT_COMPUTE, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class DemoMismatch(Exception):
    pass


def _workspace(ctx, alg=None) -> Workspace:
    o = ctx.obj
    if "ws" not in o or alg is not None:
        field = None
        if o.get("field"):
            try:
                field = parse_field(o["field"])
            except ValueError as e:
                raise ParseError(str(e)) from None
        o["ws"] = Workspace.load(alg or o.get("alg"), field, o.get("modules", ()))
    return o["ws"]


def _emit(ws: Workspace, command: str, result: dict, text: str, fmt: str, dot: str | None = None):
    if fmt == "json":
        doc = {
            "command": command,
            "algebra": {"source": ws.source, "dimension": ws.algebra.dim, "field": ws.field.label},
            "result": result,
        }
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    elif fmt == "dot":
        if dot is None:
            raise click.UsageError(f"--format dot is not available for {command}")
        click.echo(dot, nl=False)
    else:
        click.echo(text)


def _fmt_option(*choices):
    return click.option("--format", "fmt", type=click.Choice(("text",) + choices), default="text",
                        show_default=True, help="Output format.")


def _summands(rep):
    out = []
    for s in decompose(rep).summands:
        out.append({"label": standard_label(s.module) or "?", "dims": list(s.module.dims),
                    "multiplicity": s.multiplicity})
    return out


def _summand_text(items) -> str:
    if not items:
        return "0"
    return " + ".join(f"{d['label']}" + (f"^{d['multiplicity']}" if d["multiplicity"] > 1 else "") for d in items)


@click.group()
@click.option("--alg", "alg", metavar="FILE", help="Algebra file (.alg); defaults to the bundled paper_A.alg.")
@click.option("--field", "field", metavar="FIELD", help="Override the base field, e.g. Q or f5.")
@click.option("--module", "modules", metavar="FILE", multiple=True, help="Module file(s) (.rep) to load.")
@click.pass_context
def cli(ctx, alg, field, modules):
    """Computations with bound quiver algebras and their modules."""
    ctx.ensure_object(dict)
    ctx.obj.update(alg=alg, field=field, modules=modules)


@cli.command()
@_fmt_option("json")
@click.pass_context
def basis(ctx, fmt):
    """Path basis of the algebra."""
    ws = _workspace(ctx)
    a = ws.algebra
    labels = [a.basis_label(i) for i in range(a.dim)]
    result = {"dimension": a.dim, "nilpotency": a.nilpotency, "basis": labels}
    text = f"dimension {a.dim}, J^{a.nilpotency} = 0\n" + "\n".join(labels)
    _emit(ws, "basis", result, text, fmt)


@cli.command()
@_fmt_option("json")
@click.pass_context
def modules(ctx, fmt):
    """Dimension vectors of the simple, projective and injective modules."""
    ws = _workspace(ctx)
    a = ws.algebra
    rows = []
    for v in a.vertices:
        for name in (f"S{v}", f"P{v}", f"I{v}"):
            rows.append({"name": name, "dims": list(ws.module(name).dims)})
    for name, rep in ws.modules.items():
        rows.append({"name": name, "dims": list(rep.dims)})
    text = "\n".join(f"{r['name']:>6}  {' '.join(map(str, r['dims']))}" for r in rows)
    _emit(ws, "modules", {"modules": rows}, text, fmt)


@cli.command()
@click.argument("x")
@click.argument("y")
@_fmt_option("json")
@click.pass_context
def hom(ctx, x, y, fmt):
    """dim Hom(X, Y)."""
    ws = _workspace(ctx)
    d = hom_dim(ws.module(x), ws.module(y))
    _emit(ws, "hom", {"dimension": d}, str(d), fmt)


@cli.command()
@click.argument("x")
@click.argument("steps", type=int)
@_fmt_option("json")
@click.pass_context
def resolve(ctx, x, steps, fmt):
    """Minimal projective resolution of X up to term STEPS."""
    ws = _workspace(ctx)
    if steps < 0:
        raise ParseError("STEPS must be >= 0")
    res = min_proj_resolution(ws.module(x), steps)
    terms = [list(p.generators) for p in res.terms]
    problems = res.check()
    result = {"term_dims": res.term_dims(), "terms": terms, "problems": problems}
    lines = []
    for n, (d, g) in enumerate(zip(res.term_dims(), terms)):
        body = " + ".join(f"P{v}" for v in g) or "0"
        lines.append(f"P_{n}: {body}  (dim {d})")
    if problems:
        lines.append("problems: " + "; ".join(problems))
    _emit(ws, "resolve", result, "\n".join(lines), fmt)


@cli.command()
@click.argument("i", type=int)
@click.argument("x")
@click.argument("y")
@_fmt_option("json")
@click.pass_context
def ext(ctx, i, x, y, fmt):
    """dim Ext^I(X, Y)."""
    ws = _workspace(ctx)
    if i < 1:
        raise ParseError("Ext degree must be >= 1")
    d = ext_dim(i, ws.module(x), ws.module(y))
    _emit(ws, "ext", {"dimension": d}, str(d), fmt)


def _translate(ctx, x, fmt, inverse):
    ws = _workspace(ctx)
    rep = (tau_inv if inverse else tau)(ws.module(x))
    items = _summands(rep)
    result = {"dims": list(rep.dims), "summands": items}
    _emit(ws, "tau-inv" if inverse else "tau", result, _summand_text(items), fmt)


@cli.command("tau")
@click.argument("x")
@_fmt_option("json")
@click.pass_context
def tau_cmd(ctx, x, fmt):
    """AR translate of X."""
    _translate(ctx, x, fmt, False)


@cli.command("tau-inv")
@click.argument("x")
@_fmt_option("json")
@click.pass_context
def tau_inv_cmd(ctx, x, fmt):
    """Inverse AR translate of X."""
    _translate(ctx, x, fmt, True)


def _ar_text(ar) -> str:
    lines = [f"{len(ar.vertices)} indecomposables, {ar.arrow_count} arrows, "
             f"{'complete' if ar.complete else 'incomplete'}"]
    for i, lab in enumerate(ar.labels):
        lines.append(f"  {lab}: dims {' '.join(map(str, ar.vertices[i].dims))}")
    for (i, j), k in sorted(ar.arrows.items()):
        lines.append(f"  {ar.labels[i]} -> {ar.labels[j]}" + (f" (x{k})" if k > 1 else ""))
    for i, j in sorted(ar.tau.items()):
        lines.append(f"  tau {ar.labels[i]} = {ar.labels[j]}")
    return "\n".join(lines)


@cli.command("ar-knit")
@_fmt_option("json", "dot")
@click.pass_context
def ar_knit(ctx, fmt):
    """Knit the Auslander-Reiten quiver."""
    ws = _workspace(ctx)
    ar = knit_ar_quiver(ws.algebra, ws.caps.knit)
    _emit(ws, "ar-knit", ar.to_json(), _ar_text(ar), fmt, ar.to_dot())


@cli.command("cluster-check")
@click.option("--mode", type=click.Choice(["list", "endo"]), default="list", show_default=True)
@click.option("--n", "n", type=int, default=2, show_default=True)
@click.argument("m")
@_fmt_option("json")
@click.pass_context
def cluster_check(ctx, mode, n, m, fmt):
    """Is M an n-cluster tilting module?"""
    ws = _workspace(ctx)
    mod = ws.module(m)
    if mode == "list":
        ar = knit_ar_quiver(ws.algebra, ws.caps.knit)
        if not ar.complete:
            raise QrepError("AR quiver is incomplete; list mode needs every indecomposable")
        verdict = check_via_list(ws.algebra, mod, n, ar.vertices)
    else:
        verdict = check_via_endo(ws.algebra, mod, n, ws.caps.resolution)
    _emit(ws, "cluster-check", verdict.to_json(), str(verdict), fmt)


@cli.command()
@click.argument("m")
@_fmt_option("json", "dot")
@click.pass_context
def endo(ctx, m, fmt):
    """Quiver with relations of End(M)."""
    ws = _workspace(ctx)
    pres = basic_presentation(endo_algebra(ws.module(m)))
    _emit(ws, "endo", pres.to_json(), pres.to_alg().rstrip("\n"), fmt, pres.to_dot())


@cli.command()
@_fmt_option("json")
@click.pass_context
def gldim(ctx, fmt):
    """Global dimension."""
    ws = _workspace(ctx)
    d = global_dimension(ws.algebra, ws.caps.resolution)
    _emit(ws, "gldim", d.to_json(), str(d), fmt)


@cli.command()
@_fmt_option("json")
@click.pass_context
def domdim(ctx, fmt):
    """Dominant dimension."""
    ws = _workspace(ctx)
    d = dominant_dimension(ws.algebra, ws.caps.resolution)
    _emit(ws, "domdim", d.to_json(), str(d), fmt)


@cli.command()
@click.argument("x")
@click.argument("window", type=int)
@_fmt_option("json")
@click.pass_context
def complexity(ctx, x, window, fmt):
    """Growth of the minimal projective resolution of X over WINDOW steps."""
    ws = _workspace(ctx)
    if window < 1:
        raise ParseError("WINDOW must be >= 1")
    v = complexity_report(ws.module(x), window)
    text = f"{v}\ndim P_n: {' '.join(map(str, v.term_dims[:12]))}" + (" ..." if len(v.term_dims) > 12 else "")
    _emit(ws, "complexity", v.to_json(), text, fmt)


def run_demo(ws: Workspace) -> tuple[bool, dict, list[str]]:
    """Certify A + D(A) as 2-cluster tilting both ways and find a simple of infinite complexity."""
    a = ws.algebra
    m = direct_sum([regular_module(a), dual_regular_module(a)])[0].renamed("M")
    ar = knit_ar_quiver(a, ws.caps.knit)
    lines = [f"algebra: {ws.source} (dimension {a.dim}, field {ws.field.label})",
             f"AR quiver: {len(ar.vertices)} indecomposables, {ar.arrow_count} arrows, "
             f"{'complete' if ar.complete else 'incomplete'}"]
    via_list = check_via_list(a, m, 2, ar.vertices) if ar.complete else None
    lines.append("list mode: " + ("skipped (incomplete AR quiver)" if via_list is None else str(via_list)))
    try:
        via_endo = check_via_endo(a, m, 2, ws.caps.resolution)
        lines.append("endo mode: " + str(via_endo))
    except QrepError as e:
        via_endo = None
        lines.append(f"endo mode: failed ({type(e).__name__}: {e})")
    reports = {}
    best = None
    for v in a.vertices:
        r = complexity_report(simple(a, v), ws.caps.resolution)
        reports[f"S{v}"] = r
        lines.append(f"cx(S{v}): {r}")
        if r.kind == "infinite_certified" and r.lower_bound_verified:
            key = (r.a + r.p, r.a, v)
            if best is None or key < best[0]:
                best = (key, v)
    both = bool(via_list) and bool(via_endo)
    ok = both and best is not None
    if ok:
        lines.append(f"verdict: M = A + D(A) is 2-cluster tilting (certified by BOTH modes); "
                     f"S{best[1]} has infinite complexity {reports[f'S{best[1]}']}")
    else:
        lines.append("verdict: MISMATCH")
    result = {
        "ar_quiver": {"vertices": len(ar.vertices), "arrows": ar.arrow_count, "complete": ar.complete},
        "via_list": via_list.to_json() if via_list is not None else None,
        "via_endo": via_endo.to_json() if via_endo is not None else None,
        "complexity": {k: r.to_json() for k, r in reports.items()},
        "witness": f"S{best[1]}" if best else None,
        "ok": ok,
    }
    return ok, result, lines


@cli.command("paper-demo")
@click.argument("alg", required=False)
@_fmt_option("json")
@click.pass_context
def demo(ctx, alg, fmt):
    """End-to-end certificate: 2-cluster tilting module plus a simple of infinite complexity."""
    ws = _workspace(ctx, alg)
    ok, result, lines = run_demo(ws)
    _emit(ws, "paper-demo", result, "\n".join(lines), fmt)
    if not ok:
        raise DemoMismatch("paper-demo verdict mismatch")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="qrep", standalone_mode=False, obj={})
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return EXIT_PARSE
    except click.Abort:
        return EXIT_COMPUTE
    except ParseError as e:
        click.echo(f"parse error: {e}", err=True)
        return EXIT_PARSE
    except DemoMismatch as e:
        click.echo(str(e), err=True)
        return EXIT_MISMATCH
    except (QrepError, ValueError, ZeroDivisionError) as e:
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        return EXIT_COMPUTE
    return EXIT_OK


def entry() -> None:
    sys.exit(main())
