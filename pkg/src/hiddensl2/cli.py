"""Command-line front end.

Exit codes: 0 = result produced / all checks pass, 1 = a check failed or the
input is mathematically degenerate, 2 = usage or parse error.
The default output format comes from ``HIDDENSL2_FORMAT`` (json if unset).
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .exactpoly import Poly, rat, rat_str
from .families import (
    FAMILY_NAMES,
    NonzeroRemainder,
    family_polynomial,
    hahn_factorization,
    preset_from_name,
    preset_to_json,
)
from .opalg import DIFFERENTIAL, HeisenbergRep
from .qes import InvarianceViolation, QesParams, invariant_block, qes_isospectral_check, qes_spectrum
from .sl2 import (
    Check,
    delta_reflection_check,
    explicit_difference_generators,
    sl2_generators,
    verify_relations,
)
from .solvable import (
    DegenerateSpectrum,
    SolvableParams,
    eigenpolys,
    isospectral_check,
    spectrum,
)

FORMAT_ENV = "HIDDENSL2_FORMAT"


class RationalType(click.ParamType):
    name = "rational"

    def __init__(self, nonzero: bool = False):
        self.nonzero = nonzero

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            q = value
        else:
            try:
                q = rat(str(value))
            except (ValueError, ZeroDivisionError):
                self.fail(f"{value!r} is not a rational of the form p/q", param, ctx)
        if self.nonzero and q == 0:
            self.fail(f"{param.name if param else 'value'} must be nonzero", param, ctx)
        return q


RAT = RationalType()
DELTA = RationalType(nonzero=True)


def _emit(ctx: click.Context, obj=None, text: str | None = None, code: int = 0):
    out = text if text is not None else json.dumps(obj, separators=(",", ":")) + "\n"
    path = ctx.obj.get("output") if ctx.obj else None
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        click.echo(out, nl=False)
    ctx.exit(code)


def _fmt(ctx: click.Context, allowed: tuple[str, ...]) -> str:
    fmt = ctx.obj["format"]
    if fmt not in allowed:
        raise click.UsageError(f"format {fmt!r} not supported here (choose from {', '.join(allowed)})")
    return fmt


def _store(ctx, param, value):
    if value is not None:
        ctx.ensure_object(dict)[param.name] = value
    return value


def output_options(f):
    """Per-subcommand ``--format`` / ``--output``, overriding the group-level ones."""
    f = click.option("--output", "-o", "output", type=click.Path(dir_okay=False, writable=True),
                     default=None, expose_value=False, callback=_store)(f)
    f = click.option("--format", "format", type=click.Choice(["json", "csv", "plain"]),
                     default=None, expose_value=False, callback=_store)(f)
    return f


def params_options(f):
    for name in ("A5", "A4", "A3", "A2", "A1"):
        f = click.option(f"--{name}", name.lower(), type=RAT, default="0", show_default=True)(f)
    f = click.option("--delta", type=DELTA, default="1", show_default=True)(f)
    return f


def _params(kw) -> SolvableParams:
    return SolvableParams(kw["a1"], kw["a2"], kw["a3"], kw["a4"], kw["a5"], kw["delta"])


def _rep(kind: str, delta: Fraction) -> HeisenbergRep:
    return HeisenbergRep.difference(delta) if kind == "difference" else DIFFERENTIAL


def family_options(f):
    for name in ("gamma", "nu", "mu", "beta", "alpha"):
        f = click.option(f"--{name}", name, type=RAT, default=None)(f)
    f = click.option("--N", "N", type=RAT, default=None)(f)
    f = click.option("--name", "name", type=click.Choice(FAMILY_NAMES), required=True)(f)
    return f


def _preset(name, kw):
    try:
        return preset_from_name(name, **{k: v for k, v in kw.items() if v is not None})
    except KeyError as exc:
        raise click.UsageError(f"family {name!r} needs --{exc.args[0]}")


def _parse_points(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise click.BadParameter("expected START:STOP[:STEP]", param_hint="--dump-points")
    try:
        start, stop = rat(parts[0]), rat(parts[1])
        step = rat(parts[2]) if len(parts) == 3 else Fraction(1)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"malformed range {text!r}", param_hint="--dump-points")
    if step <= 0 or stop < start:
        raise click.BadParameter("need STEP > 0 and STOP >= START", param_hint="--dump-points")
    xs, x = [], start
    while x <= stop:
        xs.append(x)
        x += step
    return xs


def _points(p: Poly, text: str | None):
    if text is None:
        return None
    return [[rat_str(x), rat_str(p(x))] for x in _parse_points(text)]


@click.group()
@click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "plain"]), envvar=FORMAT_ENV, default="json",
    show_default=True, help=f"Output format (env: {FORMAT_ENV}).",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None)
@click.pass_context
def main(ctx, fmt, output):
    """Exact sl2 operator algebra, spectra and polynomial eigenfunctions."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    ctx.obj["output"] = output


@main.command()
@click.option("--rep", type=click.Choice(["differential", "difference"]), default="difference", show_default=True)
@click.option("--delta", type=DELTA, default="1", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--deg", type=click.IntRange(min=0), default=20, show_default=True)
@output_options
@click.pass_context
def verify(ctx, rep, delta, n, deg):
    """Check [a,b]=1, the sl2 relations and the explicit shift triple."""
    fmt = _fmt(ctx, ("json", "plain"))
    if deg < n + 3:
        raise click.UsageError("--deg must be at least n + 3")
    r = _rep(rep, delta)
    report = verify_relations(n, r, deg)
    if r.is_difference:
        same = sl2_generators(0, r).same_operators(explicit_difference_generators(delta))
        report.checks.append(Check("explicit_shift_triple", same))
        report.checks.append(Check("delta_reflection", delta_reflection_check(delta)))
    code = 0 if report.passed else 1
    if fmt == "plain":
        lines = [f"{c.name}: {'pass' if c.passed else 'FAIL'}" for c in report.checks]
        _emit(ctx, text="\n".join(lines) + "\n", code=code)
    _emit(ctx, report.to_json(), code=code)


@main.command("spectrum")
@params_options
@click.option("--kmax", type=click.IntRange(min=0), required=True)
@output_options
@click.pass_context
def spectrum_cmd(ctx, kmax, **kw):
    """Eigenvalues A1 k^2/delta + A3 k + A5 for k = 0..kmax."""
    fmt = _fmt(ctx, ("json", "csv", "plain"))
    params = _params(kw)
    lams = spectrum(params, kmax)
    if fmt == "csv":
        _emit(ctx, text="k,lambda\n" + "".join(f"{k},{rat_str(v)}\n" for k, v in enumerate(lams)))
    if fmt == "plain":
        _emit(ctx, text="".join(f"lambda_{k} = {rat_str(v)}\n" for k, v in enumerate(lams)))
    _emit(ctx, {"params": params.to_json(), "spectrum": [rat_str(v) for v in lams]})


@main.command()
@params_options
@click.option("--rep", type=click.Choice(["differential", "difference"]), default="difference", show_default=True)
@click.option("--kmax", type=click.IntRange(min=0), required=True)
@output_options
@click.pass_context
def eigenpoly(ctx, rep, kmax, **kw):
    """Monic polynomial eigenfunctions of degree 0..kmax."""
    fmt = _fmt(ctx, ("json", "plain"))
    params = _params(kw)
    try:
        res = eigenpolys(params, _rep(rep, params.delta), kmax)
    except DegenerateSpectrum as exc:
        _emit(ctx, exc.to_json(), code=1)
    if fmt == "plain":
        _emit(ctx, text="".join(f"k={e.k} lambda={rat_str(e.eigenvalue)} p={e.poly}\n" for e in res.entries))
    _emit(ctx, res.to_json())


@main.command()
@family_options
@click.option("--k", "k", type=click.IntRange(min=0), required=True)
@click.option("--dump-points", default=None, metavar="START:STOP[:STEP]", help="Also emit x,f(x) pairs.")
@output_options
@click.pass_context
def family(ctx, name, k, dump_points, **kw):
    """Eigenpolynomial of a named family preset."""
    fmt = _fmt(ctx, ("json", "plain"))
    f = _preset(name, kw)
    try:
        poly, lam = family_polynomial(f, k)
    except DegenerateSpectrum as exc:
        _emit(ctx, exc.to_json(), code=1)
    out = {"k": k, "lambda": rat_str(lam), "poly": [rat_str(c) for c in poly.coeffs]}
    pts = _points(poly, dump_points)
    if pts is not None:
        out["points"] = pts
    if fmt == "plain":
        text = f"k={k} lambda={rat_str(lam)} p={poly}\n"
        if pts:
            text += "".join(f"{x},{y}\n" for x, y in pts)
        _emit(ctx, text=text)
    _emit(ctx, out)


@main.command()
@family_options
@click.option("--k", "k", type=click.IntRange(min=0), required=True)
@output_options
@click.pass_context
def factor(ctx, name, k, **kw):
    """Divide a higher Hahn eigenpolynomial (k >= N) by x^(N)."""
    _fmt(ctx, ("json",))
    if name not in ("hahn", "hahn-tilde"):
        raise click.UsageError("factor applies to --name hahn or hahn-tilde")
    f = _preset(name, kw)
    if f.N.denominator != 1 or f.N < 1:
        raise click.UsageError("--N must be a positive integer")
    if k < f.N:
        raise click.UsageError("--k must be at least N")
    base = {"family": preset_to_json(f), "k": k, "N": rat_str(f.N)}
    try:
        q = hahn_factorization(f, k)
    except DegenerateSpectrum as exc:
        _emit(ctx, exc.to_json(), code=1)
    except NonzeroRemainder as exc:
        base.update({"quotient": None, "remainder": [rat_str(c) for c in exc.remainder.coeffs]})
        _emit(ctx, base, code=1)
    base.update({"quotient": [rat_str(c) for c in q.coeffs], "remainder": []})
    _emit(ctx, base)


@main.command()
@params_options
@click.option("--kmax", type=click.IntRange(min=0), required=True)
@output_options
@click.pass_context
def isospectral(ctx, kmax, **kw):
    """Compare diagonals of the three-point and third-order differential operators."""
    _fmt(ctx, ("json",))
    report = isospectral_check(_params(kw), kmax)
    _emit(ctx, report.to_json(), code=0 if report.passed else 1)


@main.command()
@params_options
@click.option("--Aplus", "aplus", type=RAT, default="0", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@output_options
@click.pass_context
def qes(ctx, aplus, n, **kw):
    """Invariant block, characteristic polynomial and roots of the QES operator."""
    fmt = _fmt(ctx, ("json", "csv", "plain"))
    qp = QesParams(aplus, kw["a1"], kw["a2"], kw["a3"], kw["a4"], kw["a5"], kw["delta"], n)
    try:
        result = qes_spectrum(qp)
        result.isospectral = qes_isospectral_check(qp)
    except InvarianceViolation as exc:
        _emit(ctx, {"error": "InvarianceViolation", "column": exc.column}, code=1)
    code = 0 if result.isospectral else 1
    if fmt == "csv":
        block = invariant_block(qp, HeisenbergRep.difference(qp.delta))
        _emit(ctx, text="".join(",".join(row) + "\n" for row in block.to_json()), code=code)
    if fmt == "plain":
        text = f"charpoly: {result.charpoly}\n" + "".join(
            f"root: {r.real:.12g}{r.imag:+.12g}i\n" for r in result.roots
        ) + f"isospectral: {result.isospectral}\n"
        _emit(ctx, text=text, code=code)
    _emit(ctx, result.to_json(), code=code)


if __name__ == "__main__":
    sys.exit(main())
