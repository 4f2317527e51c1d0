"""Command line entry point: ``cg-asym {table,compare,figure,spectrum}``.

Exit status is 0 on success, 2 for usage errors (including parameters that
do not form a valid representation) and 3 for numerical failures.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import click

from . import reports, spectra
from .algebra import make_su2_context, make_su11_context
from .errors import CGError, DomainError, EnumerationCapError
from .tables import phase_note_for

log = logging.getLogger("cg_asym")


class NumericError(click.ClickException):
    exit_code = 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _make_context(group, s1, s2, M, k1, k2, N):
    try:
        if group == "su2":
            if None in (s1, s2, M):
                raise click.UsageError("su2 needs --s1, --s2 and --M")
            return make_su2_context(s1, s2, M)
        if None in (k1, k2, N):
            raise click.UsageError("su11 needs --k1, --k2 and --N")
        return make_su11_context(float(k1), float(k2), int(N))
    except (DomainError, ValueError, TypeError) as exc:
        raise click.UsageError(f"invalid {group} parameters: {exc}")


def _emit(ctx_obj, text: str) -> None:
    out = ctx_obj["out"]
    if out is None:
        click.echo(text, nl=False)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _numeric(fn):
    """Map library failures onto exit status 3 with a one-line reason."""
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (CGError, ArithmeticError) as exc:
            raise NumericError(str(exc).splitlines()[0])
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


context_options = [
    click.argument("group", type=click.Choice(["su2", "su11"])),
    click.option("--s1", help="first spin (su2), e.g. 20 or 7/2"),
    click.option("--s2", help="second spin (su2)"),
    click.option("--M", "M", help="total projection (su2)"),
    click.option("--k1", type=float, help="first Bargmann index (su11)"),
    click.option("--k2", type=float, help="second Bargmann index (su11)"),
    click.option("--N", "N", type=int, help="total quantum number n1+n2 (su11)"),
]


def with_context_options(fn):
    for opt in reversed(context_options):
        fn = opt(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(), default=None, help="output file (directory for `figure`)")
@click.pass_context
def cli(ctx, fmt, out):
    """Exact and asymptotic SU(2) / SU(1,1) Clebsch-Gordan coefficients."""
    level = os.environ.get("CG_ASYM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = {"format": fmt, "out": out}


@cli.command()
@with_context_options
@click.option("--n", "n_list", default="0", show_default=True, help="comma-separated n values")
@click.option("--methods", default="exact", show_default=True, help="subset of exact,sha,simplified")
@click.pass_context
@_numeric
def table(ctx, group, s1, s2, M, k1, k2, N, n_list, methods):
    """Coefficient tables as a function of m."""
    context = _make_context(group, s1, s2, M, k1, k2, N)
    ns = _int_list(n_list)
    names = _str_list(methods)
    for name in names:
        if name not in reports.METHOD_TAGS:
            raise click.UsageError(f"unknown method {name!r}; choose from exact,sha,simplified")
    columns = {}
    for n in ns:
        for name in names:
            columns[f"{name}_{n}"] = reports.compute_table(context, n, name).values
    phase = phase_note_for(context)
    if ctx.obj["format"] == "json":
        text = reports.tables_json(context, columns, phase)
    else:
        text = reports.tables_csv(context, columns, phase)
    _emit(ctx.obj, text)


@cli.command()
@with_context_options
@click.option("--n", "n", type=int, default=0, show_default=True)
@click.option("--methods", default="exact,sha", show_default=True, help="two methods to compare")
@click.pass_context
@_numeric
def compare(ctx, group, s1, s2, M, k1, k2, N, n, methods):
    """Error metrics between two methods, as JSON."""
    context = _make_context(group, s1, s2, M, k1, k2, N)
    names = _str_list(methods)
    if len(names) != 2 or any(m not in reports.METHOD_TAGS for m in names):
        raise click.UsageError("--methods needs exactly two of exact,sha,simplified")
    report = reports.compare(context, n, *names)
    _emit(ctx.obj, json.dumps(report.to_dict(), indent=1) + "\n")


def _pairs(text: str) -> list[tuple[float, float]]:
    out = []
    for part in _str_list(text):
        a, sep, b = part.partition(":")
        if not sep:
            raise click.BadParameter(f"expected k1:k2 pairs, got {part!r}")
        out.append((float(a), float(b)))
    return out


@cli.command()
@click.argument("figure_id", type=click.Choice(sorted(reports.PRESETS)))
@click.option("--n", "n_list", default=None, help="override the preset n values")
@click.option("--M-values", "M_values", default=None, help="override fig2 M values")
@click.option("--k-pairs", default=None, help="override fig5 pairs, e.g. 5:50,25:30")
@click.pass_context
@_numeric
def figure(ctx, figure_id, n_list, M_values, k_pairs):
    """Data files for one of the preset figures (fig1..fig6)."""
    preset = reports.PRESETS[figure_id]
    try:
        preset = reports.override_preset(
            preset,
            n_values=_int_list(n_list) if n_list else None,
            M_values=_str_list(M_values) if M_values else None,
            k_pairs=_pairs(k_pairs) if k_pairs else None,
        )
        for panel in preset.panels():
            panel.context()
    except (DomainError, ValueError) as exc:
        raise click.UsageError(str(exc))
    out_dir = Path(ctx.obj["out"] or "figures")
    for path in reports.write_figure(preset, out_dir):
        click.echo(str(path))


@cli.command()
@click.argument("group", type=click.Choice(["su2", "su11"]))
@click.option("--s1", help="first spin (su2)")
@click.option("--s2", help="second spin (su2)")
@click.option("--k1", type=float, help="first Bargmann index (su11)")
@click.option("--k2", type=float, help="second Bargmann index (su11)")
@click.option("--N-max", "N_max", type=int, default=4, show_default=True, help="largest N enumerated (su11)")
@click.option("--alpha", type=float, required=True)
@click.option("--chi", type=float, required=True)
@click.option("--methods", default="exact", show_default=True, help="subset of exact,rpa,sha_limit")
@click.option("--cap", type=int, default=spectra.DEFAULT_LEVEL_CAP, show_default=True)
@click.pass_context
@_numeric
def spectrum(ctx, group, s1, s2, k1, k2, N_max, alpha, chi, methods, cap):
    """Energy levels of alpha*S0 + chi*S+S- (or the su(1,1) analogue)."""
    names = _str_list(methods)
    for name in names:
        if name not in ("exact", "rpa", "sha_limit"):
            raise click.UsageError(f"unknown spectrum method {name!r}")
    try:
        params = spectra.CouplingParams(alpha, chi)
        if group == "su2":
            if s1 is None or s2 is None:
                raise click.UsageError("su2 needs --s1 and --s2")
            rep = spectra.Su2Rep.of(s1, s2)
        else:
            if k1 is None or k2 is None:
                raise click.UsageError("su11 needs --k1 and --k2")
            rep = spectra.Su11Rep(k1, k2, N_max)
    except (DomainError, ValueError) as exc:
        raise click.UsageError(str(exc))
    try:
        exact = spectra.exact_spectrum(group, params, rep, cap=cap)
    except EnumerationCapError as exc:
        raise NumericError(str(exc))
    rows = _spectrum_rows(group, params, rep, exact, names)
    if ctx.obj["format"] == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        text = _spectrum_csv(group, rows)
    _emit(ctx.obj, text)


def _spectrum_rows(group, params, rep, exact, names):
    levels: dict[str, list] = {}
    for lv in exact:
        if group == "su2":
            S, M = lv.labels
            state = {"S": str(S), "M": str(M)}
            n = int(rep.s1 + rep.s2 - S)
            by_method = {
                "exact": lv,
                "rpa": lambda: spectra.rpa_spectrum(group, params, rep, (n, float(S + M))),
                "sha_limit": lambda: spectra.sha_limit_spectrum(group, params, rep, (n, M)),
            }
        else:
            N, n, _ = lv.labels
            state = {"N": str(N), "n": str(n)}
            by_method = {
                "exact": lv,
                "rpa": lambda: spectra.rpa_spectrum(group, params, rep, (N, n)),
                "sha_limit": lambda: spectra.sha_limit_spectrum(group, params, rep, (N, n)),
            }
        for name in names:
            level = by_method[name]
            if callable(level):
                level = level()
            levels.setdefault(name, []).append({
                **state,
                "method": name,
                "energy": level.energy,
                "outside_validity": level.outside_validity,
            })
    out = {"levels": [row for name in names for row in levels[name]], "argmin": {}}
    for name in names:
        best = min(levels[name], key=lambda r: r["energy"])
        out["argmin"][name] = best
    return out


def _spectrum_csv(group, rows) -> str:
    label_cols = ["S", "M"] if group == "su2" else ["N", "n"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*label_cols, "method", "energy", "outside_validity"])
    for r in rows["levels"]:
        writer.writerow([*(r[c] for c in label_cols), r["method"], reports.fmt(r["energy"]),
                         int(r["outside_validity"])])
    for name, best in rows["argmin"].items():
        labels = " ".join(f"{c}={best[c]}" for c in label_cols)
        buf.write(f"# argmin {name} {labels} energy={reports.fmt(best['energy'])}\n")
    return buf.getvalue()


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="cg-asym", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
