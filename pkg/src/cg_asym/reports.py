"""Exact-vs-asymptotic comparisons, figure presets and deterministic writers."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .algebra import Context, make_su2_context, make_su11_context
from .errors import CGError
from .sha import approx_cg, sha_params
from .tables import CoeffTable
from .tridiag import exact_cg

# CLI method names -> table method tags
METHOD_TAGS = {"exact": "exact", "sha": "sha_full", "simplified": "sha_simplified"}
FIGURE_COLUMNS = ("exact", "sha_full", "sha_simplified")


def canonical_method(name: str) -> str:
    if name in METHOD_TAGS:
        return METHOD_TAGS[name]
    if name in METHOD_TAGS.values():
        return name
    raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHOD_TAGS)}")


def compute_table(ctx: Context, n: int, method: str) -> CoeffTable:
    tag = canonical_method(method)
    if tag == "exact":
        return exact_cg(ctx, n)
    variant = tag.removeprefix("sha_")
    return approx_cg(ctx, n, sha_params(ctx, variant))


def fmt(x: float) -> str:
    """Shortest round-trip decimal; locale independent."""
    return repr(float(x))


@dataclass(frozen=True)
class ComparisonReport:
    context: str
    n: int
    methods: tuple[str, str]
    tables: dict = field(repr=False)
    grid: list = field(repr=False)
    max_abs_err: float
    rms_err: float
    argmax_m: float
    boundary_spill: Optional[float]

    def to_dict(self) -> dict:
        return {
            "context": self.context,
            "n": self.n,
            "methods": list(self.methods),
            "m": self.grid,
            "tables": self.tables,
            "max_abs_err": self.max_abs_err,
            "rms_err": self.rms_err,
            "argmax_m": self.argmax_m,
            "boundary_spill": self.boundary_spill,
        }


def compare(ctx: Context, n: int, method_a: str, method_b: str) -> ComparisonReport:
    ta = compute_table(ctx, n, method_a)
    tb = ta if canonical_method(method_b) == ta.method else compute_table(ctx, n, method_b)
    diff = np.abs(ta.values - tb.values)
    i = int(np.argmax(diff))
    spills = [t.boundary_spill for t in (ta, tb) if t.boundary_spill is not None]
    return ComparisonReport(
        context=ctx.label,
        n=n,
        methods=(ta.method, tb.method),
        tables={ta.method: ta.values.tolist(), tb.method: tb.values.tolist()},
        grid=ctx.grid.tolist(),
        max_abs_err=float(diff[i]),
        rms_err=float(np.sqrt(np.mean(diff * diff))),
        argmax_m=float(ctx.grid[i]),
        boundary_spill=max(spills) if spills else None,
    )


# ---------------------------------------------------------------------------
# table writers
# ---------------------------------------------------------------------------

def tables_csv(ctx: Context, columns: dict[str, np.ndarray], phase: str) -> str:
    buf = io.StringIO()
    buf.write(f"# context={ctx.label}\n")
    buf.write(f"# phase={phase}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", *columns])
    cols = list(columns.values())
    for i, m in enumerate(ctx.grid):
        writer.writerow([fmt(m), *(fmt(c[i]) for c in cols)])
    return buf.getvalue()


def tables_json(ctx: Context, columns: dict[str, np.ndarray], phase: str) -> str:
    payload = {
        "context": ctx.label,
        "group": ctx.group,
        "phase": phase,
        "m": [float(m) for m in ctx.grid],
        "columns": {k: [float(v) for v in vals] for k, vals in columns.items()},
    }
    return json.dumps(payload, indent=1) + "\n"


def read_tables_csv(text: str) -> tuple[dict[str, str], dict[str, list[float]]]:
    """Parse what tables_csv wrote: (metadata, columns including 'm')."""
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif line:
            body.append(line)
    rows = list(csv.reader(body))
    header, data = rows[0], rows[1:]
    return meta, {h: [float(r[j]) for r in data] for j, h in enumerate(header)}


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Panel:
    name: str
    group: str
    args: tuple
    n: int

    def context(self) -> Context:
        if self.group == "su2":
            return make_su2_context(*self.args)
        return make_su11_context(*self.args)


@dataclass(frozen=True)
class FigurePreset:
    id: str
    caption: str
    group: str
    # su(2): (s1, s2, M); su(1,1): (k1, k2, N)
    contexts: tuple[tuple, ...]
    n_values: tuple[int, ...]
    methods: tuple[str, ...] = FIGURE_COLUMNS

    def panels(self) -> list[Panel]:
        out = []
        for args in self.contexts:
            for n in self.n_values:
                out.append(Panel(_panel_name(self, args, n), self.group, args, n))
        return out


def _panel_name(preset: FigurePreset, args: tuple, n: int) -> str:
    parts = []
    if len(preset.contexts) > 1:
        if preset.group == "su2":
            parts.append(f"M{args[2]}")
        else:
            parts.append(f"k{args[0]:g}_{args[1]:g}")
    if len(preset.n_values) > 1 or not parts:
        parts.append(f"n{n}")
    return f"{preset.id}_" + "_".join(parts)


PRESETS: dict[str, FigurePreset] = {
    "fig1": FigurePreset("fig1", "(20,-m, 15,m | 35-n, 0)", "su2", ((20, 15, 0),), (0, 1, 5)),
    "fig2": FigurePreset(
        "fig2", "(60,M-m, 40,m | 100,M)", "su2",
        ((60, 40, 0), (60, 40, 15), (60, 40, 30), (60, 40, 45)), (0,),
    ),
    "fig3": FigurePreset("fig3", "(10,-m, 7,m | 17-n, 0)", "su2", ((10, 7, 0),), (0, 1, 2)),
    "fig4": FigurePreset("fig4", "(-1)^m <10, 17, 100,m | 117,10>", "su11", ((10, 17, 100),), (10,)),
    "fig5": FigurePreset(
        "fig5", "(-1)^m <k1 k2, 80,m | K,0>", "su11",
        ((5, 50, 80), (25, 30, 80), (30, 25, 80), (50, 5, 80)), (0,),
    ),
    "fig6": FigurePreset("fig6", "(-1)^m <1/2,3/2, 10,m | 12,0> and <1/2,3/2, 10,m | 10,2>", "su11", ((0.5, 1.5, 10),), (0, 2)),
}


def override_preset(preset: FigurePreset, n_values: Optional[Sequence[int]] = None,
                    M_values: Optional[Sequence] = None,
                    k_pairs: Optional[Sequence[tuple[float, float]]] = None) -> FigurePreset:
    if n_values:
        preset = replace(preset, n_values=tuple(n_values))
    if M_values:
        if preset.group != "su2":
            raise ValueError(f"{preset.id} is an su(1,1) figure; M values do not apply")
        s1, s2 = preset.contexts[0][:2]
        preset = replace(preset, contexts=tuple((s1, s2, M) for M in M_values))
    if k_pairs:
        if preset.group != "su11":
            raise ValueError(f"{preset.id} is an su(2) figure; k pairs do not apply")
        N = preset.contexts[0][2]
        preset = replace(preset, contexts=tuple((k1, k2, N) for k1, k2 in k_pairs))
    return preset


def panel_columns(panel: Panel) -> tuple[Context, dict[str, np.ndarray], dict[str, str]]:
    ctx = panel.context()
    columns: dict[str, np.ndarray] = {}
    failures: dict[str, str] = {}
    for method in FIGURE_COLUMNS:
        try:
            columns[method] = compute_table(ctx, panel.n, method).values
        except CGError as exc:
            # keep the column so every panel has the same layout
            columns[method] = np.full(ctx.dim, math.nan)
            failures[method] = str(exc)
    return ctx, columns, failures


def write_figure(preset: FigurePreset, out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    manifest_panels = []
    for panel in preset.panels():
        ctx, columns, failures = panel_columns(panel)
        path = out_dir / f"{panel.name}.csv"
        phase = "condon_shortley" if panel.group == "su2" else "psi_phase"
        path.write_text(tables_csv(ctx, columns, phase), encoding="utf-8", newline="\n")
        written.append(path)
        errors = {
            m: float(np.max(np.abs(columns[m] - columns["exact"])))
            for m in ("sha_full", "sha_simplified")
            if m not in failures
        }
        manifest_panels.append({
            "file": path.name,
            "context": ctx.label,
            "n": panel.n,
            "rows": ctx.dim,
            "max_abs_err_vs_exact": errors,
            "failures": failures,
        })
    manifest = {"figure": preset.id, "caption": preset.caption, "panels": manifest_panels}
    mpath = out_dir / f"{preset.id}_manifest.json"
    mpath.write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8", newline="\n")
    written.append(mpath)
    return written
