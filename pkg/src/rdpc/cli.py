"""Command-line interface: point queries, sweeps, oracle runs, self-checks.

Exit codes are script-friendly: 0 for success (a feasible point, a
completed dataset, a clean verify run), 1 for usage or internal errors,
2 for a well-posed but infeasible instance.

Flag values win over config-file values, which win over built-in
defaults; RDPC_WORKERS supplies only the default worker count. All
output is deterministic for a fixed (command, config, seed); worker
counts never change any emitted byte.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from . import __version__
from .closed_form import rdc_binary, rdc_gaussian, rpc_binary, rpc_gaussian
from .errors import (
    DomainError,
    IntegrationError,
    NoCrossingError,
    WitnessUnavailableError,
)
from .oracle import binary_min_rate, gaussian_min_rate
from .restoration import default_model, sweep
from .results import TradeoffPoint
from .rpc_given_d import pc_frontier_given_rd, rate_given_pcd
from .sources import BinaryPairSource, GaussianPairSource
from .verify import SUITE_NAMES, run_suites

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_INFEASIBLE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; the contract here is 1."""

    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(_EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt9(x: float) -> str:
    return format(float(x), ".9g")


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fmt9(value)
    return str(value)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


class _Merged:
    """Flag > config-file > default, per key."""

    def __init__(self, ns: argparse.Namespace, config: Mapping[str, Any]):
        self._ns = ns
        self._cfg = config

    def get(self, key: str, default: Any = None) -> Any:
        flag = getattr(self._ns, key, None)
        if flag is not None:
            return flag
        if key in self._cfg:
            return self._cfg[key]
        return default

    def require(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise _UsageError(f"missing required value --{key.replace('_', '-')}")
        return value


def _load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise _UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise _UsageError(f"config {path} must hold a JSON object")
    return raw


def _default_workers(m: _Merged) -> int:
    flag = m.get("workers")
    if flag is not None:
        return int(flag)
    env = os.environ.get("RDPC_WORKERS")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _UsageError(f"RDPC_WORKERS must be an integer: {env!r}") from exc
    return 1


def _check_units(m: _Merged, family_unit: str, what: str) -> None:
    units = m.get("units")
    if units is not None and units != family_unit:
        raise _UsageError(
            f"{what} reports {family_unit}; requested units {units!r} do not apply"
        )


def _binary_source(m: _Merged) -> BinaryPairSource:
    return BinaryPairSource(float(m.require("a")), float(m.require("p1")))


def _gaussian_source(m: _Merged) -> GaussianPairSource:
    sigma_x = float(m.get("sigma_x", 1.0))
    sigma_s = float(m.get("sigma_s", 0.7))
    theta1 = float(m.get("theta1", 0.63))
    mu_x = float(m.get("mu_x", 0.0))
    mu_s = float(m.get("mu_s", 0.0))
    return GaussianPairSource(mu_x, mu_s, sigma_x**2, sigma_s**2, theta1)


def _grid(m: _Merged, prefix: str) -> list[float]:
    lo = float(m.require(f"{prefix}_min"))
    hi = float(m.require(f"{prefix}_max"))
    steps = int(m.require(f"{prefix}_steps"))
    if steps < 1:
        raise _UsageError(f"--{prefix}-steps must be >= 1")
    if hi < lo:
        raise _UsageError(f"--{prefix}-max must be >= --{prefix}-min")
    return [float(v) for v in np.linspace(lo, hi, steps)]


def _point_payload(pt: TradeoffPoint, inputs: dict[str, Any]) -> dict[str, Any]:
    witness = None
    if pt.witness is not None:
        witness = pt.witness.to_dict()
    return {
        "inputs": inputs,
        "rate": pt.rate if pt.feasible else None,
        "unit": pt.unit.value,
        "feasible": pt.feasible,
        "region": pt.region.value,
        "witness": witness,
        "tool_version": __version__,
    }


def _emit_point(m: _Merged, pt: TradeoffPoint, inputs: dict[str, Any]) -> int:
    if m.get("format", "json") != "json":
        raise _UsageError("point results are JSON objects; CSV fits sweeps only")
    if m.get("emit_plot_script"):
        raise _UsageError("plot scripts accompany sweep datasets, not points")
    _write(_json_text(_point_payload(pt, inputs)), m.get("out"))
    return _EXIT_OK if pt.feasible else _EXIT_INFEASIBLE


# ---------------------------------------------------------------------------
# plot script emission
# ---------------------------------------------------------------------------

_SURFACE_PLOT = """#!/usr/bin/env python3
\"\"\"Contour view of a tradeoff surface CSV (columns d_or_p,c,rate,...).\"\"\"
import csv

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

PATH = @SOURCES@

with open(PATH, newline="") as fh:
    rows = list(csv.DictReader(fh))
xs = sorted({float(r["d_or_p"]) for r in rows})
ys = sorted({float(r["c"]) for r in rows})
z = np.full((len(xs), len(ys)), np.nan)
for r in rows:
    i = xs.index(float(r["d_or_p"]))
    j = ys.index(float(r["c"]))
    if r["feasible"] == "true":
        z[i, j] = float(r["rate"])
fig, ax = plt.subplots(figsize=(6, 4.5))
cs = ax.contourf(ys, xs, z, levels=24)
fig.colorbar(cs, ax=ax, label="rate (" + rows[0]["unit"] + ")")
ax.set_xlabel("C")
ax.set_ylabel("D or P")
fig.tight_layout()
fig.savefig(PATH + ".png", dpi=150)
print("wrote", PATH + ".png")
"""

_RESTORE_PLOT = """#!/usr/bin/env python3
\"\"\"Denoising metric curves from a restore CSV (a,mse,kl_nats,error_rate).\"\"\"
import csv

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

PATH = @SOURCES@

with open(PATH, newline="") as fh:
    rows = list(csv.DictReader(fh))
a = [float(r["a"]) for r in rows]
fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
for ax, col in zip(axes, ("mse", "kl_nats", "error_rate")):
    ax.plot(a, [float(r[col]) for r in rows])
    ax.set_xlabel("gain a")
    ax.set_ylabel(col)
fig.tight_layout()
fig.savefig(PATH + ".png", dpi=150)
print("wrote", PATH + ".png")
"""

_FRONTIER_PLOT = """#!/usr/bin/env python3
\"\"\"Minimal-perception frontiers from rpc-given-d CSVs.\"\"\"
import csv
import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

SOURCES = @SOURCES@

fig, ax = plt.subplots(figsize=(6, 4.5))
for label, path in SOURCES:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    pts = [
        (float(r["C_nats"]), float(r["min_P_nats"]))
        for r in rows
        if not math.isnan(float(r["min_P_nats"]))
    ]
    ax.plot([c for c, _ in pts], [p for _, p in pts], marker="o", label=label)
ax.set_xlabel("C (nats)")
ax.set_ylabel("minimal P (nats)")
ax.legend()
fig.tight_layout()
out = SOURCES[0][1] + ".png"
fig.savefig(out, dpi=150)
print("wrote", out)
"""


def _emit_plot_script(
    m: _Merged, template: str, sources: Any
) -> None:
    if not m.get("emit_plot_script"):
        return
    out = m.get("out")
    if out is None:
        raise _UsageError("--emit-plot-script needs --out to name the dataset")
    if m.get("format", "csv") != "csv":
        raise _UsageError("plot scripts read the CSV format")
    script = template.replace("@SOURCES@", repr(sources))
    Path(f"{out}.plot.py").write_text(script)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_rdc_binary(m: _Merged) -> int:
    _check_units(m, "bits", "a binary tradeoff")
    src = _binary_source(m)
    d = float(m.require("d"))
    c = float(m.require("c"))
    pt = rdc_binary(src, d, c)
    inputs = {"a": src.a, "p1": src.p1, "d": d, "c": c}
    return _emit_point(m, pt, inputs)


def _cmd_rdc_gaussian(m: _Merged) -> int:
    _check_units(m, "nats", "a Gaussian tradeoff")
    src = _gaussian_source(m)
    d = float(m.require("d"))
    c = float(m.require("c"))
    pt = rdc_gaussian(src, d, c)
    inputs = _gaussian_inputs(src) | {"d": d, "c": c}
    return _emit_point(m, pt, inputs)


def _cmd_rpc_binary(m: _Merged) -> int:
    _check_units(m, "bits", "a binary tradeoff")
    src = _binary_source(m)
    p = float(m.require("p"))
    c = float(m.require("c"))
    pt = rpc_binary(src, p, c)
    inputs = {"a": src.a, "p1": src.p1, "p": p, "c": c}
    return _emit_point(m, pt, inputs)


def _cmd_rpc_gaussian(m: _Merged) -> int:
    _check_units(m, "nats", "a Gaussian tradeoff")
    src = _gaussian_source(m)
    p = float(m.require("p"))
    c = float(m.require("c"))
    pt = rpc_gaussian(src, p, c)
    inputs = _gaussian_inputs(src) | {"p": p, "c": c}
    return _emit_point(m, pt, inputs)


def _gaussian_inputs(src: GaussianPairSource) -> dict[str, float]:
    return {
        "mu_x": src.mu_x,
        "mu_s": src.mu_s,
        "sigma_x": math.sqrt(src.var_x),
        "sigma_s": math.sqrt(src.var_s),
        "theta1": src.cov,
    }


def _cmd_rpc_given_d(m: _Merged) -> int:
    _check_units(m, "nats", "a Gaussian tradeoff")
    src = _gaussian_source(m)
    rate_level = m.get("rate")
    if rate_level is None:
        return _rpc_given_d_point(m, src)
    return _rpc_given_d_frontier(m, src, float(rate_level))


def _rpc_given_d_point(m: _Merged, src: GaussianPairSource) -> int:
    d_values = m.get("d")
    if d_values is None:
        raise _UsageError("point query needs --d (one value)")
    if len(d_values) != 1:
        raise _UsageError("point query takes exactly one --d value")
    d = float(d_values[0])
    p = float(m.get("p", math.inf))
    c = float(m.require("c"))
    pt = rate_given_pcd(src, d, p, c)
    inputs = _gaussian_inputs(src) | {"d": d, "p": p, "c": c}
    return _emit_point(m, pt, inputs)


def _rpc_given_d_frontier(
    m: _Merged, src: GaussianPairSource, rate_level: float
) -> int:
    if m.get("p") is not None:
        raise _UsageError("--p belongs to point queries; a frontier minimizes it")
    d_values = [float(v) for v in m.get("d") or (0.5, 0.6, 0.8)]
    c_lo = float(m.get("c_min", src.h_s - 0.7))
    c_hi = float(m.get("c_max", src.h_s + 0.1))
    steps = int(m.get("c_steps", 50))
    if steps < 1:
        raise _UsageError("--c-steps must be >= 1")
    if c_hi < c_lo:
        raise _UsageError("--c-max must be >= --c-min")
    c_grid = [float(v) for v in np.linspace(c_lo, c_hi, steps)]

    header = ("C_nats", "min_P_nats", "rate_nats", "sigma_xh")
    datasets = []
    for d in d_values:
        rows = pc_frontier_given_rd(src, d, rate_level, c_grid)
        datasets.append((d, rows))

    fmt = m.get("format", "csv")
    out = m.get("out")
    if fmt == "json":
        payload = {
            "frontiers": [
                {
                    "d": d,
                    "rows": [
                        {
                            "C_nats": r.c,
                            "min_P_nats": None if not r.feasible else r.min_p,
                            "rate_nats": None if not r.feasible else r.rate,
                            "sigma_xh": None if not r.feasible else r.sigma_xh,
                            "feasible": r.feasible,
                        }
                        for r in rows
                    ],
                }
                for d, rows in datasets
            ],
            "rate_level": rate_level,
            "tool_version": __version__,
        }
        _write(_json_text(payload), out)
        return _EXIT_OK

    def table(rows) -> str:
        return _csv_text(
            header, [(r.c, r.min_p, r.rate, r.sigma_xh) for r in rows]
        )

    if len(datasets) == 1:
        _write(table(datasets[0][1]), out)
        _emit_plot_script(
            m, _FRONTIER_PLOT,
            [(f"D={datasets[0][0]:g}", out)] if out else None,
        )
        return _EXIT_OK

    if out is None:
        pieces = []
        for d, rows in datasets:
            pieces.append(f"# d={d:g}\n{table(rows)}")
        _write("\n".join(pieces), None)
        return _EXIT_OK

    base = Path(out)
    sources = []
    for d, rows in datasets:
        path = base.with_name(f"{base.stem}_d{d:g}{base.suffix}")
        path.write_text(table(rows))
        sources.append((f"D={d:g}", str(path)))
    if m.get("emit_plot_script"):
        script = _FRONTIER_PLOT.replace("@SOURCES@", repr(sources))
        Path(f"{out}.plot.py").write_text(script)
    return _EXIT_OK


_SURFACE_FAMILIES: dict[str, tuple[str, str, bool]] = {
    # family -> (constrained axis, unit, is_binary)
    "rdc-binary": ("d", "bits", True),
    "rdc-gaussian": ("d", "nats", False),
    "rpc-binary": ("p", "bits", True),
    "rpc-gaussian": ("p", "nats", False),
}


def _cmd_surface(m: _Merged) -> int:
    family = m.require("family")
    if family not in _SURFACE_FAMILIES:
        raise _UsageError(f"unknown surface family {family!r}")
    axis, unit, is_binary = _SURFACE_FAMILIES[family]
    _check_units(m, unit, f"the {family} surface")
    src: Any = _binary_source(m) if is_binary else _gaussian_source(m)
    axis_grid = _grid(m, axis)
    c_grid = _grid(m, "c")

    closed: Callable[[Any, float, float], TradeoffPoint] = {
        "rdc-binary": rdc_binary,
        "rdc-gaussian": rdc_gaussian,
        "rpc-binary": rpc_binary,
        "rpc-gaussian": rpc_gaussian,
    }[family]

    rows = []
    for x in axis_grid:
        for c in c_grid:
            pt = closed(src, x, c)
            rows.append((x, c, pt.rate, pt.unit.value, pt.region.value, pt.feasible))

    header = ("d_or_p", "c", "rate", "unit", "region", "feasible")
    fmt = m.get("format", "csv")
    out = m.get("out")
    if fmt == "json":
        payload = {
            "rows": [
                {
                    "d_or_p": x, "c": c,
                    "rate": rate if feasible else None,
                    "unit": u, "region": region, "feasible": feasible,
                }
                for x, c, rate, u, region, feasible in rows
            ],
            "tool_version": __version__,
        }
        _write(_json_text(payload), out)
    else:
        _write(_csv_text(header, rows), out)
        _emit_plot_script(m, _SURFACE_PLOT, out)
    return _EXIT_OK


def _cmd_oracle(m: _Merged) -> int:
    family = m.require("family")
    constraints: dict[str, float] = {}
    for key, name in (("d", "D"), ("p", "P"), ("c", "C")):
        value = m.get(key)
        if value is not None:
            constraints[name] = float(value)
    if not constraints:
        raise _UsageError("oracle needs at least one of --d, --p, --c")
    workers = _default_workers(m)
    refine = not bool(m.get("no_refine", False))

    if family == "binary":
        _check_units(m, "bits", "the binary oracle")
        result = binary_min_rate(
            _binary_source(m), constraints,
            resolution=float(m.get("resolution", 1e-3)),
            refine=refine, workers=workers,
        )
    elif family == "gaussian":
        _check_units(m, "nats", "the Gaussian oracle")
        result = gaussian_min_rate(
            _gaussian_source(m), constraints,
            sigma_steps=int(m.get("sigma_steps", 801)),
            theta_steps=int(m.get("theta_steps", 801)),
            refine=refine, workers=workers,
        )
    else:
        raise _UsageError(f"unknown oracle family {family!r}")

    if m.get("format", "json") != "json":
        raise _UsageError("oracle results are JSON objects; CSV fits sweeps only")
    if m.get("emit_plot_script"):
        raise _UsageError("plot scripts accompany sweep datasets, not oracle runs")
    payload = result.to_dict()
    if not result.feasible:
        payload["rate"] = None
    payload["tool_version"] = __version__
    _write(_json_text(payload), m.get("out"))
    return _EXIT_OK if result.feasible else _EXIT_INFEASIBLE


def _cmd_restore(m: _Merged) -> int:
    _check_units(m, "nats", "the restoration example")
    sigma_n = float(m.get("sigma_n", 1.0))
    a_lo = float(m.get("a_min", 0.05))
    a_hi = float(m.get("a_max", 1.5))
    steps = int(m.get("a_steps", 146))
    if steps < 1:
        raise _UsageError("--a-steps must be >= 1")
    if a_hi < a_lo:
        raise _UsageError("--a-max must be >= --a-min")
    model = default_model(sigma_n=sigma_n)
    grid = [float(v) for v in np.linspace(a_lo, a_hi, steps)]
    curve = sweep(model, grid)

    header = ("a", "mse", "kl_nats", "error_rate")
    rows = [(q.a, q.mse, q.kl, q.error_rate) for q in curve]
    fmt = m.get("format", "csv")
    out = m.get("out")
    if fmt == "json":
        payload = {
            "rows": [
                {"a": a, "mse": mse, "kl_nats": kl, "error_rate": err}
                for a, mse, kl, err in rows
            ],
            "sigma_n": sigma_n,
            "tool_version": __version__,
        }
        _write(_json_text(payload), out)
    else:
        _write(_csv_text(header, rows), out)
        _emit_plot_script(m, _RESTORE_PLOT, out)
    return _EXIT_OK


def _cmd_verify(m: _Merged) -> int:
    if m.get("format", "json") != "json":
        raise _UsageError("the verify report is a JSON object")
    if m.get("emit_plot_script"):
        raise _UsageError("plot scripts accompany sweep datasets, not reports")
    suites = m.get("suite")
    if suites is not None:
        suites = list(dict.fromkeys(suites))
    seed = int(m.get("seed", 0))
    workers = _default_workers(m)
    report = run_suites(suites, seed=seed, workers=workers)
    payload = report.to_dict()
    payload["tool_version"] = __version__
    _write(_json_text(payload), m.get("out"))
    return _EXIT_OK if report.all_passed else _EXIT_USAGE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common_flags() -> argparse.ArgumentParser:
    par = argparse.ArgumentParser(add_help=False)
    par.add_argument("--out", help="write the result here instead of stdout")
    par.add_argument("--format", choices=("csv", "json"),
                     help="csv for sweeps (default), json everywhere")
    par.add_argument("--units", choices=("bits", "nats"),
                     help="must match the source family; rejected otherwise")
    par.add_argument("--seed", type=int, help="seed for randomized suites")
    par.add_argument("--workers", type=int,
                     help="oracle grid partitions (default RDPC_WORKERS or 1)")
    par.add_argument("--config", help="JSON file of defaults; flags win")
    par.add_argument("--emit-plot-script", action="store_true", default=None,
                     help="write a matplotlib script next to the CSV")
    return par


def _add_binary_source(par: argparse.ArgumentParser) -> None:
    par.add_argument("--a", type=float, help="P(S != X), in (p1, 1/2]")
    par.add_argument("--p1", type=float, help="label flip probability, < a")


def _add_gaussian_source(par: argparse.ArgumentParser) -> None:
    par.add_argument("--sigma-x", type=float, help="source std dev (default 1)")
    par.add_argument("--sigma-s", type=float, help="label std dev (default 0.7)")
    par.add_argument("--theta1", type=float, help="cov(X, S) (default 0.63)")
    par.add_argument("--mu-x", type=float, help="source mean (default 0)")
    par.add_argument("--mu-s", type=float, help="label mean (default 0)")


def build_parser() -> _Parser:
    parser = _Parser(prog="rdpc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    rdc = sub.add_parser("rdc", help="rate under distortion + classification")
    rdc_sub = rdc.add_subparsers(dest="family", required=True)
    pb = rdc_sub.add_parser("binary", parents=[common])
    _add_binary_source(pb)
    pb.add_argument("--d", type=float, help="Hamming distortion bound")
    pb.add_argument("--c", type=float, help="conditional label entropy bound, bits")
    pb.set_defaults(handler=_cmd_rdc_binary)
    pg = rdc_sub.add_parser("gaussian", parents=[common])
    _add_gaussian_source(pg)
    pg.add_argument("--d", type=float, help="mean squared error bound")
    pg.add_argument("--c", type=float, help="conditional label entropy bound, nats")
    pg.set_defaults(handler=_cmd_rdc_gaussian)

    rpc = sub.add_parser("rpc", help="rate under perception + classification")
    rpc_sub = rpc.add_subparsers(dest="family", required=True)
    pb = rpc_sub.add_parser("binary", parents=[common])
    _add_binary_source(pb)
    pb.add_argument("--p", type=float, help="total variation bound")
    pb.add_argument("--c", type=float, help="conditional label entropy bound, bits")
    pb.set_defaults(handler=_cmd_rpc_binary)
    pg = rpc_sub.add_parser("gaussian", parents=[common])
    _add_gaussian_source(pg)
    pg.add_argument("--p", type=float, help="KL divergence bound, nats")
    pg.add_argument("--c", type=float, help="conditional label entropy bound, nats")
    pg.set_defaults(handler=_cmd_rpc_gaussian)

    given = sub.add_parser(
        "rpc-given-d", parents=[common],
        help="rate (or P-C frontier) at an exactly pinned distortion",
    )
    _add_gaussian_source(given)
    given.add_argument("--d", type=float, nargs="+",
                       help="pinned distortion; frontier default 0.5 0.6 0.8")
    given.add_argument("--p", type=float, help="KL bound for a point query (inf ok)")
    given.add_argument("--c", type=float, help="entropy bound for a point query")
    given.add_argument("--rate", type=float,
                       help="rate budget; providing it selects frontier mode")
    given.add_argument("--c-min", type=float, help="frontier C grid start")
    given.add_argument("--c-max", type=float, help="frontier C grid end")
    given.add_argument("--c-steps", type=int, help="frontier C grid size (50)")
    given.set_defaults(handler=_cmd_rpc_given_d)

    surface = sub.add_parser(
        "surface", parents=[common],
        help="closed-form rate over a (D or P) x C grid",
    )
    surface.add_argument(
        "--family", choices=sorted(_SURFACE_FAMILIES),
        help="which tradeoff function to sweep",
    )
    _add_binary_source(surface)
    _add_gaussian_source(surface)
    for axis in ("d", "p", "c"):
        surface.add_argument(f"--{axis}-min", type=float)
        surface.add_argument(f"--{axis}-max", type=float)
        surface.add_argument(f"--{axis}-steps", type=int)
    surface.set_defaults(handler=_cmd_surface)

    oracle = sub.add_parser(
        "oracle", parents=[common],
        help="brute-force minimal rate over explicit channels",
    )
    oracle.add_argument("--family", choices=("binary", "gaussian"))
    _add_binary_source(oracle)
    _add_gaussian_source(oracle)
    oracle.add_argument("--d", type=float, help="distortion bound")
    oracle.add_argument("--p", type=float, help="perception bound")
    oracle.add_argument("--c", type=float, help="classification bound")
    oracle.add_argument("--resolution", type=float,
                        help="binary grid step (default 1e-3)")
    oracle.add_argument("--sigma-steps", type=int, help="Gaussian grid (801)")
    oracle.add_argument("--theta-steps", type=int, help="Gaussian grid (801)")
    oracle.add_argument("--no-refine", action="store_true", default=None,
                        help="report the raw grid optimum")
    oracle.set_defaults(handler=_cmd_oracle)

    restore = sub.add_parser(
        "restore", parents=[common],
        help="denoising gain sweep on the two-component mixture model",
    )
    restore.add_argument("--sigma-n", type=float, help="noise std dev (default 1)")
    restore.add_argument("--a-min", type=float, help="gain grid start (0.05)")
    restore.add_argument("--a-max", type=float, help="gain grid end (1.5)")
    restore.add_argument("--a-steps", type=int, help="gain grid size (146)")
    restore.set_defaults(handler=_cmd_restore)

    verify = sub.add_parser(
        "verify", parents=[common],
        help="run the self-check suites and write a JSON report",
    )
    verify.add_argument(
        "--suite", action="append", choices=SUITE_NAMES, default=None,
        help="restrict to one suite (repeatable; default all)",
    )
    verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        config = _load_config(ns.config)
        merged = _Merged(ns, config)
        return int(ns.handler(merged))
    except _UsageError as exc:
        print(f"rdpc: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (DomainError, IntegrationError, NoCrossingError,
            WitnessUnavailableError) as exc:
        print(f"rdpc: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except OSError as exc:
        print(f"rdpc: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
