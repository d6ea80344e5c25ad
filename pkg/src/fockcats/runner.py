"""Scenario execution: build the state, compute products, write files.

Output files are byte-deterministic: floats are rendered with 17
significant digits (enough to round-trip IEEE doubles exactly), newlines
are fixed to "\\n", and JSON key order is the construction order. The run
manifest itself is returned (and printed by the CLI), never written to
disk, since its wall-clock field varies between runs.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass

import numpy as np

from . import dynamics, observables, states
from .fock import DEFAULT_TOLERANCES, FockState, Tolerances, auto_dim
from .scenario import Scenario

__all__ = ["RunManifest", "build_initial_state", "resolve_dim", "run_scenario"]


def _fmt(value: float) -> str:
    """17-significant-digit decimal form; exact float round-trip."""
    if not math.isfinite(value):
        raise ValueError("cannot serialize a non-finite number")
    return "%.17g" % value


def dumps(value, indent: int = 0) -> str:
    """Deterministic JSON for the fixed product/manifest schemas."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = (f'{inner}"{k}": {dumps(v, indent + 1)}' for k, v in value.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if len(value) == 0:
            return "[]"
        parts = [dumps(v, indent + 1) for v in value]
        flat = all(not isinstance(v, (dict, list, tuple)) for v in value)
        if flat and sum(len(p) for p in parts) < 100:
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(inner + p for p in parts) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt(float(value))
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass(frozen=True)
class RunManifest:
    """What a run did: resolved parameters, files written, duration."""

    scenario: dict
    resolved_dim: int
    tolerances: dict
    files: tuple[dict, ...]
    duration_seconds: float

    def to_json(self) -> str:
        return dumps(
            {
                "scenario": self.scenario,
                "resolved_dim": self.resolved_dim,
                "tolerances": self.tolerances,
                "files": list(self.files),
                "duration_seconds": self.duration_seconds,
            }
        )


def resolve_dim(sc: Scenario, tol: Tolerances) -> int:
    """Basis size for a scenario: explicit, or the tail rule plus pad."""
    if sc.dim is not None:
        return sc.dim
    if sc.kind == "number":
        return sc.n + 1 + tol.pad
    return auto_dim(sc.state_alpha(), tol)


def build_initial_state(sc: Scenario, tol: Tolerances, dim: int) -> FockState:
    if sc.kind == "number":
        return states.number_state(sc.n, dim)
    alpha = sc.state_alpha()
    if sc.kind == "coherent":
        return states.coherent_state(alpha, dim, tol)
    parity = "even" if sc.kind == "cat_even" else "odd"
    return states.cat_state(alpha, parity, dim, tol)


def scenario_echo(sc: Scenario) -> dict:
    alpha = sc.state_alpha() if sc.kind != "number" else None
    return {
        "kind": sc.kind,
        "alpha": None if sc.alpha is None else {"re": sc.alpha.real, "im": sc.alpha.imag},
        "x0": sc.x0,
        "p0": sc.p0,
        "n": sc.n,
        "resolved_alpha": None if alpha is None else {"re": alpha.real, "im": alpha.imag},
        "dim": "auto" if sc.dim is None else sc.dim,
        "epsilon": sc.epsilon,
        "x_min": sc.x_grid.x_min,
        "x_max": sc.x_grid.x_max,
        "x_points": sc.x_grid.n_points,
        "t_min": sc.t_grid.t_min,
        "t_max": sc.t_grid.t_max,
        "t_steps": sc.t_grid.n_steps,
        "outputs": list(sc.outputs),
        "format": sc.format,
        "prefix": sc.prefix,
    }


def _write_text(path: str, text: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="\n") as handle:
        handle.write(text)


def _density_csv(surface: dynamics.DensitySurface) -> str:
    xs = surface.x_grid.values
    ts = surface.t_grid.values
    lines = ["," + ",".join(_fmt(x) for x in xs)]
    for j, t in enumerate(ts):
        lines.append(_fmt(t) + "," + ",".join(_fmt(v) for v in surface.values[j]))
    return "\n".join(lines) + "\n"


def _density_json(surface: dynamics.DensitySurface) -> str:
    xg, tg = surface.x_grid, surface.t_grid
    return dumps(
        {
            "product": "density_surface",
            "x_grid": {
                "x_min": xg.x_min, "x_max": xg.x_max, "n_points": xg.n_points,
                "values": [float(v) for v in xg.values],
            },
            "t_grid": {
                "t_min": tg.t_min, "t_max": tg.t_max, "n_steps": tg.n_steps,
                "values": [float(v) for v in tg.values],
            },
            "values": [float(v) for v in surface.values.ravel()],
        }
    ) + "\n"


def _table_csv(columns: tuple[str, ...], rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _table_json(product: str, columns: tuple[str, ...], rows) -> str:
    return dumps(
        {
            "product": product,
            "columns": list(columns),
            "rows": [[v for v in row] for row in rows],
        }
    ) + "\n"


def _observables_rows(state: FockState, t_grid: dynamics.TimeGrid):
    for t in t_grid.values:
        report = observables.quadrature_expectations(dynamics.evolve(state, float(t)))
        yield (
            float(t), report.mean_x, report.mean_p,
            report.var_x, report.var_p, report.product,
        )


def run_scenario(sc: Scenario) -> RunManifest:
    """Execute every requested product; returns the manifest.

    Identical scenarios produce byte-identical files. If any product
    fails, files already written by this run are removed before the error
    propagates.
    """
    started = time.perf_counter()
    tol = Tolerances(
        eps_norm=sc.epsilon,
        eps_op=DEFAULT_TOLERANCES.eps_op,
        eps_eq=DEFAULT_TOLERANCES.eps_eq,
        pad=DEFAULT_TOLERANCES.pad,
    )
    dim = resolve_dim(sc, tol)
    state = build_initial_state(sc, tol, dim)
    ext = sc.format
    written: list[str] = []
    files: list[dict] = []
    try:
        for product in sc.outputs:
            path = f"{sc.prefix}_{_PRODUCT_SUFFIX[product]}.{ext}"
            if product == "density_surface":
                surface = dynamics.density_surface(state, sc.x_grid, sc.t_grid)
                text = _density_csv(surface) if ext == "csv" else _density_json(surface)
                rows, cols = surface.values.shape
            else:
                columns, data = _PRODUCT_TABLE[product](state, sc)
                text = (
                    _table_csv(columns, data)
                    if ext == "csv"
                    else _table_json(product, columns, data)
                )
                rows, cols = len(data), len(columns)
            _write_text(path, text)
            written.append(path)
            files.append(
                {"path": path, "product": product, "rows": rows, "columns": cols}
            )
    except Exception:
        for path in written:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise
    return RunManifest(
        scenario=scenario_echo(sc),
        resolved_dim=dim,
        tolerances={
            "eps_norm": tol.eps_norm,
            "eps_op": tol.eps_op,
            "eps_eq": tol.eps_eq,
            "pad": tol.pad,
        },
        files=tuple(files),
        duration_seconds=time.perf_counter() - started,
    )


def _photon_rows(state: FockState, sc: Scenario):
    probs = observables.photon_distribution(state)
    return [(n, float(p)) for n, p in enumerate(probs)]


def _amplitude_rows(state: FockState, sc: Scenario):
    return [
        (n, float(c.real), float(c.imag)) for n, c in enumerate(state.amps)
    ]


_PRODUCT_SUFFIX = {
    "density_surface": "density",
    "observables_trace": "observables",
    "photon_distribution": "photons",
    "amplitudes": "amplitudes",
}

_PRODUCT_TABLE = {
    "observables_trace": lambda state, sc: (
        ("t", "mean_x", "mean_p", "var_x", "var_p", "product"),
        list(_observables_rows(state, sc.t_grid)),
    ),
    "photon_distribution": lambda state, sc: (
        ("n", "probability"),
        _photon_rows(state, sc),
    ),
    "amplitudes": lambda state, sc: (
        ("n", "re", "im"),
        _amplitude_rows(state, sc),
    ),
}
