"""Declarative run descriptions: a flat key = value document.

Schema (all keys optional; omitted keys take the defaults shown, which
reproduce the even-cat density surface):

    kind = cat_even            # coherent | cat_even | cat_odd | number
    x0 = 2.8284271247461903    # initial <x>, natural units
    p0 = 0.0                   # initial <p>
    # alpha = 2                # alternative to (x0, p0); complex like 1+2j
    # n = 1                    # number-state index, kind = number only
    dim = auto                 # basis size: auto (tail rule + pad) or int
    epsilon = 1e-12            # truncation tail tolerance
    x_min = -7.5
    x_max = 7.5
    x_points = 241
    t_min = 0.0
    t_max = 6.283185307179586  # one period (2 pi)
    t_steps = 129
    outputs = density_surface  # comma list: density_surface,
                               # observables_trace, photon_distribution,
                               # amplitudes
    format = csv               # csv | json
    prefix = out               # output path prefix

Lines are ``key = value``; ``#`` starts a comment; unknown or repeated keys
are errors. Exactly one of alpha / (x0 and p0, given together) / n may be
supplied, and it must match the kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .dynamics import TimeGrid
from .states import PositionGrid

__all__ = [
    "OUTPUT_PRODUCTS",
    "PRESET_NAMES",
    "Scenario",
    "ScenarioError",
    "default_scenario",
    "parse_scenario",
    "preset_scenario",
]

OUTPUT_PRODUCTS = (
    "density_surface",
    "observables_trace",
    "photon_distribution",
    "amplitudes",
)

_KINDS = ("coherent", "cat_even", "cat_odd", "number")
_FORMATS = ("csv", "json")

FIG1_X0 = 2.0 ** 1.5
FIG1_P0 = 0.0
_DEFAULT_X = (-7.5, 7.5, 241)
_DEFAULT_T = (0.0, 2.0 * math.pi, 129)


class ScenarioError(ValueError):
    """Invalid scenario document; carries the offending line/field."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"key '{field}'")
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.field = field
        self.line = line


@dataclass(frozen=True)
class Scenario:
    """A fully resolved, validated run description."""

    kind: str = "cat_even"
    alpha: complex | None = None
    x0: float | None = None
    p0: float | None = None
    n: int | None = None
    dim: int | None = None  # None = auto
    epsilon: float = 1e-12
    x_grid: PositionGrid = PositionGrid(*_DEFAULT_X)
    t_grid: TimeGrid = TimeGrid(*_DEFAULT_T)
    outputs: tuple[str, ...] = ("density_surface",)
    format: str = "csv"
    prefix: str = "out"

    def __post_init__(self):
        _validate(self)

    def state_alpha(self) -> complex:
        """Coherent label implied by the state parameters (natural units)."""
        if self.alpha is not None:
            return self.alpha
        return complex(self.x0, self.p0) / math.sqrt(2.0)


def default_scenario() -> Scenario:
    """The all-defaults run: even-cat surface at x0 = 2^(3/2), p0 = 0."""
    return Scenario(x0=FIG1_X0, p0=FIG1_P0)


def _validate(sc: Scenario) -> None:
    if sc.kind not in _KINDS:
        raise ScenarioError(f"unknown kind {sc.kind!r}; expected one of {_KINDS}", "kind")
    given = {
        "alpha": sc.alpha is not None,
        "x0/p0": sc.x0 is not None or sc.p0 is not None,
        "n": sc.n is not None,
    }
    if (sc.x0 is None) != (sc.p0 is None):
        raise ScenarioError("x0 and p0 must be given together", "x0")
    if sc.kind == "number":
        if given["alpha"] or given["x0/p0"]:
            raise ScenarioError(
                "kind=number takes only n, not alpha or x0/p0", "n"
            )
        if sc.n is None:
            raise ScenarioError("kind=number requires n", "n")
        if sc.n < 0:
            raise ScenarioError("n must be non-negative", "n")
        if sc.dim is not None and sc.n >= sc.dim:
            raise ScenarioError(
                f"number-state index n={sc.n} does not fit in dim={sc.dim}", "n"
            )
    else:
        if given["n"]:
            raise ScenarioError(f"n is only valid for kind=number, not {sc.kind}", "n")
        if given["alpha"] and given["x0/p0"]:
            raise ScenarioError(
                "contradictory state parameters: give alpha or (x0, p0), not both",
                "alpha",
            )
        if not given["alpha"] and not given["x0/p0"]:
            raise ScenarioError("state parameters missing: give alpha or (x0, p0)")
        if sc.kind == "cat_odd" and sc.state_alpha() == 0:
            raise ScenarioError(
                "odd cat state is undefined at alpha = 0", "alpha"
            )
    if sc.dim is not None and sc.dim < 1:
        raise ScenarioError("dim must be a positive integer or auto", "dim")
    if not sc.epsilon > 0:
        raise ScenarioError("epsilon must be positive", "epsilon")
    if not sc.outputs:
        raise ScenarioError("outputs must name at least one product", "outputs")
    for product in sc.outputs:
        if product not in OUTPUT_PRODUCTS:
            raise ScenarioError(
                f"unknown output product {product!r}; expected from {OUTPUT_PRODUCTS}",
                "outputs",
            )
    if len(set(sc.outputs)) != len(sc.outputs):
        raise ScenarioError("outputs lists a product twice", "outputs")
    if sc.format not in _FORMATS:
        raise ScenarioError(f"format must be one of {_FORMATS}", "format")
    if not sc.prefix:
        raise ScenarioError("prefix must be non-empty", "prefix")


def _parse_float(raw: str, key: str, line: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ScenarioError(f"malformed number {raw!r}", key, line) from None
    if not math.isfinite(value):
        raise ScenarioError(f"number {raw!r} must be finite", key, line)
    return value


def _parse_int(raw: str, key: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"malformed integer {raw!r}", key, line) from None


def _parse_complex(raw: str, key: str, line: int) -> complex:
    try:
        value = complex(raw.replace(" ", ""))
    except ValueError:
        raise ScenarioError(
            f"malformed complex number {raw!r} (write e.g. 2, 1.5j or 1+2j)",
            key,
            line,
        ) from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ScenarioError(f"number {raw!r} must be finite", key, line)
    return value


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document; empty text gives the defaults.

    The defaults describe the even-cat density surface at x0 = 2^(3/2),
    p0 = 0 over one period.
    """
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ScenarioError("expected 'key = value'", line=lineno)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ScenarioError("missing key before '='", line=lineno)
        if key in raw:
            raise ScenarioError("key repeated", key, lineno)
        if not value:
            raise ScenarioError("missing value", key, lineno)
        raw[key] = (value, lineno)

    fields: dict[str, object] = {}
    grid_x = dict(zip(("x_min", "x_max", "x_points"), _DEFAULT_X))
    grid_t = dict(zip(("t_min", "t_max", "t_steps"), _DEFAULT_T))

    for key, (value, lineno) in raw.items():
        if key == "kind":
            fields["kind"] = value
        elif key == "alpha":
            fields["alpha"] = _parse_complex(value, key, lineno)
        elif key in ("x0", "p0"):
            fields[key] = _parse_float(value, key, lineno)
        elif key == "n":
            fields["n"] = _parse_int(value, key, lineno)
        elif key == "dim":
            fields["dim"] = None if value == "auto" else _parse_int(value, key, lineno)
        elif key == "epsilon":
            fields["epsilon"] = _parse_float(value, key, lineno)
        elif key in ("x_min", "x_max"):
            grid_x[key] = _parse_float(value, key, lineno)
        elif key == "x_points":
            grid_x[key] = _parse_int(value, key, lineno)
        elif key in ("t_min", "t_max"):
            grid_t[key] = _parse_float(value, key, lineno)
        elif key == "t_steps":
            grid_t[key] = _parse_int(value, key, lineno)
        elif key == "outputs":
            fields["outputs"] = tuple(
                part.strip() for part in value.split(",") if part.strip()
            )
        elif key == "format":
            fields["format"] = value
        elif key == "prefix":
            fields["prefix"] = value
        else:
            raise ScenarioError("unknown key", key, lineno)

    # the state-parameter group only defaults as a whole, and never for numbers
    group_given = any(k in raw for k in ("alpha", "x0", "p0", "n"))
    if group_given:
        if "x0" in raw and "p0" not in raw:
            raise ScenarioError("x0 and p0 must be given together", "p0")
        if "p0" in raw and "x0" not in raw:
            raise ScenarioError("x0 and p0 must be given together", "x0")
    elif fields.get("kind", "cat_even") != "number":
        fields["x0"] = FIG1_X0
        fields["p0"] = FIG1_P0

    try:
        x_grid = PositionGrid(grid_x["x_min"], grid_x["x_max"], grid_x["x_points"])
    except ValueError as exc:
        raise ScenarioError(str(exc), "x_min") from None
    try:
        t_grid = TimeGrid(grid_t["t_min"], grid_t["t_max"], grid_t["t_steps"])
    except ValueError as exc:
        raise ScenarioError(str(exc), "t_min") from None

    return Scenario(x_grid=x_grid, t_grid=t_grid, **fields)


_PRESETS = {
    "fig1-even": {"kind": "cat_even", "prefix": "fig1_even"},
    "fig1-odd": {"kind": "cat_odd", "prefix": "fig1_odd"},
    "coherent": {
        "kind": "coherent",
        "prefix": "coherent",
        "outputs": ("density_surface", "observables_trace", "photon_distribution"),
    },
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_scenario(name: str) -> Scenario:
    """Built-in scenarios; all three start at x0 = 2^(3/2), p0 = 0."""
    if name not in _PRESETS:
        raise ScenarioError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
    return replace(default_scenario(), **_PRESETS[name])
