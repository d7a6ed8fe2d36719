"""Sectioned key-value scenario configs.

The format is flat and diffable: `[section]` headers, `key = value` lines,
`#` comments. Sections are units, field, particle, wavepacket, grid,
integration, and output; which sections are required depends on the run mode.
Unknown sections or keys are hard parse errors. Every default the parser
fills in is echoed into the resolved scenario, so the JSON summary never
contains silent defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Optional

import numpy as np

from .classical import ParticleState
from .errors import ParseError, ValidationError
from .gauge import EFieldSpec, UnitSystem
from .quantum import Grid2D, WavepacketSpec

__all__ = ["Scenario", "OutputFlags", "parse_config", "scenario_digest_text"]

MODES = ("classical", "quantum", "both")

# section -> key -> (kind, default); REQUIRED means no default
REQUIRED = object()
SCHEMA = {
    "units": {
        "hbar": ("float", 1.0),
        "e_charge": ("float", 1.0),
        "mass": ("float", 1.0),
        "coupling": ("float", 1.0),
    },
    "field": {
        "kind": ("str", "uniform"),
        "e0": ("vec3", (0.0, 0.0, 0.0)),
        "grad_x": ("vec3", (0.0, 0.0, 0.0)),
        "grad_y": ("vec3", (0.0, 0.0, 0.0)),
        "grad_z": ("vec3", (0.0, 0.0, 0.0)),
    },
    "particle": {
        "r0": ("vec3", (0.0, 0.0, 0.0)),
        "p0": ("vec3", REQUIRED),
        "s0": ("vec3", (0.0, 0.0, 1.0)),
    },
    "wavepacket": {
        "center": ("vec2", (0.0, 0.0)),
        "k0": ("vec2", (0.0, 0.0)),
        "width": ("float", REQUIRED),
        "spin": ("vec3", (0.0, 0.0, 1.0)),
    },
    "grid": {
        "nx": ("int", REQUIRED),
        "ny": ("int", REQUIRED),
        "lx": ("float", REQUIRED),
        "ly": ("float", REQUIRED),
    },
    "integration": {
        "mode": ("str", REQUIRED),
        "dt": ("float", 1e-3),
        "n_steps": ("int", 1000),
        "sample_every": ("int", 1),
        "seed": ("int", 0),
    },
    "output": {
        "trajectory_csv": ("bool", True),
        "observables_csv": ("bool", True),
        "summary_json": ("bool", True),
        "svg_plot": ("bool", True),
    },
}


@dataclass(frozen=True)
class OutputFlags:
    trajectory_csv: bool = True
    observables_csv: bool = True
    summary_json: bool = True
    svg_plot: bool = True


@dataclass(eq=False)
class Scenario:
    """Fully validated run configuration."""

    units: UnitSystem
    field: EFieldSpec
    mode: str
    dt: float
    n_steps: int
    sample_every: int
    seed: int
    outputs: OutputFlags
    particle: Optional[ParticleState] = None
    wavepacket: Optional[WavepacketSpec] = None
    grid: Optional[Grid2D] = None
    echo: Dict[str, Dict[str, object]] = dc_field(default_factory=dict)


def _parse_value(kind: str, raw: str, line_no: int, col: int):
    def fail(msg):
        raise ParseError(msg, line_no, col)

    parts = raw.split()
    if kind == "str":
        if len(parts) != 1:
            fail(f"expected a single token, got {raw!r}")
        return parts[0]
    if kind == "bool":
        if raw.strip().lower() in ("true", "yes", "on", "1"):
            return True
        if raw.strip().lower() in ("false", "no", "off", "0"):
            return False
        fail(f"expected a boolean, got {raw!r}")
    if kind == "int":
        try:
            return int(raw.strip())
        except ValueError:
            fail(f"expected an integer, got {raw!r}")
    if kind == "float":
        try:
            return float(raw.strip())
        except ValueError:
            fail(f"expected a number, got {raw!r}")
    if kind in ("vec2", "vec3"):
        n = 2 if kind == "vec2" else 3
        if len(parts) != n:
            fail(f"expected {n} numbers, got {raw!r}")
        try:
            return tuple(float(p) for p in parts)
        except ValueError:
            fail(f"expected {n} numbers, got {raw!r}")
    raise AssertionError(f"unknown kind {kind}")


def _tokenize(text: str):
    """Yields (line_no, kind, payload) with kind 'section' or 'pair'."""
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = raw_line.index(stripped[0]) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", line_no, col)
            yield line_no, col, "section", stripped[1:-1].strip()
        else:
            if "=" not in stripped:
                raise ParseError(f"expected 'key = value', got {stripped!r}",
                                 line_no, col)
            key, _, value = stripped.partition("=")
            if not key.strip():
                raise ParseError("missing key before '='", line_no, col)
            if not value.strip():
                raise ParseError(f"missing value for key {key.strip()!r}",
                                 line_no, col)
            yield line_no, col, "pair", (key.strip(), value.strip())


def parse_config(text: str) -> Scenario:
    """Parse and validate a scenario config; returns the resolved Scenario.

    Unknown sections and keys raise ParseError with their location; semantic
    problems (mode/section mismatches, bad grids, unresolvable packets) raise
    ValidationError naming the field.
    """
    seen: Dict[str, Dict[str, object]] = {}
    section = None
    for line_no, col, kind, payload in _tokenize(text):
        if kind == "section":
            if payload not in SCHEMA:
                raise ParseError(f"unknown section [{payload}]", line_no, col)
            if payload in seen:
                raise ParseError(f"duplicate section [{payload}]", line_no, col)
            section = payload
            seen[section] = {}
            continue
        key, raw_value = payload
        if section is None:
            raise ParseError(f"key {key!r} before any [section] header", line_no, col)
        if key not in SCHEMA[section]:
            raise ParseError(f"unknown key {key!r} in section [{section}]",
                             line_no, col)
        if key in seen[section]:
            raise ParseError(f"duplicate key {key!r} in section [{section}]",
                             line_no, col)
        value_kind, _ = SCHEMA[section][key]
        seen[section][key] = _parse_value(value_kind, raw_value, line_no, col)
    return _build_scenario(seen)


def _resolve(seen, section, key):
    kind, default = SCHEMA[section][key]
    if section in seen and key in seen[section]:
        return seen[section][key], False
    if default is REQUIRED:
        raise ValidationError(f"{section}.{key}", "required key is missing")
    return default, True


def _build_scenario(seen: Dict[str, Dict[str, object]]) -> Scenario:
    if "integration" not in seen:
        raise ValidationError("integration", "section is required")
    mode, _ = _resolve(seen, "integration", "mode")
    if mode not in MODES:
        raise ValidationError("integration.mode",
                              f"must be one of {', '.join(MODES)}; got {mode!r}")

    needs_particle = mode == "classical"
    needs_packet = mode in ("quantum", "both")
    if needs_particle and "particle" not in seen:
        raise ValidationError("particle", "section is required in classical mode")
    if needs_packet and ("wavepacket" not in seen or "grid" not in seen):
        raise ValidationError("wavepacket/grid",
                              f"sections are required in {mode} mode")
    if not needs_particle and "particle" in seen:
        raise ValidationError("particle", f"section is not allowed in {mode} mode")
    if not needs_packet:
        for extra in ("wavepacket", "grid"):
            if extra in seen:
                raise ValidationError(extra,
                                      "section is not allowed in classical mode")

    echo: Dict[str, Dict[str, object]] = {}

    def resolve_section(name) -> Dict[str, object]:
        out = {}
        for key in SCHEMA[name]:
            value, _ = _resolve(seen, name, key)
            out[key] = value
        echo[name] = dict(out)
        return out

    u = resolve_section("units")
    units = UnitSystem(u["hbar"], u["e_charge"], u["mass"], u["coupling"])

    f = resolve_section("field")
    if f["kind"] == "uniform":
        for row in ("grad_x", "grad_y", "grad_z"):
            if any(v != 0.0 for v in f[row]):
                raise ValidationError(f"field.{row}",
                                      "gradient rows must be zero for kind=uniform")
        field_spec = EFieldSpec.uniform(f["e0"])
    elif f["kind"] == "gradient":
        field_spec = EFieldSpec.linear_gradient(
            f["e0"], np.array([f["grad_x"], f["grad_y"], f["grad_z"]]))
    else:
        raise ValidationError("field.kind",
                              f"must be 'uniform' or 'gradient'; got {f['kind']!r}")
    if needs_packet and not field_spec.is_uniform:
        raise ValidationError("field.kind",
                              f"{mode} mode requires a uniform field")

    g = resolve_section("integration")
    if not g["dt"] > 0:
        raise ValidationError("integration.dt", "must be positive")
    if g["n_steps"] < 1:
        raise ValidationError("integration.n_steps", "must be at least 1")
    if not 1 <= g["sample_every"] <= g["n_steps"]:
        raise ValidationError("integration.sample_every",
                              "must be in [1, n_steps]")
    if g["seed"] < 0:
        raise ValidationError("integration.seed", "must be non-negative")

    o = resolve_section("output")
    outputs = OutputFlags(o["trajectory_csv"], o["observables_csv"],
                          o["summary_json"], o["svg_plot"])

    particle = None
    if needs_particle:
        p = resolve_section("particle")
        s = np.asarray(p["s0"], dtype=float)
        if abs(np.linalg.norm(s) - 1.0) > 1e-9:
            raise ValidationError("particle.s0", "must be a unit vector")
        particle = ParticleState(np.asarray(p["r0"]), np.asarray(p["p0"]), s)

    wavepacket = None
    grid = None
    if needs_packet:
        gr = resolve_section("grid")
        grid = Grid2D(gr["nx"], gr["ny"], gr["lx"], gr["ly"])
        w = resolve_section("wavepacket")
        spin = np.asarray(w["spin"], dtype=float)
        if abs(np.linalg.norm(spin) - 1.0) > 1e-9:
            raise ValidationError("wavepacket.spin", "must be a unit vector")
        wavepacket = WavepacketSpec(w["center"], w["k0"], w["width"], spin)
        if wavepacket.width < 4.0 * max(grid.dx, grid.dy):
            raise ValidationError("wavepacket.width",
                                  "unresolvable wavepacket: below four grid cells")
        if wavepacket.width > min(grid.lx, grid.ly) / 8.0:
            raise ValidationError("wavepacket.width",
                                  "unresolvable wavepacket: above an eighth of the box")

    return Scenario(units=units, field=field_spec, mode=mode,
                    dt=g["dt"], n_steps=g["n_steps"],
                    sample_every=g["sample_every"], seed=g["seed"],
                    outputs=outputs, particle=particle, wavepacket=wavepacket,
                    grid=grid, echo=echo)


def scenario_digest_text(scenario: Scenario) -> str:
    """Canonical text of the resolved scenario, used for digests."""
    lines = []
    for section in sorted(scenario.echo):
        for key in sorted(scenario.echo[section]):
            lines.append(f"{section}.{key}={scenario.echo[section][key]!r}")
    return "\n".join(lines)
