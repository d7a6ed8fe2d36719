"""Scenario execution: classical and quantum pipelines plus file outputs.

Both-mode runs derive the classical initial state from the wavepacket (same
position and spin; kinetic momentum hbar*k0 - e<A>) and append a comparison
section with the trajectory deviation and the Ehrenfest residuals. All
outputs are deterministic; wall-clock timing is kept out of the files so
identical configs produce byte-identical results.
"""

from __future__ import annotations

import hashlib
import math
import os
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from .classical import ParticleState, TrajectorySeries, integrate_trajectory
from .config import OutputFlags, Scenario, parse_config, scenario_digest_text
from .errors import ValidationError
from .outputs import (
    SCHEMA_VERSION,
    write_observables_csv,
    write_summary_json,
    write_svg,
    write_trajectory_csv,
)
from .quantum import EhrenfestReport, QuantumRun, ehrenfest_series
from .verify import RunReport

__all__ = ["run_scenario", "run_sweep", "classical_init_from_wavepacket"]


def _digest(scenario: Scenario) -> str:
    return hashlib.sha256(scenario_digest_text(scenario).encode()).hexdigest()[:16]


def classical_init_from_wavepacket(scenario: Scenario) -> ParticleState:
    """Matching classical start: kinetic momentum is hbar*k0 - e<A>."""
    wp = scenario.wavepacket
    u = scenario.units
    r0 = np.array([wp.center[0], wp.center[1], 0.0])
    hbar_k = u.hbar * np.array([wp.k0[0], wp.k0[1], 0.0])
    mean_gauge = u.coupling * np.cross(scenario.field.e0, wp.spin)
    return ParticleState(r0, hbar_k - u.e_charge * mean_gauge, wp.spin)


def _run_classical(scenario: Scenario) -> TrajectorySeries:
    init = scenario.particle
    if init is None:
        init = classical_init_from_wavepacket(scenario)
    return integrate_trajectory(init, scenario.field, scenario.units,
                                scenario.dt, scenario.n_steps)


def _run_quantum(scenario: Scenario) -> Tuple[QuantumRun, EhrenfestReport]:
    return ehrenfest_series(scenario.wavepacket, scenario.grid, scenario.field,
                            scenario.units, scenario.dt, scenario.n_steps,
                            scenario.sample_every)


def _comparison(scenario: Scenario, series: TrajectorySeries,
                run: QuantumRun, ehr: EhrenfestReport) -> Dict[str, float]:
    """Quantum mean position against the classical trajectory, in plane."""
    max_dev = 0.0
    for rec in run.records:
        idx = int(round(rec.t / scenario.dt))
        idx = min(idx, len(series) - 1)
        dev = float(np.abs(rec.mean_r[:2] - series.positions[idx, :2]).max())
        max_dev = max(max_dev, dev)
    width = scenario.wavepacket.width
    return {
        "max_position_deviation": max_dev,
        "deviation_over_width": max_dev / width,
        "residual_velocity": ehr.residual_velocity,
        "residual_momentum": ehr.residual_momentum,
        "residual_canonical_drive": ehr.residual_canonical_drive,
        "residual_velocity_karplus": ehr.residual_velocity_karplus,
    }


def _series_tail(series: TrajectorySeries) -> Dict[str, List[float]]:
    return {
        "t": float(series.times[-1]),
        "r": [float(v) for v in series.positions[-1]],
        "p": [float(v) for v in series.momenta[-1]],
        "s": [float(v) for v in series.spins[-1]],
        "spin_drift_max": float(series.spin_drift_max),
    }


def _record_dict(rec) -> Dict[str, object]:
    def f(x):
        return float(x) if math.isfinite(float(x)) else None

    return {
        "t": float(rec.t),
        "norm": float(rec.norm),
        "mean_r": [float(v) for v in rec.mean_r[:2]],
        "mean_p": [float(v) for v in rec.mean_p[:2]],
        "mean_sigma": [float(v) for v in rec.mean_sigma],
        "y_centroid_up": f(rec.y_centroid_up),
        "y_centroid_down": f(rec.y_centroid_down),
    }


def run_scenario(scenario: Scenario, out_dir: str) -> RunReport:
    """Execute the scenario, write the selected outputs, return the report."""
    t0 = time.time()
    rep = RunReport(digest=_digest(scenario))
    flags: OutputFlags = scenario.outputs
    os.makedirs(out_dir, exist_ok=True)
    summary: Dict[str, object] = {
        "schema_version": SCHEMA_VERSION,
        "digest": rep.digest,
        "mode": scenario.mode,
        "config": scenario.echo,
        "results": {},
    }
    results: Dict[str, object] = summary["results"]

    series: Optional[TrajectorySeries] = None
    run: Optional[QuantumRun] = None

    if scenario.mode in ("classical", "both"):
        series = _run_classical(scenario)
        rep.add("classical.spin-norm-drift", series.spin_drift_max, 1e-6)
        results["classical"] = _series_tail(series)
        if flags.trajectory_csv:
            write_trajectory_csv(os.path.join(out_dir, "trajectory.csv"),
                                 series, scenario.sample_every)
        if flags.svg_plot:
            step = scenario.sample_every
            write_svg(os.path.join(out_dir, "trajectory.svg"),
                      [("r (x, y)", series.positions[::step, 0],
                        series.positions[::step, 1])],
                      "classical trajectory", "x", "y")

    if scenario.mode in ("quantum", "both"):
        run, ehr = _run_quantum(scenario)
        rep.add("quantum.norm-drift", ehr.norm_drift, 1e-8)
        rep.info("quantum.boundary-fraction", ehr.boundary_fraction,
                 "norm within five cells of the boundary at the final time")
        rep.info("quantum.residual-velocity-karplus", ehr.residual_velocity_karplus,
                 "velocity law residual using the doubled anomalous term")
        rep.add("quantum.ehrenfest-velocity", ehr.residual_velocity, 1e-3)
        rep.add("quantum.ehrenfest-momentum", ehr.residual_momentum, 1e-3)
        results["quantum"] = {
            "final": _record_dict(run.records[-1]),
            "records": [_record_dict(r) for r in run.records],
            "ehrenfest": {
                "residual_velocity": ehr.residual_velocity,
                "residual_momentum": ehr.residual_momentum,
                "residual_canonical_drive": ehr.residual_canonical_drive,
                "residual_velocity_karplus": ehr.residual_velocity_karplus,
                "boundary_fraction": ehr.boundary_fraction,
                "norm_drift": ehr.norm_drift,
            },
        }
        if flags.observables_csv:
            write_observables_csv(os.path.join(out_dir, "observables.csv"),
                                  run.records)
        if flags.svg_plot:
            xs = [r.mean_r[0] for r in run.records]
            curves = [("mean r (x, y)", xs, [r.mean_r[1] for r in run.records]),
                      ("y centroid up", xs, [r.y_centroid_up for r in run.records]),
                      ("y centroid down", xs, [r.y_centroid_down for r in run.records])]
            write_svg(os.path.join(out_dir, "observables.svg"), curves,
                      "wavepacket centroids", "x", "y")

    if scenario.mode == "both":
        comparison = _comparison(scenario, series, run, ehr)
        results["comparison"] = comparison
        rep.add("comparison.position-tracking", comparison["deviation_over_width"],
                0.01, "max |<r>_q - r_cl| over the packet width")

    summary["checks"] = [
        {"name": c.name, "status": c.status, "max_error": c.max_error,
         "detail": c.detail} for c in rep.checks
    ]
    summary["notes"] = rep.notes
    if flags.summary_json:
        write_summary_json(os.path.join(out_dir, "summary.json"), summary)
    rep.elapsed_s = time.time() - t0
    return rep


def run_sweep(config_text: str, param: str, values: List[str],
              out_dir: str) -> List[Tuple[str, RunReport]]:
    """Re-run the scenario with `section.key` overridden by each value."""
    if "." not in param:
        raise ValidationError("sweep.param", "expected section.key")
    section, key = param.split(".", 1)
    reports = []
    index = []
    for value in values:
        text = _override_config(config_text, section, key, value)
        scenario = parse_config(text)
        slug = f"{section}.{key}={value}".replace("/", "_").replace(" ", "_")
        sub = os.path.join(out_dir, slug)
        rep = run_scenario(scenario, sub)
        reports.append((slug, rep))
        index.append({"value": value, "dir": slug, "digest": rep.digest,
                      "ok": rep.ok})
    write_summary_json(os.path.join(out_dir, "sweep.json"),
                       {"schema_version": SCHEMA_VERSION, "param": param,
                        "runs": index})
    return reports


def _override_config(text: str, section: str, key: str, value: str) -> str:
    """Replace (or insert) key = value inside the named section."""
    lines = text.splitlines()
    out = []
    in_section = False
    replaced = False
    inserted_section = False
    for line in lines:
        stripped = line.split("#", 1)[0].strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            if in_section and not replaced:
                out.append(f"{key} = {value}")
                replaced = True
            in_section = stripped[1:-1].strip() == section
            if in_section:
                inserted_section = True
        elif in_section and "=" in stripped:
            existing = stripped.partition("=")[0].strip()
            if existing == key:
                out.append(f"{key} = {value}")
                replaced = True
                continue
        out.append(line)
    if in_section and not replaced:
        out.append(f"{key} = {value}")
        replaced = True
    if not inserted_section:
        out.append(f"[{section}]")
        out.append(f"{key} = {value}")
    return "\n".join(out) + "\n"
