"""Command-line driver: config parsing, dispatch, artifact emission.

Subcommands
-----------

``state``
    Assemble the joint detector/branch matrix for a configured system and
    write ``joint_state.json`` plus ``reduced_internal.json``.
``measure``
    Project onto a measured branch superposition and write
    ``measured_internal.json`` plus ``neglog_matrix.csv``.
``lambda-grid``
    Tabulate the overlap factor over separation grids: one CSV per
    requested ``q`` plus the two on-axis CSVs.
``oracle-validate``
    Cross-check closed forms against the independent quadrature oracles
    and write ``convergence.csv``, ``lambda_oracle_diff.csv`` and
    ``a_sweep.csv``.
``paper-example``
    Run the built-in three-trajectory demonstration, write its 12x12
    negative-log table and a comparison report against the embedded
    reference matrix.
``continuum``
    Evaluate continuous-spectrum kernel slices on configured grids and
    write them as CSV.

Configuration is one JSON file with sections mirroring
:class:`RunConfig`: ``detector``, ``trajectories``, ``interaction``,
``measurement``, ``output``, ``continuum``.  Complex numbers are
``[re, im]`` pairs.  Exit codes: 0 success, 2 configuration error,
3 numerical non-convergence.

Identical configuration produces byte-identical files: floats are
emitted through fixed formats and every iteration order is fixed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .continuum import (
    CouplingFunction,
    SmearedAmplitude,
    continuum_joint_kernel,
    continuum_spectrum_slice,
)
from .detector import (
    DetectorSpec,
    MeasurementBasisVector,
    compare_with_reference,
    joint_state,
    measured_internal,
    neglog_matrix,
    paper_example,
    reduced_internal,
)
from .geometry import Trajectory, TrajectorySet, WedgeError
from .io import (
    block_density_to_dict,
    complex_pair,
    csv_float,
    measured_to_dict,
    pair_to_complex,
    write_csv,
    write_json,
    write_neglog_csv,
)
from .overlaps import QuadratureError, convergence_report, oracle_lambda_quadrature, oracle_overlap_finite_t
from .specfun import lambda_axis_xbar, lambda_axis_xi, lambda_overlap

__all__ = ["ConfigError", "RunConfig", "load_config", "build_run_config", "main"]

_DEFAULT_Q_LIST = (0.0, 1.0, 2.0, 10.0)
_DEFAULT_GRID_STEPS = 25
_DEFAULT_T_LIST = (10.0, 20.0, 40.0, 80.0)
_ORACLE_DIFF_DXI = (-1.5, 0.0, 1.5)
_ORACLE_DIFF_DXBAR = (0.0, 1.0, 2.5)
_A_SWEEP_VALUES = (0.5, 1.0, 2.0)


class ConfigError(Exception):
    """Invalid or missing configuration; messages name the field."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved inputs for the state/measure pipeline."""

    detector: DetectorSpec
    trajectories: TrajectorySet
    epsilon: float
    T: float
    q_tolerance: float
    rindler_a: float
    measurement: MeasurementBasisVector | None
    out_dir: Path
    absolute_scale: bool


def load_config(path: str | Path | None) -> dict[str, Any]:
    """Read the JSON config file; ``None`` yields an empty tree."""
    if path is None:
        return {}
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return data


def _section(raw: Mapping[str, Any], name: str, required: bool) -> Mapping[str, Any] | None:
    if name not in raw:
        if required:
            raise ConfigError(f"{name}: missing required section")
        return None
    value = raw[name]
    if name == "trajectories":
        if not isinstance(value, list):
            raise ConfigError("trajectories: must be a list of trajectory objects")
        return {"_list": value}
    if not isinstance(value, Mapping):
        raise ConfigError(f"{name}: must be a JSON object")
    return value


def _parse_complex_list(values: Any, path: str) -> list[complex]:
    if not isinstance(values, list):
        raise ConfigError(f"{path}: must be a list")
    out = []
    for k, item in enumerate(values):
        if isinstance(item, (int, float)):
            out.append(complex(item))
        elif isinstance(item, list) and len(item) == 2:
            try:
                out.append(pair_to_complex(item))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{path}[{k}]: {exc}") from exc
        else:
            raise ConfigError(f"{path}[{k}]: expected a number or [re, im] pair")
    return out


def _parse_detector(raw: Mapping[str, Any]) -> DetectorSpec:
    section = _section(raw, "detector", required=True)
    if "frequencies" not in section:
        raise ConfigError("detector.frequencies: missing required field")
    freqs = section["frequencies"]
    if not isinstance(freqs, list) or not freqs:
        raise ConfigError("detector.frequencies: must be a nonempty list")
    couplings = None
    if "couplings" in section:
        couplings = _parse_complex_list(section["couplings"], "detector.couplings")
    try:
        return DetectorSpec(
            frequencies=tuple(float(w) for w in freqs),
            couplings=tuple(couplings) if couplings is not None else None,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"detector: {exc}") from exc


def _parse_trajectory_list(raw: Mapping[str, Any]) -> TrajectorySet:
    section = _section(raw, "trajectories", required=True)
    entries = section["_list"]
    if not entries:
        raise ConfigError("trajectories: must contain at least one trajectory")
    amplitudes: list[complex | None] = []
    positions = []
    for k, entry in enumerate(entries):
        if not isinstance(entry, Mapping):
            raise ConfigError(f"trajectories[{k}]: must be an object")
        if "z" not in entry:
            raise ConfigError(f"trajectories[{k}].z: missing required field")
        try:
            z = float(entry["z"])
            x = float(entry.get("x", 0.0))
            y = float(entry.get("y", 0.0))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"trajectories[{k}]: {exc}") from exc
        if "A" in entry:
            value = entry["A"]
            if isinstance(value, (int, float)):
                amplitudes.append(complex(value))
            elif isinstance(value, list) and len(value) == 2:
                amplitudes.append(pair_to_complex(value))
            else:
                raise ConfigError(
                    f"trajectories[{k}].A: expected a number or [re, im] pair"
                )
        else:
            amplitudes.append(None)
        positions.append((z, x, y))
    given = [a for a in amplitudes if a is not None]
    if given and len(given) != len(amplitudes):
        raise ConfigError(
            "trajectories: amplitudes A must be given for all trajectories or none"
        )
    if not given:
        uniform = 1.0 / math.sqrt(len(amplitudes))
        amplitudes = [complex(uniform)] * len(amplitudes)
    try:
        trajectories = tuple(
            Trajectory(z=z, x_perp=(x, y), amplitude=a)
            for (z, x, y), a in zip(positions, amplitudes)
        )
        return TrajectorySet(trajectories)
    except (WedgeError, ValueError) as exc:
        raise ConfigError(f"trajectories: {exc}") from exc


def _float_field(
    section: Mapping[str, Any] | None,
    key: str,
    path: str,
    override: float | None,
    default: float | None,
) -> float | None:
    if override is not None:
        return float(override)
    if section is not None and key in section:
        try:
            return float(section[key])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return default


def build_run_config(
    raw: Mapping[str, Any],
    *,
    out_dir: str | None = None,
    epsilon: float | None = None,
    T: float | None = None,
    q_tolerance: float | None = None,
    need_measurement: bool = False,
) -> RunConfig:
    """Resolve the config tree plus flag overrides into a :class:`RunConfig`.

    Defaults: ``T`` falls back to the compromise interaction time
    ``1/(epsilon*omega_1)`` (long enough for sharp frequency support,
    short enough for the perturbative bound), ``q_tolerance`` to
    ``epsilon``, and ``rindler_a`` to 1.
    """
    detector = _parse_detector(raw)
    trajectories = _parse_trajectory_list(raw)
    interaction = _section(raw, "interaction", required=False)
    eps = _float_field(interaction, "epsilon", "interaction.epsilon", epsilon, None)
    if eps is None:
        raise ConfigError(
            "interaction.epsilon: missing required field (or pass --epsilon)"
        )
    if not (0.0 < eps < 1.0):
        raise ConfigError(f"interaction.epsilon: must lie in (0, 1), got {eps}")
    T_value = _float_field(interaction, "T", "interaction.T", T, None)
    if T_value is None:
        T_value = 1.0 / (eps * detector.frequencies[0])
    if not T_value > 0.0:
        raise ConfigError(f"interaction.T: must be positive, got {T_value}")
    tol = _float_field(interaction, "q_tolerance", "interaction.q_tolerance", q_tolerance, eps)
    if not tol > 0.0:
        raise ConfigError(f"interaction.q_tolerance: must be positive, got {tol}")
    a = _float_field(interaction, "rindler_a", "interaction.rindler_a", None, 1.0)
    if not a > 0.0:
        raise ConfigError(f"interaction.rindler_a: must be positive, got {a}")

    measurement = None
    meas_section = _section(raw, "measurement", required=False)
    if meas_section is not None:
        if "amplitudes" not in meas_section:
            raise ConfigError("measurement.amplitudes: missing required field")
        amps = _parse_complex_list(meas_section["amplitudes"], "measurement.amplitudes")
        try:
            measurement = MeasurementBasisVector(amplitudes=tuple(amps))
        except ValueError as exc:
            raise ConfigError(f"measurement.amplitudes: {exc}") from exc
        if len(amps) != len(trajectories):
            raise ConfigError(
                f"measurement.amplitudes: length {len(amps)} does not match "
                f"{len(trajectories)} trajectories"
            )
    elif need_measurement:
        # The measured branch defaults to the preparation amplitudes.
        measurement = MeasurementBasisVector(amplitudes=trajectories.amplitudes)

    output = _section(raw, "output", required=False)
    directory = out_dir
    if directory is None and output is not None and "directory" in output:
        directory = str(output["directory"])
    if directory is None:
        directory = "."
    absolute = False
    if output is not None and "scale" in output:
        if output["scale"] == "absolute":
            absolute = True
        elif output["scale"] != "per_eps2T":
            raise ConfigError(
                f"output.scale: expected 'per_eps2T' or 'absolute', got {output['scale']!r}"
            )
    return RunConfig(
        detector=detector,
        trajectories=trajectories,
        epsilon=eps,
        T=T_value,
        q_tolerance=tol,
        rindler_a=a,
        measurement=measurement,
        out_dir=Path(directory),
        absolute_scale=absolute,
    )


def _emit_warnings(warnings: Sequence[str]) -> None:
    for message in warnings:
        print(f"warning: {message}", file=sys.stderr)


def _ensure_out_dir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_state(cfg: RunConfig) -> int:
    """Emit the joint matrix and its internal reduction."""
    rho = joint_state(cfg.detector, cfg.trajectories, tol=cfg.q_tolerance)
    _emit_warnings(rho.warnings)
    emitted = rho.to_absolute(cfg.epsilon, cfg.T) if cfg.absolute_scale else rho
    if cfg.absolute_scale:
        _emit_warnings(emitted.warnings[len(rho.warnings):])
    out = _ensure_out_dir(cfg.out_dir)
    write_json(
        out / "joint_state.json",
        block_density_to_dict(emitted, cfg.detector.frequencies, cfg.trajectories),
    )
    reduced = reduced_internal(emitted, cfg.trajectories)
    write_json(
        out / "reduced_internal.json",
        {
            "scale": "per_eps2T" if not cfg.absolute_scale else {
                "absolute": {"epsilon": cfg.epsilon, "T": cfg.T}
            },
            "levels": [float(w) for w in cfg.detector.frequencies],
            "values": [float(v) for v in reduced],
        },
    )
    return 0


def cmd_measure(cfg: RunConfig) -> int:
    """Emit the post-measurement internal matrix and its neglog table."""
    rho = joint_state(cfg.detector, cfg.trajectories, tol=cfg.q_tolerance)
    _emit_warnings(rho.warnings)
    basis = cfg.measurement
    if basis is None:
        basis = MeasurementBasisVector(amplitudes=cfg.trajectories.amplitudes)
    measured = measured_internal(rho, basis, cfg.trajectories, cfg.detector)
    out = _ensure_out_dir(cfg.out_dir)
    scale: Any = "per_eps2T"
    emitted = measured
    if cfg.absolute_scale:
        emitted = measured * (cfg.epsilon**2 * cfg.T)
        scale = {"absolute": {"epsilon": cfg.epsilon, "T": cfg.T}}
    write_json(
        out / "measured_internal.json",
        measured_to_dict(
            emitted,
            cfg.detector.frequencies,
            cfg.trajectories,
            basis.amplitudes,
            scale=scale,
        ),
    )
    # The negative-log display is always per unit eps^2 T, the convention
    # in which the reference table is expressed.
    write_neglog_csv(
        out / "neglog_matrix.csv",
        neglog_matrix(measured, cfg.detector.level_count),
    )
    return 0


def _parse_q_list(text: str | None) -> tuple[float, ...]:
    if text is None:
        return _DEFAULT_Q_LIST
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"--q: {exc}") from exc
    if not values:
        raise ConfigError("--q: expected a comma-separated list of values")
    if any(q < 0.0 for q in values):
        raise ConfigError("--q: values must be nonnegative")
    return values


def _q_tag(q: float) -> str:
    text = csv_float(q)
    return text.replace("-", "m").replace("+", "")


def cmd_lambda_grid(out_dir: Path, q_list: tuple[float, ...], steps: int) -> int:
    """Tabulate the overlap factor over separation grids."""
    if steps < 2:
        raise ConfigError(f"--grid: need at least 2 steps per axis, got {steps}")
    out = _ensure_out_dir(out_dir)
    xi = np.linspace(-3.0, 3.0, steps)
    xbar = np.linspace(0.0, 5.0, steps)
    for q in q_list:
        values = lambda_overlap(q, xi[:, None], xbar[None, :])
        rows = []
        for i, dxi in enumerate(xi):
            for j, dxb in enumerate(xbar):
                rows.append((dxi, dxb, values[i, j]))
        write_csv(out / f"lambda_grid_q{_q_tag(q)}.csv", ("dxi", "dxbar", "lambda"), rows)
    axis_rows = []
    for q in q_list:
        values = lambda_axis_xi(q, xi)
        axis_rows.extend((q, dxi, v) for dxi, v in zip(xi, values))
    write_csv(out / "lambda_axis_xi.csv", ("q", "dxi", "lambda"), axis_rows)
    axis_rows = []
    for q in q_list:
        values = lambda_axis_xbar(q, xbar)
        axis_rows.extend((q, dxb, v) for dxb, v in zip(xbar, values))
    write_csv(out / "lambda_axis_xbar.csv", ("q", "dxbar", "lambda"), axis_rows)
    return 0


def cmd_oracle_validate(out_dir: Path, rindler_a: float, T_list: Sequence[float]) -> int:
    """Cross-check closed forms against the quadrature oracles."""
    out = _ensure_out_dir(out_dir)
    try:
        report = convergence_report(omega=1.0, z=1.0, a=rindler_a, T_list=T_list)
    except ValueError as exc:
        raise ConfigError(f"oracle.T_list: {exc}") from exc
    _emit_warnings(report.warnings)
    write_csv(
        out / "convergence.csv",
        ("T", "M", "oracle", "asymptotic", "rel_error"),
        [(r.T, r.M, r.oracle, r.asymptotic, r.rel_error) for r in report.rows],
    )

    rows = []
    for q in _DEFAULT_Q_LIST:
        for dxi in _ORACLE_DIFF_DXI:
            quad = oracle_lambda_quadrature(q, dxi, np.array(_ORACLE_DIFF_DXBAR))
            for dxb, quad_value in zip(_ORACLE_DIFF_DXBAR, quad):
                closed = float(lambda_overlap(q, dxi, dxb))
                rows.append((q, dxi, dxb, closed, quad_value, quad_value - closed))
    write_csv(
        out / "lambda_oracle_diff.csv",
        ("q", "dxi", "dxbar", "closed", "quadrature", "diff"),
        rows,
    )

    traj = Trajectory(z=1.0)
    T_ref = float(T_list[-1])
    sweep_rows = []
    for a in _A_SWEEP_VALUES:
        value = oracle_overlap_finite_t(1.0, traj, 1.0, traj, T_ref, a=a)
        sweep_rows.append((a, T_ref, value.real))
    write_csv(out / "a_sweep.csv", ("a", "T", "oracle"), sweep_rows)
    return 0


def cmd_paper_example(out_dir: Path) -> int:
    """Run the three-trajectory demonstration and compare to the reference."""
    result = paper_example()
    out = _ensure_out_dir(out_dir)
    write_neglog_csv(out / "neglog_matrix.csv", result.neglog)
    ok, problems = compare_with_reference(result.neglog)
    lines = [
        "three-trajectory demonstration: 12 levels, z = (0.5, 1.0, 1.5)",
        f"entries compared against the embedded reference table: "
        f"{int(np.sum(~np.isnan(result.neglog)))} printed, "
        f"{int(np.sum(np.isnan(result.neglog)))} absent",
        f"verdict: {'PASS' if ok else 'FAIL'}",
    ]
    lines.extend(f"mismatch: {p}" for p in problems)
    (out / "paper_example_report.txt").write_text(
        "\n".join(lines) + "\n", encoding="utf-8", newline="\n"
    )
    print(f"verdict: {'PASS' if ok else 'FAIL'}")
    return 0


def _parse_amplitude_section(section: Mapping[str, Any]) -> SmearedAmplitude:
    for key in ("x", "y", "z", "values"):
        if key not in section:
            raise ConfigError(f"continuum.amplitude.{key}: missing required field")
    x = np.asarray(section["x"], dtype=float)
    y = np.asarray(section["y"], dtype=float)
    z = np.asarray(section["z"], dtype=float)
    values = _parse_complex_list(section["values"], "continuum.amplitude.values")
    expected = x.size * y.size * z.size
    if len(values) != expected:
        raise ConfigError(
            f"continuum.amplitude.values: expected {expected} row-major samples, "
            f"got {len(values)}"
        )
    spacings = None
    if "spacings" in section:
        spacing_list = section["spacings"]
        if not isinstance(spacing_list, list) or len(spacing_list) != 3:
            raise ConfigError("continuum.amplitude.spacings: expected [dx, dy, dz]")
        spacings = tuple(float(s) for s in spacing_list)
    try:
        return SmearedAmplitude(
            x=x,
            y=y,
            z=z,
            values=np.array(values, dtype=complex).reshape(x.size, y.size, z.size),
            spacings=spacings,
        )
    except ValueError as exc:
        raise ConfigError(f"continuum.amplitude: {exc}") from exc


def _parse_coupling_section(section: Mapping[str, Any]) -> CouplingFunction:
    for key in ("omega", "values"):
        if key not in section:
            raise ConfigError(f"continuum.coupling.{key}: missing required field")
    omega = np.asarray(section["omega"], dtype=float)
    values = _parse_complex_list(section["values"], "continuum.coupling.values")
    if omega.size != len(values):
        raise ConfigError(
            "continuum.coupling: omega and values must have equal length"
        )
    try:
        return CouplingFunction(omega=omega, values=np.array(values, dtype=complex))
    except ValueError as exc:
        raise ConfigError(f"continuum.coupling: {exc}") from exc


def cmd_continuum(raw: Mapping[str, Any], out_dir: Path) -> int:
    """Emit diagonal kernel slices for a configured continuum system.

    ``continuum_slice.csv`` holds the diagonal kernel at every transverse
    grid point for each requested frequency; the ``_rescaled`` companion
    holds the same system after the exact scale transformation (grid
    doubled, frequencies halved), whose entries differ by the constant
    grid-measure factor.  ``continuum_spectrum.csv`` holds the
    transverse-aggregated spectrum at the fixed height.
    """
    section = _section(raw, "continuum", required=True)
    if "amplitude" not in section or not isinstance(section["amplitude"], Mapping):
        raise ConfigError("continuum.amplitude: missing required section")
    if "coupling" not in section or not isinstance(section["coupling"], Mapping):
        raise ConfigError("continuum.coupling: missing required section")
    amplitude = _parse_amplitude_section(section["amplitude"])
    coupling = _parse_coupling_section(section["coupling"])
    if "z_fixed" not in section:
        raise ConfigError("continuum.z_fixed: missing required field")
    if "omega_grid" not in section:
        raise ConfigError("continuum.omega_grid: missing required field")
    z_fixed = float(section["z_fixed"])
    omega_grid = np.asarray(section["omega_grid"], dtype=float)
    if omega_grid.ndim != 1 or omega_grid.size == 0 or np.any(omega_grid <= 0.0):
        raise ConfigError("continuum.omega_grid: must be positive frequencies")

    out = _ensure_out_dir(out_dir)
    header = ("q", "x", "y", "z", "xp", "yp", "zp", "re", "im")

    def _diagonal_rows(amp: SmearedAmplitude, zeta: CouplingFunction, zf: float, omegas):
        rows = []
        for omega in omegas:
            q = float(omega) * zf
            for xv in amp.x:
                for yv in amp.y:
                    point = (float(xv), float(yv), zf)
                    value = continuum_joint_kernel(q, point, point, amp, zeta)
                    rows.append(
                        (q, point[0], point[1], zf, point[0], point[1], zf,
                         value.real, value.imag)
                    )
        return rows

    write_csv(
        out / "continuum_slice.csv",
        header,
        _diagonal_rows(amplitude, coupling, z_fixed, omega_grid),
    )

    # Exact scale transformation: lengths doubled, frequencies halved.
    # Kernel entries pick up the constant grid-measure factor and nothing
    # else, so corresponding rows of the two files have a fixed ratio.
    scaled_amp = SmearedAmplitude(
        x=2.0 * amplitude.x,
        y=2.0 * amplitude.y,
        z=2.0 * amplitude.z,
        values=amplitude.values / math.sqrt(8.0),
        spacings=tuple(2.0 * s for s in amplitude.spacings),
    )
    scaled_coupling = CouplingFunction(
        omega=0.5 * coupling.omega, values=coupling.values
    )
    write_csv(
        out / "continuum_slice_rescaled.csv",
        header,
        _diagonal_rows(scaled_amp, scaled_coupling, 2.0 * z_fixed, 0.5 * omega_grid),
    )

    spectrum = continuum_spectrum_slice(amplitude, coupling, z_fixed, omega_grid)
    write_csv(
        out / "continuum_spectrum.csv",
        ("omega", "q", "value"),
        [(w, w * z_fixed, v) for w, v in zip(omega_grid, spectrum)],
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON configuration file")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--tol", metavar="X", type=float, help="frequency-alignment tolerance")
    common.add_argument("--epsilon", metavar="X", type=float, help="coupling strength in (0,1)")
    common.add_argument("--T", metavar="X", type=float, help="interaction window width")
    common.add_argument("--q", metavar="LIST", help="comma-separated q values")
    common.add_argument("--grid", metavar="N", type=int, help="grid steps per axis")

    parser = argparse.ArgumentParser(
        prog="superthermal",
        description=(
            "Accelerated-trajectory superposition toolkit: joint detector/field "
            "states, overlap factors, and their validation oracles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("state", parents=[common], help="emit the joint matrix and its reduction")
    sub.add_parser("measure", parents=[common], help="emit the post-measurement matrix")
    sub.add_parser("lambda-grid", parents=[common], help="tabulate the overlap factor")
    sub.add_parser("oracle-validate", parents=[common], help="run quadrature cross-checks")
    sub.add_parser("paper-example", parents=[common], help="run the three-trajectory demonstration")
    sub.add_parser("continuum", parents=[common], help="emit continuum kernel slices")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        raw = load_config(args.config)
        out_dir = Path(args.out) if args.out is not None else None
        if args.command in ("state", "measure"):
            cfg = build_run_config(
                raw,
                out_dir=args.out,
                epsilon=args.epsilon,
                T=args.T,
                q_tolerance=args.tol,
                need_measurement=args.command == "measure",
            )
            return cmd_state(cfg) if args.command == "state" else cmd_measure(cfg)
        if out_dir is None:
            output = _section(raw, "output", required=False)
            if output is not None and "directory" in output:
                out_dir = Path(str(output["directory"]))
            else:
                out_dir = Path(".")
        if args.command == "lambda-grid":
            steps = args.grid if args.grid is not None else _DEFAULT_GRID_STEPS
            return cmd_lambda_grid(out_dir, _parse_q_list(args.q), steps)
        if args.command == "oracle-validate":
            interaction = _section(raw, "interaction", required=False)
            a = _float_field(interaction, "rindler_a", "interaction.rindler_a", None, 1.0)
            if not a > 0.0:
                raise ConfigError(f"interaction.rindler_a: must be positive, got {a}")
            oracle = _section(raw, "oracle", required=False)
            T_list = _DEFAULT_T_LIST
            if oracle is not None and "T_list" in oracle:
                try:
                    T_list = tuple(float(t) for t in oracle["T_list"])
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"oracle.T_list: {exc}") from exc
            return cmd_oracle_validate(out_dir, a, T_list)
        if args.command == "paper-example":
            return cmd_paper_example(out_dir)
        if args.command == "continuum":
            return cmd_continuum(raw, out_dir)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
