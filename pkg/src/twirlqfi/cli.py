"""Command-line interface: scenario execution, sweeps, audits, optimization.

The tool reads a JSON config, runs the requested scenario (or sweep), and
emits plot-ready flat records; no plotting happens here.  All state enters
through flags and the config file, never the environment, and identical
configs produce byte-identical output files (floats are written with
shortest round-trip formatting, columns in a frozen order).

Exit codes: 0 success, 2 config error, 3 numerical error, 4 I/O error.
On failure a machine-readable JSON error record goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .channels import DEFAULT_CLUSTER_TOL, spectral_projectors
from .hilbert import HermitianOperator, StateVector
from .metrology import (
    Scenario,
    max_loss_residuals,
    no_loss_residual,
    report,
)
from .models import (
    QrfStateSpec,
    TruncationError,
    example1_qfi_closed_form,
    example1_scenario,
    example2_system,
    example3_system,
    qrf_amplitudes,
)
from .probeopt import (
    FIXED_MEAN_ENERGY,
    OptProblem,
    coherent_weight_profile,
    optimize_probe,
)

__all__ = ["main", "ConfigError"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

REPORT_FIELDS = (
    "alice_qfi",
    "bob_qfi",
    "loss",
    "no_loss",
    "max_loss",
    "cov_gk",
    "mean_commutator_re",
    "mean_commutator_im",
)

_SCENARIOS = ("example1", "example2", "example3", "custom")
_TOP_KEYS = {
    "scenario",
    "sweep",
    "qrf",
    "params",
    "output",
    "rng_seed",
    "dim",
    "k_matrix",
    "g_matrix",
    "psi0",
}
_SWEEP_KEYS = {"variable", "start", "stop", "points"}
_QRF_KEYS = {"kind", "N", "alpha", "r", "x_fraction", "amplitudes"}
_OUTPUT_KEYS = {"path", "format"}
_ALLOWED_PARAMS = {
    "example1": {"lambda", "cluster_tol", "truncation", "N", "alpha_sq", "seeds", "opt_tol"},
    "example2": {"lambda", "cluster_tol", "omega", "kappa", "N", "n_total_max"},
    "example3": {"lambda", "cluster_tol", "z", "x", "y"},
    "custom": {"lambda", "cluster_tol"},
}
_SWEEP_VARIABLES = {
    "example1": {"N", "alpha_sq", "lambda", "mean_energy"},
    "example2": {"lambda", "N"},
    "example3": {"lambda", "z"},
    "custom": {"lambda"},
}


class ConfigError(ValueError):
    """The config file failed to parse or validate."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    points: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    sweep: SweepSpec | None
    qrf: QrfStateSpec | None
    params: dict
    out_path: str | None
    out_format: str
    rng_seed: int
    custom: dict | None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _complex_entry(raw, where: str) -> complex:
    _require(
        isinstance(raw, list) and len(raw) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw),
        f"{where}: complex entries must be [re, im] number pairs",
    )
    return complex(raw[0], raw[1])


def _complex_matrix(raw, dim: int, where: str) -> np.ndarray:
    _require(isinstance(raw, list) and len(raw) == dim, f"{where}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(raw):
        _require(isinstance(row, list) and len(row) == dim, f"{where}: row {i} has wrong length")
        for j, entry in enumerate(row):
            out[i, j] = _complex_entry(entry, f"{where}[{i}][{j}]")
    return out


def _complex_vector(raw, dim: int, where: str) -> np.ndarray:
    _require(isinstance(raw, list) and len(raw) == dim, f"{where}: expected {dim} entries")
    return np.array([_complex_entry(v, f"{where}[{i}]") for i, v in enumerate(raw)])


def _parse_qrf(raw) -> QrfStateSpec:
    _require(isinstance(raw, dict), "qrf must be an object")
    unknown = set(raw) - _QRF_KEYS
    _require(not unknown, f"unknown qrf keys: {sorted(unknown)}")
    _require("kind" in raw, "qrf needs a 'kind'")
    amplitudes = raw.get("amplitudes")
    if amplitudes is not None:
        amplitudes = tuple(
            _complex_entry(v, f"qrf.amplitudes[{i}]") for i, v in enumerate(amplitudes)
        )
    try:
        return QrfStateSpec(
            kind=raw["kind"],
            n_fock=raw.get("N"),
            alpha=raw.get("alpha"),
            r=raw.get("r"),
            x_fraction=raw.get("x_fraction"),
            amplitudes=amplitudes,
        )
    except ValueError as exc:
        raise ConfigError(f"invalid qrf spec: {exc}") from exc


def load_config(path: str, overrides: argparse.Namespace | None = None) -> RunConfig:
    """Parse and validate a config file; flag overrides win over file values."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"parse error in {path}: {exc}") from exc
    _require(isinstance(raw, dict), "config root must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    _require(not unknown, f"unknown config keys: {sorted(unknown)}")
    scenario = raw.get("scenario")
    _require(scenario in _SCENARIOS, f"scenario must be one of {_SCENARIOS}")

    sweep = None
    if raw.get("sweep") is not None:
        s = raw["sweep"]
        _require(isinstance(s, dict), "sweep must be an object")
        unknown = set(s) - _SWEEP_KEYS
        _require(not unknown, f"unknown sweep keys: {sorted(unknown)}")
        _require(_SWEEP_KEYS <= set(s), "sweep needs variable, start, stop, points")
        _require(
            s["variable"] in _SWEEP_VARIABLES[scenario],
            f"scenario {scenario} cannot sweep {s['variable']!r}",
        )
        points = s["points"]
        _require(isinstance(points, int) and points >= 1, "sweep points must be >= 1")
        sweep = SweepSpec(s["variable"], float(s["start"]), float(s["stop"]), points)

    params = raw.get("params", {})
    _require(isinstance(params, dict), "params must be an object")
    unknown = set(params) - _ALLOWED_PARAMS[scenario]
    _require(not unknown, f"unknown params for {scenario}: {sorted(unknown)}")
    for key, value in params.items():
        _require(
            isinstance(value, (int, float)) and not isinstance(value, bool),
            f"param {key} must be a number",
        )

    qrf = _parse_qrf(raw["qrf"]) if raw.get("qrf") is not None else None

    out_path, out_format = None, "csv"
    if raw.get("output") is not None:
        out = raw["output"]
        _require(isinstance(out, dict), "output must be an object")
        unknown = set(out) - _OUTPUT_KEYS
        _require(not unknown, f"unknown output keys: {sorted(unknown)}")
        out_path = out.get("path")
        out_format = out.get("format", "csv")
    rng_seed = raw.get("rng_seed", 0)
    _require(isinstance(rng_seed, int), "rng_seed must be an integer")

    custom = None
    if scenario == "custom":
        for key in ("dim", "k_matrix", "g_matrix", "psi0"):
            _require(key in raw, f"custom scenario needs {key!r}")
        dim = raw["dim"]
        _require(isinstance(dim, int) and dim >= 1, "dim must be a positive integer")
        custom = {
            "dim": dim,
            "k_matrix": _complex_matrix(raw["k_matrix"], dim, "k_matrix"),
            "g_matrix": _complex_matrix(raw["g_matrix"], dim, "g_matrix"),
            "psi0": _complex_vector(raw["psi0"], dim, "psi0"),
        }
    else:
        for key in ("dim", "k_matrix", "g_matrix", "psi0"):
            _require(key not in raw, f"{key!r} is only valid for scenario 'custom'")

    if overrides is not None:
        if getattr(overrides, "out", None):
            out_path = overrides.out
        if getattr(overrides, "format", None):
            out_format = overrides.format
        if getattr(overrides, "seed", None) is not None:
            rng_seed = overrides.seed
        if getattr(overrides, "cluster_tol", None) is not None:
            params = dict(params)
            params["cluster_tol"] = overrides.cluster_tol
    _require(out_format in ("csv", "json"), "output format must be csv or json")
    return RunConfig(
        scenario=scenario,
        sweep=sweep,
        qrf=qrf,
        params=dict(params),
        out_path=out_path,
        out_format=out_format,
        rng_seed=rng_seed,
        custom=custom,
    )


def load_custom(cfg: RunConfig) -> Scenario:
    """Validated Scenario from the custom matrices (Hermiticity, norm, dims)."""
    _require(cfg.custom is not None, "scenario is not 'custom'")
    lam = float(cfg.params.get("lambda", 0.0))
    try:
        return Scenario(
            fiducial=StateVector(cfg.custom["psi0"]),
            k_generator=HermitianOperator(cfg.custom["k_matrix"]),
            g_generator=HermitianOperator(cfg.custom["g_matrix"]),
            lam=lam,
        )
    except ValueError as exc:
        raise ConfigError(f"validation error in custom scenario: {exc}") from exc


def _auto_truncation(spec: QrfStateSpec) -> int:
    if spec.kind == "uniform_superposition":
        return spec.n_fock
    if spec.kind == "explicit":
        return len(spec.amplitudes)
    mean = (spec.alpha or 0.0) ** 2 + math.sinh(spec.squeezing()) ** 2
    guess = max(32, int(4.0 * mean + 16))
    while guess <= 4096:
        try:
            qrf_amplitudes(spec, guess)
            return guess
        except TruncationError:
            guess *= 2
    raise ConfigError("could not find a sufficient Fock truncation below 4096")


def _build_point(cfg: RunConfig, variable: str | None, value: float):
    """Scenario plus the resolved parameter record for one sweep point."""
    params = dict(cfg.params)
    if variable is not None:
        params[variable] = value
    lam = float(params.get("lambda", 0.0))
    cluster_tol = float(params.get("cluster_tol", DEFAULT_CLUSTER_TOL))
    try:
        if cfg.scenario == "example1":
            if variable == "N" or (cfg.qrf is None and "N" in params):
                spec = QrfStateSpec.uniform(int(round(params["N"])))
            elif variable == "alpha_sq" or (cfg.qrf is None and "alpha_sq" in params):
                spec = QrfStateSpec.coherent(math.sqrt(params["alpha_sq"]))
            elif cfg.qrf is not None:
                spec = cfg.qrf
            else:
                raise ConfigError("example1 needs a qrf spec or an N/alpha_sq parameter")
            truncation = int(params.get("truncation", 0)) or _auto_truncation(spec)
            qrf = qrf_amplitudes(spec, truncation)
            scenario = example1_scenario(qrf, lam)
            resolved = {"lambda": lam, "truncation": truncation}
            if variable in ("N", "alpha_sq"):
                resolved[variable] = params[variable]
        elif cfg.scenario == "example2":
            n_fock = int(round(params.get("N", 4)))
            omega = float(params.get("omega", 1.0))
            kappa = float(params.get("kappa", 1.0 / math.sqrt(2.0)))
            n_total_max = int(round(params.get("n_total_max", n_fock)))
            system = example2_system(omega, kappa, n_total_max)
            qrf = qrf_amplitudes(QrfStateSpec.uniform(n_fock), n_fock)
            scenario = system.scenario(qrf, lam)
            resolved = {
                "lambda": lam,
                "N": n_fock,
                "omega": omega,
                "kappa": kappa,
                "n_total_max": n_total_max,
            }
        elif cfg.scenario == "example3":
            z = float(params["z"]) if "z" in params else None
            _require(z is not None, "example3 needs a z parameter (fixed or swept)")
            x = float(params.get("x", 0.0))
            y = float(params.get("y", math.sqrt(max(0.0, 1.0 - z * z - x * x))))
            system = example3_system((x, y, z))
            scenario = system.scenario(lam)
            resolved = {"lambda": lam, "x": x, "y": y, "z": z}
        else:
            scenario = load_custom(cfg).with_lambda(lam)
            resolved = {"lambda": lam}
    except (ConfigError,):
        raise
    except (ValueError, TruncationError) as exc:
        raise ConfigError(f"invalid parameters: {exc}") from exc
    return scenario, resolved, cluster_tol


def _record(cfg: RunConfig, point: int, variable: str, value, resolved, rep) -> dict:
    record = {
        "scenario": cfg.scenario,
        "point": point,
        "variable": variable,
        "value": value,
    }
    for key in sorted(resolved):
        record[f"param_{key}"] = resolved[key]
    record["alice_qfi"] = rep.alice_qfi
    record["bob_qfi"] = rep.bob_qfi
    record["loss"] = rep.loss
    record["no_loss"] = rep.no_loss
    record["max_loss"] = rep.max_loss
    record["cov_gk"] = rep.cov_gk
    record["mean_commutator_re"] = rep.mean_commutator.real
    record["mean_commutator_im"] = rep.mean_commutator.imag
    return record


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _write_records(records: list[dict], path: str, fmt: str) -> None:
    if fmt == "csv":
        header = list(records[0].keys())
        lines = [",".join(header)]
        for record in records:
            lines.append(",".join(_format_cell(record[key]) for key in header))
        payload = "\n".join(lines) + "\n"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        cleaned = [
            {k: (bool(v) if isinstance(v, (bool, np.bool_)) else v) for k, v in r.items()}
            for r in records
        ]
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"records": cleaned}, fh, indent=2)
            fh.write("\n")


def _sweep_points(cfg: RunConfig):
    if cfg.sweep is None:
        yield None, float(cfg.params.get("lambda", 0.0))
        return
    grid = cfg.sweep.grid()
    if cfg.sweep.variable == "N":
        grid = np.rint(grid)
    for value in grid:
        yield cfg.sweep.variable, float(value)


def cmd_run(cfg: RunConfig, quiet: bool) -> int:
    _require(cfg.out_path is not None, "run needs an output path (config or --out)")
    records = []
    for point, (variable, value) in enumerate(_sweep_points(cfg)):
        var = variable if variable is not None else "lambda"
        val = value if variable is not None else float(cfg.params.get("lambda", 0.0))
        scenario, resolved, cluster_tol = _build_point(cfg, variable, value)
        rep = report(scenario, cluster_tol)
        records.append(_record(cfg, point, var, val, resolved, rep))
    _write_records(records, cfg.out_path, cfg.out_format)
    if not quiet:
        print(f"wrote {len(records)} record(s) to {cfg.out_path}")
    return EXIT_OK


def cmd_check(cfg: RunConfig, quiet: bool, fmt: str | None) -> int:
    _require(cfg.sweep is None, "check expects a single-point config (no sweep)")
    scenario, resolved, cluster_tol = _build_point(cfg, None, 0.0)
    rep = report(scenario, cluster_tol)
    projectors = spectral_projectors(scenario.g_generator, cluster_tol)
    residual_no_loss = no_loss_residual(scenario, projectors)
    residual_real, residual_kernel = max_loss_residuals(scenario, projectors)
    tol = 1e-8
    payload = {
        "scenario": cfg.scenario,
        "params": resolved,
        "alice_qfi": rep.alice_qfi,
        "bob_qfi": rep.bob_qfi,
        "loss": rep.loss,
        "no_loss": rep.no_loss,
        "no_loss_residual": residual_no_loss,
        "max_loss": rep.max_loss,
        "max_loss_real_residual": residual_real,
        "max_loss_kernel_residual": residual_kernel,
        "cov_gk": rep.cov_gk,
        "mean_commutator_re": rep.mean_commutator.real,
        "mean_commutator_im": rep.mean_commutator.imag,
        "tolerance": tol,
    }
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"scenario = {cfg.scenario}")
    print(f"alice_qfi = {rep.alice_qfi!r}")
    print(f"bob_qfi = {rep.bob_qfi!r}")
    print(f"loss = {rep.loss!r}")
    verdict = "passed" if rep.no_loss else "failed"
    print(f"no_loss = {_format_cell(rep.no_loss)} (clause {verdict}: residual {residual_no_loss:.3e} vs tol {tol:.0e})")
    verdict = "passed" if rep.max_loss else "failed"
    print(
        f"max_loss = {_format_cell(rep.max_loss)} (clause {verdict}: "
        f"real residual {residual_real:.3e}, kernel residual {residual_kernel:.3e} vs tol {tol:.0e})"
    )
    print(f"cov_gk = {rep.cov_gk!r}")
    print(f"mean_commutator = {rep.mean_commutator.real!r} {rep.mean_commutator.imag:+}j")
    return EXIT_OK


def cmd_optimize(cfg: RunConfig, quiet: bool) -> int:
    _require(cfg.scenario == "example1", "optimize runs in the example1 context")
    _require(cfg.out_path is not None, "optimize needs an output path (config or --out)")
    _require(
        cfg.sweep is not None and cfg.sweep.variable == "mean_energy",
        "optimize needs a sweep over mean_energy",
    )
    n_levels = int(round(cfg.params.get("N", 24)))
    seeds = int(round(cfg.params.get("seeds", 8)))
    opt_tol = float(cfg.params.get("opt_tol", 1e-5))
    unconstrained = optimize_probe(
        OptProblem(n_levels=n_levels, seeds=seeds, tol=opt_tol, rng_seed=cfg.rng_seed)
    )
    records = []
    for point, energy in enumerate(cfg.sweep.grid()):
        energy = float(energy)
        matched = min(n_levels, max(1, int(round(2.0 * energy + 1.0))))
        uniform = np.zeros(n_levels)
        uniform[:matched] = 1.0 / math.sqrt(matched)
        qfi_uniform = example1_qfi_closed_form(uniform)
        coherent = np.sqrt(coherent_weight_profile(n_levels, energy))
        qfi_coherent = example1_qfi_closed_form(coherent)
        constrained = optimize_probe(
            OptProblem(
                n_levels=n_levels,
                constraint=FIXED_MEAN_ENERGY,
                energy_target=energy,
                seeds=seeds,
                tol=opt_tol,
                rng_seed=cfg.rng_seed,
            )
        )
        records.append(
            {
                "point": point,
                "mean_energy": energy,
                "qfi_uniform": qfi_uniform,
                "qfi_coherent": qfi_coherent,
                "qfi_optimal": constrained.qfi,
                "qfi_optimal_unconstrained": unconstrained.qfi,
                "energy_residual": constrained.energy_residual,
                "converged": constrained.converged,
            }
        )
    _write_records(records, cfg.out_path, cfg.out_format)
    if not quiet:
        print(f"wrote {len(records)} record(s) to {cfg.out_path}")
    return EXIT_OK


def cmd_load(cfg: RunConfig, quiet: bool) -> int:
    scenario = load_custom(cfg)
    if not quiet:
        print(f"custom scenario ok: dim={scenario.dim} lambda={scenario.lam!r}")
        print(f"psi0 norm = {float(np.linalg.norm(scenario.fiducial.amplitudes))!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twirlqfi",
        description="Fisher-information diagnostics for dephasing from imperfect reference frames",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "execute a scenario or sweep and write records"),
        ("check", "audit the loss-theorem conditions for a single point"),
        ("optimize", "probe optimization over a mean-energy grid (example1)"),
        ("load", "validate a custom-scenario config without running it"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON config")
        p.add_argument("--out", help="output file path (overrides config)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--seed", type=int, help="rng seed (overrides config)")
        p.add_argument("--cluster-tol", dest="cluster_tol", type=float,
                       help="eigenvalue clustering tolerance")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "message": message}}) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, overrides=args)
        if args.command == "run":
            return cmd_run(cfg, args.quiet)
        if args.command == "check":
            return cmd_check(cfg, args.quiet, args.format)
        if args.command == "optimize":
            return cmd_optimize(cfg, args.quiet)
        return cmd_load(cfg, args.quiet)
    except ConfigError as exc:
        _emit_error("config", str(exc))
        return EXIT_CONFIG
    except OSError as exc:
        _emit_error("io", str(exc))
        return EXIT_IO
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        _emit_error("numerical", str(exc))
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
