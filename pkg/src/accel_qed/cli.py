"""Command-line front end: JSON run configs in, CSV/JSON tables out.

    accel-qed <command> --config run.json [--out PATH] [--format csv|json] [--threads N]

Commands are ``unruh``, ``lamb``, ``wall``, ``pair`` and ``sweep`` (a batch
of the others).  Dimensional keys carry their unit in the name
(``R_cm``, ``acceleration_cm_s2``, ``time_s``, ``omega0_rad_s`` ...) and
unknown keys are rejected.  A grid is either a list of numbers or
``{"start", "stop", "points", "spacing": "lin" | "log"}``.

Exit status: 0 when every grid point converged, 2 when some rows failed
(they are still written, flagged ``converged=false``), 1 on configuration
or I/O errors.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import importlib
import io
import itertools
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from . import __version__
from .atom import FromTransitions, Lorentz, Static, builtin_atom, load_atom, BUILTIN_ATOMS
from .core import CONSTANT_SET_ID, convert_acceleration, unruh_acceleration, unruh_temperature
from .lamb import CutoffPolicy, vf_shift
from .pair import (
    TERMS,
    PairConfig,
    classify_zone,
    powerlaw_exponent,
    total_interaction,
    zone_asymptote,
)
from .quad import QuadConfig
from .wall import WallConfig, WallKernel, rr_shift_wall, tabulated_kernel, vf_shift_wall

__all__ = ["ConfigError", "RunConfig", "parse_config", "run", "main", "format_number"]

log = logging.getLogger(__name__)

COMMANDS = ("unruh", "lamb", "wall", "pair", "sweep")


class ConfigError(ValueError):
    """All validation problems found in a run config."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("invalid config:\n  " + "\n  ".join(self.errors))


# --- schema -------------------------------------------------------------------

def _grid(exclusive_min: float | None = None, minimum: float | None = None) -> dict:
    bound: dict[str, Any] = {"type": "number"}
    if exclusive_min is not None:
        bound["exclusiveMinimum"] = exclusive_min
    if minimum is not None:
        bound["minimum"] = minimum
    return {
        "oneOf": [
            {"type": "array", "minItems": 1, "items": bound},
            {
                "type": "object",
                "additionalProperties": False,
                "required": ["start", "stop", "points"],
                "properties": {
                    "start": bound,
                    "stop": bound,
                    "points": {"type": "integer", "minimum": 1},
                    "spacing": {"enum": ["lin", "log"]},
                },
            },
        ]
    }


_OUTPUT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["path"],
    "properties": {"path": {"type": "string", "minLength": 1}, "format": {"enum": ["csv", "json"]}},
}
_QUAD = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "rel_tol": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "abs_tol": {"type": "number", "minimum": 0},
        "max_evaluations": {"type": "integer", "minimum": 100},
        "tail_truncation_threshold": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
    },
}
_ACCEL_KEYS = {"acceleration_cm_s2": "cm/s2", "acceleration_m_s2": "m/s2", "acceleration_g0": "g0"}
_COMMON = {
    "command": {"enum": list(COMMANDS)},
    "output": _OUTPUT,
    "quad": _QUAD,
    "threads": {"type": "integer", "minimum": 1},
}
_ACCEL_PROPS = {k: _grid(minimum=0) for k in _ACCEL_KEYS}
_CUTOFF_PROPS = {
    "cutoff_lambda_rad_s": _grid(exclusive_min=0),
    "cutoff_shape": {"enum": ["hard", "exponential"]},
}
_POLARIZABILITY = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["model", "alpha0_cm3"],
            "properties": {"model": {"const": "static"}, "alpha0_cm3": {"type": "number", "minimum": 0}},
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["model", "alpha0_cm3", "omega0_rad_s"],
            "properties": {
                "model": {"const": "lorentz"},
                "alpha0_cm3": {"type": "number", "minimum": 0},
                "omega0_rad_s": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["model", "atom"],
            "properties": {
                "model": {"enum": ["transitions", "lorentz_from_atom"]},
                "atom": {"type": "string", "minLength": 1},
            },
        },
    ]
}
_KERNEL = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["type", "path"],
            "properties": {
                "type": {"const": "tabulated"},
                "path": {"type": "string"},
                "k_max": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["type", "ref", "k_max"],
            "properties": {
                "type": {"const": "python"},
                "ref": {"type": "string", "pattern": "^[\\w.]+:[\\w.]+$"},
                "k_max": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["type", "name"],
            "properties": {
                "type": {"const": "builtin"},
                "name": {"enum": ["damped_linear", "sin_squared"]},
                "scale_rad_s": {"type": "number", "exclusiveMinimum": 0},
            },
        },
    ]
}

SCHEMAS = {
    "unruh": {
        "properties": {**_COMMON, **_ACCEL_PROPS, "temperature_K": _grid(minimum=0)},
        "required": [],
    },
    "lamb": {
        "properties": {**_COMMON, **_ACCEL_PROPS, **_CUTOFF_PROPS, "atom": {"type": "string"}},
        "required": [],
    },
    "wall": {
        "properties": {
            **_COMMON,
            **_ACCEL_PROPS,
            **_CUTOFF_PROPS,
            "atom": {"type": "string"},
            "z0_cm": _grid(exclusive_min=0),
            "kernel": _KERNEL,
        },
        "required": ["z0_cm", "kernel"],
    },
    "pair": {
        "properties": {
            **_COMMON,
            **_ACCEL_PROPS,
            "R_cm": _grid(exclusive_min=0),
            "time_s": _grid(minimum=0),
            "alpha_a": _POLARIZABILITY,
            "alpha_b": _POLARIZABILITY,
            "dlogR": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 0.1},
        },
        "required": ["R_cm", "alpha_a", "alpha_b"],
    },
    "sweep": {
        "properties": {**_COMMON, "runs": {"type": "array", "minItems": 1, "items": {"type": "object"}}},
        "required": ["runs"],
    },
}
for _s in SCHEMAS.values():
    _s["type"] = "object"
    _s["additionalProperties"] = False


# --- config objects -----------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    grids: dict  # name -> tuple of floats, in sweep order
    output_path: str | None = None
    output_format: str = "csv"
    quad: QuadConfig = field(default_factory=QuadConfig)
    threads: int = 1
    atom: str = "hydrogen_1s"
    cutoff_shape: str = "hard"
    alpha_a: dict | None = None
    alpha_b: dict | None = None
    kernel: dict | None = None
    dlogR: float = 1e-3
    runs: tuple = ()

    def to_dict(self, *, with_output: bool = True) -> dict:
        """Normalized JSON form; :func:`parse_config` of it gives an equal config."""
        doc: dict[str, Any] = {"command": self.command}
        if with_output and self.output_path is not None:
            doc["output"] = {"path": self.output_path, "format": self.output_format}
        q = self.quad
        doc["quad"] = {
            "rel_tol": q.rel_tol,
            "abs_tol": q.abs_tol,
            "max_evaluations": q.max_evaluations,
            "tail_truncation_threshold": q.tail_truncation_threshold,
        }
        if self.command == "sweep":
            doc["threads"] = self.threads
            doc["runs"] = [r.to_dict(with_output=with_output) for r in self.runs]
            return doc
        doc["threads"] = self.threads
        for name, values in self.grids.items():
            doc[name] = list(values)
        if self.command in ("lamb", "wall"):
            doc["atom"] = self.atom
            doc["cutoff_shape"] = self.cutoff_shape
        if self.command == "wall":
            doc["kernel"] = dict(self.kernel)
        if self.command == "pair":
            doc["alpha_a"] = dict(self.alpha_a)
            doc["alpha_b"] = dict(self.alpha_b)
            doc["dlogR"] = self.dlogR
        return doc

    def digest(self) -> str:
        """sha256 of the canonical config, independent of where output goes."""
        text = json.dumps(self.to_dict(with_output=False), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def _expand_grid(spec, name: str, errors: list[str]) -> tuple:
    if isinstance(spec, list):
        return tuple(float(v) for v in spec)
    start, stop, n = float(spec["start"]), float(spec["stop"]), int(spec["points"])
    spacing = spec.get("spacing", "lin")
    if spacing == "log":
        if start <= 0 or stop <= 0:
            errors.append(f"{name}: log spacing requires positive start and stop")
            return ()
        values = np.geomspace(start, stop, n)
    else:
        values = np.linspace(start, stop, n)
    return tuple(float(v) for v in values)


def _branch_errors(err) -> list:
    """Errors of the oneOf branch the instance was evidently aimed at."""
    branches: dict[int, list] = {}
    for sub in err.context:
        branches.setdefault(sub.schema_path[0], []).append(sub)

    def mismatched(errs):
        # wrong JSON type, or wrong discriminator ("model" / "type" key)
        return any(
            (e.validator == "type" and not e.path)
            or (e.validator in ("const", "enum") and list(e.path) in (["model"], ["type"]))
            for e in errs
        )

    aimed = [errs for errs in branches.values() if not mismatched(errs)]
    if len(aimed) != 1:
        return [err]
    out = []
    for e in aimed[0]:
        out.extend(_branch_errors(e) if e.context else [e])
    return out


def _schema_errors(doc: Any, schema: dict, prefix: str = "") -> list[str]:
    validator = jsonschema.Draft202012Validator(schema)
    out = []
    for err in validator.iter_errors(doc):
        for e in _branch_errors(err) if err.context else [err]:
            where = "/".join(str(p) for p in e.absolute_path) or "<root>"
            out.append(f"{prefix}{where}: {e.message}")
    return sorted(out)


def _build(doc: dict, command: str | None, prefix: str, errors: list[str]) -> RunConfig | None:
    if not isinstance(doc, dict):
        errors.append(f"{prefix}<root>: config must be a JSON object")
        return None
    cmd = doc.get("command", command)
    if command is not None and "command" in doc and doc["command"] != command:
        errors.append(f"{prefix}command: config says {doc['command']!r} but {command!r} was requested")
        return None
    if cmd not in COMMANDS:
        errors.append(f"{prefix}command: must be one of {list(COMMANDS)}, got {cmd!r}")
        return None
    before = len(errors)
    errors.extend(_schema_errors(doc, SCHEMAS[cmd], prefix))
    if len(errors) > before:
        return None

    output = doc.get("output")
    common = dict(
        command=cmd,
        output_path=output["path"] if output else None,
        output_format=(output or {}).get("format", "csv"),
        quad=QuadConfig(**doc.get("quad", {})),
        threads=doc.get("threads", 1),
    )
    if cmd == "sweep":
        runs = []
        for i, sub in enumerate(doc["runs"]):
            r = _build(sub, None, f"{prefix}runs/{i}/", errors)
            if r is not None:
                if r.command == "sweep":
                    errors.append(f"{prefix}runs/{i}/command: sweeps cannot nest")
                elif r.output_path is None:
                    errors.append(f"{prefix}runs/{i}/output: every sub-run needs an output")
                runs.append(r)
        return RunConfig(grids={}, runs=tuple(runs), **common)

    grids: dict[str, tuple] = {}
    accel = [k for k in _ACCEL_KEYS if k in doc]
    if len(accel) > 1:
        errors.append(f"{prefix}{accel[1]}: give the acceleration in one unit only ({', '.join(accel)})")
    if cmd == "unruh":
        if ("temperature_K" in doc) == bool(accel):
            errors.append(f"{prefix}<root>: unruh needs exactly one of acceleration_* or temperature_K")
        if "temperature_K" in doc:
            grids["temperature_K"] = _expand_grid(doc["temperature_K"], f"{prefix}temperature_K", errors)
    if cmd == "pair":
        grids["R_cm"] = _expand_grid(doc["R_cm"], f"{prefix}R_cm", errors)
    if cmd == "wall":
        grids["z0_cm"] = _expand_grid(doc["z0_cm"], f"{prefix}z0_cm", errors)
    if accel:
        key = accel[0]
        values = _expand_grid(doc[key], prefix + key, errors)
        grids["acceleration_cm_s2"] = tuple(
            convert_acceleration(v, _ACCEL_KEYS[key], "cm/s2") for v in values
        )
    elif cmd != "unruh":
        grids["acceleration_cm_s2"] = (0.0,)
    if cmd == "pair":
        grids["time_s"] = _expand_grid(doc.get("time_s", [0.0]), f"{prefix}time_s", errors)
    if cmd in ("lamb", "wall"):
        if "cutoff_lambda_rad_s" in doc:
            grids["cutoff_lambda_rad_s"] = _expand_grid(
                doc["cutoff_lambda_rad_s"], f"{prefix}cutoff_lambda_rad_s", errors
            )
        else:
            grids["cutoff_lambda_rad_s"] = (CutoffPolicy().value,)
        atom = doc.get("atom", "hydrogen_1s")
        if atom not in BUILTIN_ATOMS and not Path(atom).is_file():
            errors.append(f"{prefix}atom: {atom!r} is neither a builtin atom nor a readable file")
        common["atom"] = atom
        common["cutoff_shape"] = doc.get("cutoff_shape", "hard")
    if cmd == "wall":
        common["kernel"] = doc["kernel"]
        if doc["kernel"]["type"] == "tabulated" and not Path(doc["kernel"]["path"]).is_file():
            errors.append(f"{prefix}kernel/path: {doc['kernel']['path']!r} is not a readable file")
    if cmd == "pair":
        common["alpha_a"] = doc["alpha_a"]
        common["alpha_b"] = doc["alpha_b"]
        common["dlogR"] = doc.get("dlogR", 1e-3)
        for side in ("alpha_a", "alpha_b"):
            ref = doc[side].get("atom")
            if ref is not None and ref not in BUILTIN_ATOMS and not Path(ref).is_file():
                errors.append(f"{prefix}{side}/atom: {ref!r} is neither a builtin atom nor a readable file")
    return RunConfig(grids=grids, **common)


def parse_config(text: str, command: str | None = None) -> RunConfig:
    """Validate a JSON run config; raises :class:`ConfigError` listing every problem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"<root>: malformed JSON: {exc}"]) from None
    errors: list[str] = []
    cfg = _build(doc, command, "", errors)
    if errors:
        raise ConfigError(errors)
    return cfg


# --- evaluation -----------------------------------------------------------------

def _atom(ref: str):
    return builtin_atom(ref) if ref in BUILTIN_ATOMS else load_atom(ref)


def _polarizability(spec: dict):
    model = spec["model"]
    if model == "static":
        return Static(spec["alpha0_cm3"])
    if model == "lorentz":
        return Lorentz(spec["alpha0_cm3"], spec["omega0_rad_s"])
    ft = FromTransitions(_atom(spec["atom"]))
    return ft if model == "transitions" else ft.as_lorentz()


def _damped_linear(scale):
    def k(om, z0, a):
        return om / (om + scale) * np.exp(-om / scale)
    return k


def _sin_squared(om, z0, a):
    from .core import constants

    return np.sin(om * z0 / constants().c) ** 2


def _kernel(spec: dict, atom_scale: float) -> WallKernel:
    kind = spec["type"]
    if kind == "tabulated":
        return tabulated_kernel(spec["path"], spec.get("k_max"))
    if kind == "python":
        module, _, attr = spec["ref"].partition(":")
        obj = importlib.import_module(module)
        for part in attr.split("."):
            obj = getattr(obj, part)
        return WallKernel(obj, spec["k_max"])
    if spec["name"] == "damped_linear":
        return WallKernel(_damped_linear(spec.get("scale_rad_s", atom_scale)), 1.0)
    return WallKernel(_sin_squared, 1.0)


def _columns(cmd: str) -> list[str]:
    meta = ["converged", "error", "rel_tol", "artifact_version", "constants_id", "config_sha256"]
    if cmd == "unruh":
        return ["acceleration_cm_s2", "temperature_K", *meta]
    if cmd == "lamb":
        return [
            "acceleration_cm_s2", "cutoff_lambda_rad_s", "cutoff_shape",
            "inertial_vf_erg", "thermal_vf_erg", "nonthermal_a2_bose_erg",
            "nonthermal_a2_cutoff_erg", "total_vf_erg", "rr_erg", *meta,
        ]
    if cmd == "wall":
        return [
            "z0_cm", "acceleration_cm_s2", "cutoff_lambda_rad_s", "cutoff_shape",
            "vf_wall_erg", "rr_wall_erg", "total_wall_erg", *meta,
        ]
    return [
        "R_cm", "acceleration_cm_s2", "time_s", "a2t2_over_c2", "perturbative", "zone",
        "E_static_erg", "E_linear_erg", "E_quadratic_erg", "E_total_erg", "relative_correction",
        *(f"exponent_{t}" for t in TERMS),
        *(f"asymptote_{t}_erg" for t in TERMS),
        *meta,
    ]


def _points(cfg: RunConfig):
    names = list(cfg.grids)
    for combo in itertools.product(*(cfg.grids[n] for n in names)):
        yield dict(zip(names, combo))


class _Evaluator:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.meta = {
            "rel_tol": cfg.quad.rel_tol,
            "artifact_version": __version__,
            "constants_id": CONSTANT_SET_ID,
            "config_sha256": cfg.digest(),
        }
        if cfg.command in ("lamb", "wall"):
            self.atom = _atom(cfg.atom)
        if cfg.command == "wall":
            self.kernel = _kernel(cfg.kernel, self.atom.max_frequency)
        if cfg.command == "pair":
            self.alpha_a = _polarizability(cfg.alpha_a)
            self.alpha_b = _polarizability(cfg.alpha_b)

    def __call__(self, point: dict) -> dict:
        row = dict(point)
        try:
            values, ok, *notes = getattr(self, "_" + self.cfg.command)(point)
            row.update(values)
            notes = [n for n in notes if n]
            if not ok:
                notes.insert(0, "quadrature did not reach the requested tolerance")
            row["converged"] = not notes
            row["error"] = "; ".join(notes)
        except (ArithmeticError, ValueError) as exc:
            row["converged"] = False
            row["error"] = f"{type(exc).__name__}: {exc}"
        row.update(self.meta)
        return row

    def _unruh(self, p):
        if "temperature_K" in p:
            return {"acceleration_cm_s2": unruh_acceleration(p["temperature_K"])}, True
        return {"temperature_K": unruh_temperature(p["acceleration_cm_s2"])}, True

    def _lamb(self, p):
        cutoff = CutoffPolicy(p["cutoff_lambda_rad_s"], self.cfg.cutoff_shape)
        b = vf_shift(self.atom, p["acceleration_cm_s2"], cutoff, self.cfg.quad, strict=False)
        rec = b.to_record()
        ok = rec.pop("converged")
        return rec, ok

    def _wall(self, p):
        cutoff = CutoffPolicy(p["cutoff_lambda_rad_s"], self.cfg.cutoff_shape)
        wc = WallConfig(p["z0_cm"], p["acceleration_cm_s2"], cutoff)
        vf = vf_shift_wall(self.atom, self.kernel, wc, self.cfg.quad)
        rr = rr_shift_wall(self.atom, self.kernel, wc, self.cfg.quad)
        return {"cutoff_shape": cutoff.shape, "vf_wall_erg": vf, "rr_wall_erg": rr, "total_wall_erg": vf + rr}, True

    def _pair(self, p):
        q = self.cfg.quad
        pc = PairConfig(p["R_cm"], self.alpha_a, self.alpha_b, p["acceleration_cm_s2"], p["time_s"])
        b = total_interaction(pc, q, strict=False)
        zone = classify_zone(pc)
        out = {
            "a2t2_over_c2": pc.atc2,
            "perturbative": pc.perturbative,
            "zone": zone,
            "E_static_erg": b.static_term,
            "E_linear_erg": b.linear_t_term,
            "E_quadratic_erg": b.quadratic_t_term,
            "E_total_erg": b.total,
            "relative_correction": (
                abs(b.linear_t_term + b.quadratic_t_term) / abs(b.static_term)
                if b.static_term != 0.0 else None
            ),
        }
        terms = {"static": b.static_term, "linear": b.linear_t_term, "quadratic": b.quadratic_t_term}
        # no closed form in the crossover region, nor a near-zone one for static models
        has_form = zone == "far" or (
            zone == "near" and not isinstance(self.alpha_a, Static) and not isinstance(self.alpha_b, Static)
        )
        notes = []
        for t in TERMS:
            out[f"exponent_{t}"] = out[f"asymptote_{t}_erg"] = None
            try:
                if b.converged and terms[t] != 0.0:
                    out[f"exponent_{t}"] = powerlaw_exponent(t, pc, self.cfg.dlogR, q)
                if has_form:
                    out[f"asymptote_{t}_erg"] = zone_asymptote(t, zone, pc, q)
            except ArithmeticError as exc:
                # the energies stand; only the derived column is lost
                notes.append(f"{t}: {type(exc).__name__}: {exc}")
        return out, b.converged, *notes


def format_number(value) -> str:
    """Shortest round-trip text of a float (at most 17 significant digits)."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(value)


def _render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        clean = [
            {c: (None if isinstance(r.get(c), float) and not math.isfinite(r[c]) else r.get(c)) for c in columns}
            for r in rows
        ]
        return json.dumps(clean, indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([format_number(r.get(c)) for c in columns])
    return buf.getvalue()


def _check_writable(path: Path):
    parent = path.resolve().parent
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise OSError(f"output directory {str(parent)!r} does not exist or is not writable")


def run(cfg: RunConfig, *, out: str | None = None, fmt: str | None = None, threads: int | None = None) -> int:
    """Evaluate every grid point of ``cfg`` and write the table; returns the exit status."""
    if cfg.command == "sweep":
        shared = threads or (cfg.threads if cfg.threads > 1 else None)
        statuses = [run(sub, threads=shared) for sub in cfg.runs]
        return 1 if 1 in statuses else max(statuses, default=0)
    path = Path(out or cfg.output_path)
    fmt = fmt or cfg.output_format
    try:
        _check_writable(path)
    except OSError as exc:
        print(f"accel-qed: {exc}", file=sys.stderr)
        return 1
    evaluate = _Evaluator(cfg)
    points = list(_points(cfg))
    workers = threads or cfg.threads
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, points))
    else:
        rows = [evaluate(p) for p in points]
    text = _render(rows, _columns(cfg.command), fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"accel-qed: cannot write {str(path)!r}: {exc}", file=sys.stderr)
        return 1
    failed = sum(not r["converged"] for r in rows)
    if failed:
        log.warning("%d of %d grid points failed; see the 'error' column of %s", failed, len(rows), path)
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="accel-qed",
        description="Level shifts and dispersion energies of uniformly accelerated atoms.",
    )
    parser.add_argument(
        "--version", action="version", version=f"accel-qed {__version__} (constants {CONSTANT_SET_ID})"
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON run config")
    parser.add_argument("--out", help="output path (overrides the config)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format (overrides the config)")
    parser.add_argument("--threads", type=int, help="worker threads for grid points")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"accel-qed: cannot read config: {exc}", file=sys.stderr)
        return 1
    try:
        cfg = parse_config(text, args.command)
    except ConfigError as exc:
        print(f"accel-qed: {exc}", file=sys.stderr)
        return 1
    if cfg.output_path is None and args.out is None and cfg.command != "sweep":
        print("accel-qed: no output path (set output.path or --out)", file=sys.stderr)
        return 1
    if args.threads is not None and args.threads < 1:
        print("accel-qed: --threads must be >= 1", file=sys.stderr)
        return 1
    return run(cfg, out=args.out, fmt=args.format, threads=args.threads)


if __name__ == "__main__":
    sys.exit(main())
