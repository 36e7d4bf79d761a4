"""Simulation run configuration: line-oriented ``key = value`` files.

Example::

    delta = 1e-3
    tmax = 1.05
    tol = 1e-2
    schedule = 1e-2, 5e-3, 2.5e-3, 1.25e-3
    probes = 0.5, 1.0
    input.0 = expr: sin(t)

An input is either ``expr: <expression over t>`` or ``csv: <path>`` (a
``t,value`` file, linearly interpolated).  When no schedule is given, the
configured step halved four times is used.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

from .errors import ConfigError
from .exprs import parse_expr
from .nstime import CtFn, DeltaSchedule

_SCHEDULE_HALVINGS = 4


@dataclass(frozen=True)
class SimConfig:
    delta: float
    tmax: float
    schedule: DeltaSchedule
    probes: tuple[float, ...]
    inputs: tuple[CtFn, ...]


def parse_config(text: str, base_dir: str = ".") -> SimConfig:
    delta = None
    tmax = None
    tol = 1e-6
    schedule: tuple[float, ...] | None = None
    probes: tuple[float, ...] = ()
    inputs: dict[int, CtFn] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", line=number)
        key, value = (part.strip() for part in stripped.split("=", 1))

        try:
            if key == "delta":
                delta = float(value)
            elif key == "tmax":
                tmax = float(value)
            elif key == "tol":
                tol = float(value)
            elif key == "schedule":
                schedule = tuple(float(v) for v in value.split(","))
            elif key == "probes":
                probes = tuple(float(v) for v in value.split(","))
            elif key.startswith("input."):
                index = int(key[len("input."):])
                inputs[index] = _parse_input(value, base_dir, number)
            else:
                raise ConfigError(f"unknown key {key!r}", line=number)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", line=number) from None

    if delta is None:
        raise ConfigError("missing required key 'delta'")
    if tmax is None:
        raise ConfigError("missing required key 'tmax'")
    if schedule is None:
        schedule = tuple(delta / 2 ** j for j in range(_SCHEDULE_HALVINGS + 1))
    ordered = []
    for i in range(len(inputs)):
        if i not in inputs:
            raise ConfigError(f"inputs must be indexed densely from 0; missing input.{i}")
        ordered.append(inputs[i])
    try:
        sched = DeltaSchedule(schedule, tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SimConfig(delta, tmax, sched, probes, tuple(ordered))


def _parse_input(value: str, base_dir: str, line: int) -> CtFn:
    if ":" not in value:
        raise ConfigError(f"input needs 'expr:' or 'csv:' prefix, got {value!r}", line=line)
    kind, payload = (part.strip() for part in value.split(":", 1))
    if kind == "expr":
        fn = parse_expr(payload)
        return CtFn(fn, "unknown", name=payload)
    if kind == "csv":
        path = payload if os.path.isabs(payload) else os.path.join(base_dir, payload)
        return load_continuous_csv(path)
    raise ConfigError(f"unknown input kind {kind!r}", line=line)


def load_continuous_csv(path: str) -> CtFn:
    """Read a ``t,value`` file and interpolate it linearly."""
    ts: list[float] = []
    vs: list[float] = []
    try:
        with open(path, newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [h.strip() for h in header[:2]] != ["t", "value"]:
                raise ConfigError(f"{path}: expected header 't,value'")
            for row in reader:
                if not row:
                    continue
                ts.append(float(row[0]))
                vs.append(float(row[1]))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not ts:
        raise ConfigError(f"{path}: no samples")
    return CtFn.from_samples(ts, vs, name=os.path.basename(path))


def load_stream_csv(path: str) -> tuple[float, ...]:
    """Read a discrete ``step,value`` file into a stream prefix (row order)."""
    values: list[float] = []
    try:
        with open(path, newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [h.strip() for h in header[:2]] != ["step", "value"]:
                raise ConfigError(f"{path}: expected header 'step,value'")
            for row in reader:
                if not row:
                    continue
                values.append(float(row[1]))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return tuple(values)
