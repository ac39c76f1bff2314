"""Flat key=value configuration, events files, and run manifests.

Config files are diff-able by construction: one `key=value` per line,
'#' comments, no nesting. Values are coerced by the declared field type
of the target config dataclass; vectors are comma-separated.
"""
from __future__ import annotations

import dataclasses
import datetime
import json
import os
import tempfile
import types
import typing

import numpy as np

from .errors import ConfigError, EmptyInput, ParseError


def parse_kv_text(text: str, origin: str = "<config>") -> dict:
    """key=value lines to a string dict; later duplicates override earlier."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ParseError(f"{origin}: line {lineno}: expected key=value, got {raw.strip()!r}")
        out[key] = value.strip()
    return out


def parse_config_file(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_kv_text(fh.read(), origin=str(path))


def parse_set_items(items) -> dict:
    """--set overrides: each item is one key=value."""
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--set expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _coerce(text: str, target, key: str):
    origin = typing.get_origin(target)
    if origin in (typing.Union, types.UnionType):
        args = [a for a in typing.get_args(target) if a is not type(None)]
        if text.lower() in ("none", ""):
            return None
        return _coerce(text, args[0], key)
    if target is bool:
        low = text.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {text!r}")
    if target is int:
        try:
            return int(text)
        except ValueError:
            pass
        try:
            f = float(text)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {text!r}") from None
        if f != int(f):
            raise ConfigError(f"{key}: expected an integer, got {text!r}")
        return int(f)
    if target is float:
        try:
            return float(text)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {text!r}") from None
    if target is str:
        return text
    if target is tuple or origin is tuple:
        try:
            return tuple(float(p) for p in text.split(",") if p.strip() != "")
        except ValueError:
            raise ConfigError(f"{key}: expected comma-separated numbers, got {text!r}") from None
    if target is np.ndarray:
        try:
            return np.array([float(p) for p in text.split(",") if p.strip() != ""])
        except ValueError:
            raise ConfigError(f"{key}: expected comma-separated numbers, got {text!r}") from None
    raise ConfigError(f"{key}: unsupported config field type {target!r}")


def apply_config(config, overrides: dict):
    """Replace dataclass fields from a string dict with typed coercion."""
    if not overrides:
        return config
    cls = type(config)
    hints = typing.get_type_hints(cls)
    valid = {f.name for f in dataclasses.fields(cls)}
    values = {}
    for key, text in overrides.items():
        if key not in valid:
            raise ConfigError(
                f"unknown config key {key!r} for {cls.__name__}; "
                f"valid keys: {', '.join(sorted(valid))}")
        values[key] = _coerce(text, hints[key], key)
    cfg = dataclasses.replace(config, **values)
    # matrix-valued fields arrive flat; reshape by their declared geometry
    if "mixing" in values and values["mixing"] is not None:
        flat = values["mixing"]
        n = int(round(len(flat) ** 0.5))
        if n * n != len(flat):
            raise ConfigError(f"mixing: {len(flat)} values do not form a square matrix")
        cfg = dataclasses.replace(cfg, mixing=flat.reshape(n, n))
    if "M" in values and values["M"] is not None:
        flat = values["M"]
        if len(flat) != cfg.n * cfg.m:
            raise ConfigError(f"M: expected {cfg.n}x{cfg.m} = {cfg.n * cfg.m} values, got {len(flat)}")
        cfg = dataclasses.replace(cfg, M=flat.reshape(cfg.n, cfg.m))
    return cfg


def config_snapshot(config) -> dict:
    """JSON-safe dict of a config dataclass."""
    out = {}
    for f in dataclasses.fields(config):
        v = getattr(config, f.name)
        if isinstance(v, np.ndarray):
            v = v.tolist()
        elif isinstance(v, tuple):
            v = list(v)
        out[f.name] = v
    return out


def parse_events_file(path):
    """Events as 'onset_seconds,end_seconds' lines; '#' starts a comment."""
    events = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2:
                raise ParseError(f"{path}: line {lineno}: expected onset,end")
            try:
                events.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: expected onset,end") from None
    if not events:
        raise EmptyInput(f"{path}: no events")
    return events


def prepare_output(path, force: bool = False):
    """Outputs are write-once: refuse to overwrite unless forced."""
    path = os.fspath(path)
    if os.path.exists(path) and not force:
        raise ConfigError(f"{path} exists; pass --force to overwrite")
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    return path


@dataclasses.dataclass(frozen=True)
class RunManifest:
    command: tuple
    version: str
    created: str
    seed: int | None
    config: dict
    inputs: tuple
    outputs: tuple
    duration_seconds: float


def make_manifest(command, version, seed, config, inputs, outputs,
                  duration_seconds) -> RunManifest:
    return RunManifest(command=tuple(command), version=version,
                       created=datetime.datetime.now(datetime.timezone.utc).isoformat(),
                       seed=seed, config=dict(config), inputs=tuple(inputs),
                       outputs=tuple(outputs), duration_seconds=duration_seconds)


def write_manifest(manifest: RunManifest, path) -> None:
    """Atomic write so a crash never leaves a half manifest beside outputs."""
    payload = dataclasses.asdict(manifest)
    payload["command"] = list(manifest.command)
    payload["inputs"] = list(manifest.inputs)
    payload["outputs"] = list(manifest.outputs)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    parent = os.path.dirname(os.path.abspath(os.fspath(path)))
    os.makedirs(parent, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, os.fspath(path))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
