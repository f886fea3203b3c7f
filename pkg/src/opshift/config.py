"""JSON run configurations.

A document looks like::

    {"schema": 1,
     "measure": {"kind": "disk", "radius": 1.0, "unit_mass": true},
     "degree": 60, "window": 25, "tol": 1e-6, "seed": 0,
     "terms": 8, "diag": [-1, 0, 1], "moments": [1, 2, 3, 4]}

Only ``schema`` and ``measure`` are required.  Measure kinds and their keys
are listed in the README; every error names the offending key path.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classical import JACOBI_FAMILIES, VERBLUNSKY_FAMILIES, JacobiArrays, VerblunskySequence
from .errors import ConfigError, MeasureError
from .laurent import LaurentSeries, joukowski, linear_map
from .limits import DEFAULT_TOL, DEFAULT_WINDOW
from .measure import (CircleVerblunsky, JacobiLine, Mixture, add_point_masses,
                      make_annulus_area, make_circle_arc, make_disk_area, push_forward)

SCHEMA_VERSION = 1
RUN_KEYS = {"schema", "measure", "degree", "window", "tol", "seed", "terms", "diag", "moments"}
MEASURE_KINDS = ("disk", "annulus", "circle_arc", "jacobi", "verblunsky", "mixture")


@dataclass(frozen=True)
class RunConfig:
    measure_doc: dict
    degree: int = 40
    window: int = DEFAULT_WINDOW
    tol: float = DEFAULT_TOL
    seed: int = 0
    terms: int = 8
    diag: tuple = (-1, 0, 1, 2)
    moments: tuple = (1, 2, 3, 4)
    digest: str = field(default="", compare=False)

    def measure(self):
        return build_measure(self.measure_doc, self.degree)


def _get(doc: dict, key: str, path: str, kind=None, default=...):
    if key not in doc:
        if default is ...:
            raise ConfigError(f"{path}.{key}: required key missing")
        return default
    value = doc[key]
    if kind is not None:
        try:
            if kind is int:
                if isinstance(value, bool) or int(value) != value:
                    raise ValueError
                return int(value)
            if kind is float:
                if isinstance(value, bool):
                    raise ValueError
                out = float(value)
                if not math.isfinite(out):
                    raise ValueError
                return out
            if kind is bool:
                if not isinstance(value, bool):
                    raise ValueError
                return value
            if kind is list:
                if not isinstance(value, list):
                    raise ValueError
                return value
            if kind is dict:
                if not isinstance(value, dict):
                    raise ValueError
                return value
        except (TypeError, ValueError):
            raise ConfigError(f"{path}.{key}: expected {kind.__name__}, got {value!r}") from None
    return value


def _complex(value, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        return complex(value[0], value[1])
    raise ConfigError(f"{path}: expected a number or [re, im], got {value!r}")


def _check_keys(doc: dict, allowed: set, path: str):
    extra = sorted(set(doc) - allowed)
    if extra:
        raise ConfigError(f"{path}.{extra[0]}: unknown key")


def _alpha(doc, path) -> VerblunskySequence:
    if isinstance(doc, list):
        return VerblunskySequence.from_values([_complex(v, f"{path}[{i}]") for i, v in enumerate(doc)])
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected a family object or a list")
    fam = _get(doc, "family", path)
    if fam not in VERBLUNSKY_FAMILIES:
        raise ConfigError(f"{path}.family: unknown family {fam!r}")
    try:
        if fam in ("constant", "alternating"):
            _check_keys(doc, {"family", "value"}, path)
            return VerblunskySequence(fam, (_complex(_get(doc, "value", path), f"{path}.value"),))
        if fam == "decay":
            _check_keys(doc, {"family", "scale"}, path)
            return VerblunskySequence(fam, (_complex(_get(doc, "scale", path, default=1.0),
                                                     f"{path}.scale"),))
        if fam == "random":
            _check_keys(doc, {"family", "seed", "radius"}, path)
            return VerblunskySequence(fam, (_get(doc, "seed", path, int, 0),
                                            _get(doc, "radius", path, float, 0.5)))
        if fam == "list":
            _check_keys(doc, {"family", "values"}, path)
            vals = _get(doc, "values", path, list)
            return VerblunskySequence.from_values(
                [_complex(v, f"{path}.values[{i}]") for i, v in enumerate(vals)])
        _check_keys(doc, {"family"}, path)
        return VerblunskySequence(fam)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None


def _jacobi(doc, path) -> JacobiArrays:
    fam = _get(doc, "family", path, default="list")
    if fam not in JACOBI_FAMILIES:
        raise ConfigError(f"{path}.family: unknown family {fam!r}")
    try:
        if fam == "free":
            return JacobiArrays.free()
        if fam == "constant":
            return JacobiArrays.constant(_get(doc, "a", path, float), _get(doc, "b", path, float))
        return JacobiArrays.from_arrays(_get(doc, "a", path, list, []), _get(doc, "b", path, list))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None


def _map(doc, path) -> LaurentSeries:
    kind = _get(doc, "map", path, default="series")
    if kind == "joukowski":
        return joukowski(_get(doc, "c", path, float))
    if kind == "linear":
        return linear_map(_get(doc, "a", path, float),
                          _complex(_get(doc, "b", path, default=0.0), f"{path}.b"))
    if kind == "series":
        lead = _get(doc, "lead", path, float)
        tail = [_complex(v, f"{path}.coeffs[{i}]")
                for i, v in enumerate(_get(doc, "coeffs", path, list, []))]
        if not lead > 0:
            raise ConfigError(f"{path}.lead: must be positive")
        return LaurentSeries.from_terms(lead, tail, rho=_get(doc, "rho", path, float, 0.0))
    raise ConfigError(f"{path}.map: unknown map {kind!r}")


def build_measure(doc: dict, degree: int, path: str = "measure"):
    """Measure from its JSON description; ``degree`` sets default exactness ``2N+1``."""
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    kind = _get(doc, "kind", path)
    if kind not in MEASURE_KINDS:
        raise ConfigError(f"{path}.kind: unknown kind {kind!r}")
    exact = 2 * degree + 1
    common = {"kind", "atoms", "pushforward"}
    try:
        if kind == "disk":
            _check_keys(doc, common | {"radius", "degree", "unit_mass"}, path)
            m = make_disk_area(_get(doc, "radius", path, float, 1.0),
                               _get(doc, "degree", path, int, exact),
                               _get(doc, "unit_mass", path, bool, True))
        elif kind == "annulus":
            _check_keys(doc, common | {"r_in", "r_out", "degree", "unit_mass"}, path)
            m = make_annulus_area(_get(doc, "r_in", path, float), _get(doc, "r_out", path, float),
                                  _get(doc, "degree", path, int, exact),
                                  _get(doc, "unit_mass", path, bool, True))
        elif kind == "circle_arc":
            _check_keys(doc, common | {"weights", "grid", "degree"}, path)
            if "weights" in doc:
                w = [_get({"w": v}, "w", f"{path}.weights[{i}]", float)
                     for i, v in enumerate(_get(doc, "weights", path, list))]
            else:
                w = np.ones(_get(doc, "grid", path, int, exact + 1))
            m = make_circle_arc(w, _get(doc, "degree", path, int, len(w) - 1))
        elif kind == "jacobi":
            _check_keys(doc, common | {"family", "a", "b"}, path)
            m = JacobiLine(_jacobi(doc, path))
        elif kind == "verblunsky":
            _check_keys(doc, common | {"alpha"}, path)
            m = CircleVerblunsky(_alpha(_get(doc, "alpha", path), f"{path}.alpha"))
        else:
            _check_keys(doc, common | {"parts"}, path)
            parts = []
            for i, part in enumerate(_get(doc, "parts", path, list)):
                p = f"{path}.parts[{i}]"
                if not isinstance(part, dict):
                    raise ConfigError(f"{p}: expected an object")
                _check_keys(part, {"weight", "measure"}, p)
                parts.append((_get(part, "weight", p, float, 1.0),
                              build_measure(_get(part, "measure", p, dict), degree, f"{p}.measure")))
            m = Mixture(tuple(parts))
        if "pushforward" in doc:
            m = push_forward(m, _map(_get(doc, "pushforward", path, dict), f"{path}.pushforward"))
        if "atoms" in doc:
            atoms = []
            for i, a in enumerate(_get(doc, "atoms", path, list)):
                p = f"{path}.atoms[{i}]"
                if not (isinstance(a, list) and len(a) == 3):
                    raise ConfigError(f"{p}: expected [re, im, mass]")
                atoms.append((_complex(a[:2], p), _get({"m": a[2]}, "m", p, float)))
            m = add_point_masses(m, atoms)
    except (MeasureError, TypeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return m


def parse_config(doc: dict, digest: str = "") -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config: top level must be an object")
    schema = _get(doc, "schema", "config")
    if schema != SCHEMA_VERSION:
        raise ConfigError(f"config.schema: unsupported version {schema!r}")
    _check_keys(doc, RUN_KEYS, "config")
    measure = _get(doc, "measure", "config", dict)
    if "kind" not in measure:
        raise ConfigError("config.measure.kind: required key missing")
    ints = lambda key, default: tuple(
        _get({"v": v}, "v", f"config.{key}[{i}]", int)
        for i, v in enumerate(_get(doc, key, "config", list, list(default))))
    cfg = RunConfig(
        measure_doc=measure,
        degree=_get(doc, "degree", "config", int, 40),
        window=_get(doc, "window", "config", int, DEFAULT_WINDOW),
        tol=_get(doc, "tol", "config", float, DEFAULT_TOL),
        seed=_get(doc, "seed", "config", int, 0),
        terms=_get(doc, "terms", "config", int, 8),
        diag=ints("diag", RunConfig.diag),
        moments=ints("moments", RunConfig.moments),
        digest=digest,
    )
    if cfg.degree < 1 or cfg.window < 2 or cfg.tol <= 0 or cfg.terms < 0:
        raise ConfigError("config: degree >= 1, window >= 2, tol > 0 and terms >= 0 required")
    return cfg


def load_config(path) -> RunConfig:
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc})") from None
    return parse_config(doc, hashlib.sha256(raw).hexdigest())
