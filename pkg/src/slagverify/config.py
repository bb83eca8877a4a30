"""Configuration files: torus data, polytope placements, quiver spec."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from .arrangement import Arrangement, TorusDatum
from .core import AngleClass
from .polytope import BasePolytope, SlicePolytope


class ConfigError(ValueError):
    """Raised for malformed configuration input."""


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise ConfigError(f"{where}: missing key {key!r}")
    return d[key]


def _base_from_dict(d: dict, n: int, where: str) -> BasePolytope:
    kind = _need(d, "type", where)
    try:
        if kind == "box":
            lo = _need(d, "lo", where)
            hi = _need(d, "hi", where)
            if len(lo) != n or len(hi) != n:
                raise ConfigError(f"{where}: box bounds must have length {n}")
            return BasePolytope.box(lo, hi)
        if kind == "simplex":
            return BasePolytope.simplex(n)
        if kind == "hrep":
            return BasePolytope(
                tuple(tuple(row) for row in _need(d, "normals", where)),
                tuple(_need(d, "offsets", where)),
            )
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    raise ConfigError(f"{where}: unknown base type {kind!r}")


def _base_to_dict(base: BasePolytope) -> dict:
    return {
        "type": "hrep",
        "normals": [list(r) for r in base.normals],
        "offsets": list(base.offsets),
    }


@dataclass(frozen=True)
class GlueConfiguration:
    arrangement: Arrangement
    polytopes: tuple  # SlicePolytope, unique names
    quiver_spec: Union[str, tuple]  # "auto" or tuple of (src, dst) name pairs

    @property
    def n(self) -> int:
        return self.arrangement.n


def parse_config(data: dict) -> GlueConfiguration:
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    torus = _need(data, "torus", "config")
    try:
        td = TorusDatum(
            int(_need(torus, "n", "torus")),
            int(_need(torus, "d", "torus")),
            tuple(tuple(int(x) for x in row) for row in _need(torus, "u", "torus")),
        )
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"torus: {exc}") from exc
    lam = _need(data, "lambda", "config")
    try:
        arr = Arrangement(td, np.asarray(lam, dtype=float))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"lambda: {exc}") from exc
    polys = []
    names = set()
    for i, pd in enumerate(_need(data, "polytopes", "config")):
        where = f"polytopes[{i}]"
        name = str(_need(pd, "name", where))
        if name in names:
            raise ConfigError(f"{where}: duplicate name {name!r}")
        names.add(name)
        th = _need(pd, "theta", where)
        try:
            theta = AngleClass(int(_need(th, "num", where)), int(_need(th, "den", where)))
            poly = SlicePolytope(
                name,
                np.asarray(_need(pd, "q", where), dtype=float),
                theta,
                _base_from_dict(_need(pd, "base", where), td.n, where),
                float(pd.get("scale", 1.0)),
            )
        except ConfigError:
            raise
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{where}: {exc}") from exc
        polys.append(poly)
    qspec = data.get("quiver", "auto")
    if qspec != "auto":
        try:
            qspec = tuple((str(s), str(t)) for s, t in qspec)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"quiver: {exc}") from exc
        for s, t in qspec:
            if s not in names or t not in names:
                raise ConfigError(f"quiver: edge ({s!r}, {t!r}) names unknown polytope")
    return GlueConfiguration(arr, tuple(polys), qspec)


def load_config(path) -> GlueConfiguration:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
    return parse_config(data)


def config_to_dict(cfg: GlueConfiguration) -> dict:
    arr = cfg.arrangement
    return {
        "torus": {"n": arr.n, "d": arr.d, "u": [list(r) for r in arr.torus.u]},
        "lambda": [[float(x) for x in row] for row in arr.lam],
        "polytopes": [
            {
                "name": p.name,
                "q": [[float(x) for x in row] for row in p.q],
                "theta": {"num": p.theta.num, "den": p.theta.den},
                "base": _base_to_dict(p.base),
                "scale": p.scale,
            }
            for p in cfg.polytopes
        ],
        "quiver": cfg.quiver_spec if cfg.quiver_spec == "auto"
        else [list(e) for e in cfg.quiver_spec],
    }


def dump_config(cfg_dict: dict, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg_dict, fh, indent=2, sort_keys=True)
        fh.write("\n")
