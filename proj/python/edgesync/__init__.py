"""Python front end for the edgesync solver.

Every function takes a scenario as a path to a JSON config or as a dict
with the same layout, plus optional ``key.path=value`` overrides.
"""

from __future__ import annotations

import json
import os
from typing import Any, Iterable, Mapping, Sequence, Union

from . import _core
from ._core import EdgesyncError

Config = Union[str, os.PathLike, Mapping[str, Any]]

__all__ = [
    "EdgesyncError",
    "load_config",
    "run",
    "solve",
    "sweep",
    "dump_partition",
]


def _text(config: Config) -> str:
    if isinstance(config, Mapping):
        return json.dumps(config)
    with open(config, encoding="utf-8") as f:
        return f.read()


def _overrides(overrides: Iterable[str] | None, method: str | None, seed: int | None) -> list[str]:
    out = list(overrides or [])
    if seed is not None:
        out.append(f"dts.seed={int(seed)}")
    if method is not None:
        out.append(f'method="{method}"')
    return out


def load_config(config: Config, overrides: Iterable[str] | None = None) -> dict:
    """Validated config with defaults filled in."""
    return json.loads(_core.normalize_config(_text(config), list(overrides or [])))


def run(config: Config, overrides: Iterable[str] | None = None, *, method: str | None = None,
        seed: int | None = None) -> dict:
    """Metrics of one solve: the same fields as a CSV row."""
    return _core.run(_text(config), _overrides(overrides, method, seed))


def solve(config: Config, overrides: Iterable[str] | None = None, *, method: str | None = None,
          seed: int | None = None) -> dict:
    """Metrics plus the cell assignment, region masses and DT placement."""
    return _core.solve(_text(config), _overrides(overrides, method, seed))


def sweep(config: Config, axis: str, values: Sequence[float], overrides: Iterable[str] | None = None, *,
          seed: int | None = None) -> list[dict]:
    """Paired OT/SNR records over DT counts (``axis="dts"``) or sensing sigmas."""
    text = _text(config)
    ov = _overrides(overrides, None, seed)
    if axis == "dts":
        return _core.sweep_dts(text, [int(v) for v in values], ov)
    if axis == "sigma":
        return _core.sweep_sigma(text, [float(v) for v in values], ov)
    raise ValueError(f"axis must be 'dts' or 'sigma', got {axis!r}")


def dump_partition(config: Config, overrides: Iterable[str] | None = None, *, method: str | None = None,
                   seed: int | None = None) -> str:
    """CSV text with one ``cell_x,cell_y,server_id,g_value`` row per cell."""
    return _core.dump_partition(_text(config), _overrides(overrides, method, seed))
