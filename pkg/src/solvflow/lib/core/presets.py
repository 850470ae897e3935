"""Catalog of metric Lie algebras with their normalized solvsoliton data."""

from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np

import solvflow.resources.presets
from solvflow.lib.config_file import get_config_section
from solvflow.lib.core.exceptions import (
    NotASoliton,
    PresetFormatError,
    UnknownPreset,
)
from solvflow.lib.core.lie_algebra import LieAlgebraData
from solvflow.lib.core.solvsoliton import (
    SolvsolitonParams,
    detect_flat_soliton,
    detect_solvsoliton,
    normalize,
)

LOG = logging.getLogger(__name__)

_DEFAULT_PRESETS_DIR = Path(solvflow.resources.presets.__file__).parent
_PARAMETRIC = re.compile(r"^(?P<family>heisenberg|abelian):(?P<dim>\d+)$")
_ALIASES = {"heisenberg3": "heisenberg:3"}


def heisenberg(dim: int) -> LieAlgebraData:
    """Generalised Heisenberg algebra h_{2m+1}: [e_i, e_{m+i}] = e_{2m+1}."""
    if dim < 3 or dim % 2 == 0:
        raise UnknownPreset(f"heisenberg:{dim}", ["heisenberg:N with odd N >= 3"])
    m = (dim - 1) // 2
    mu = np.zeros((dim, dim, dim))
    for i in range(m):
        mu[i, m + i, dim - 1] = 1.0
        mu[m + i, i, dim - 1] = -1.0
    return LieAlgebraData(dim, mu)


def abelian(dim: int) -> LieAlgebraData:
    if dim < 2:
        raise UnknownPreset(f"abelian:{dim}", ["abelian:N with N >= 2"])
    return LieAlgebraData(dim, np.zeros((dim, dim, dim)))


_BUILTIN_FAMILIES: Dict[str, Callable[[int], LieAlgebraData]] = {
    "heisenberg": heisenberg,
    "abelian": abelian,
}


def _line_of(text: str, token: str) -> int:
    pos = text.find(token)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else 0


def load_preset_file(path: Path) -> LieAlgebraData:
    """Read `{"name", "dim", "brackets": [[i, j, k, value], ...]}` (1-based)."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        problem = f"line {e.lineno}, column {e.colno}: {e.msg}"
        raise PresetFormatError(path, problem) from e
    if not isinstance(data, dict):
        raise PresetFormatError(path, "top level must be an object")
    for key in ("name", "dim", "brackets"):
        if key not in data:
            raise PresetFormatError(path, f"missing field {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        line = _line_of(text, '"dim"')
        raise PresetFormatError(
            path, f"field 'dim' (line {line}) must be a positive integer"
        )
    mu = np.zeros((dim, dim, dim))
    for index, entry in enumerate(data["brackets"]):
        field_name = f"brackets[{index}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise PresetFormatError(path, f"{field_name} must be [i, j, k, value]")
        i, j, k, value = entry
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise PresetFormatError(path, f"{field_name} value must be a number")
        if not all(isinstance(v, int) and 1 <= v <= dim for v in (i, j, k)):
            raise PresetFormatError(path, f"{field_name} has indices outside 1..{dim}")
        if i == j:
            raise PresetFormatError(path, f"{field_name} brackets e_{i} with itself")
        i, j, k = i - 1, j - 1, k - 1
        previous = mu[j, i, k]
        if previous and previous != -value:
            problem = f"{field_name} contradicts the entry for [e_{j + 1}, e_{i + 1}]"
            raise PresetFormatError(path, problem)
        mu[i, j, k] = value
        mu[j, i, k] = -value
    labels = data.get("basis_labels")
    return LieAlgebraData(dim, mu, tuple(labels) if labels else None)


def _get_presets_lookup() -> Dict[str, Path]:
    """Lookup of file-backed presets: shipped JSON files plus [PRESETS] entries."""
    lookup = {f.stem: f for f in sorted(_DEFAULT_PRESETS_DIR.glob("*.json"))}
    presets_config = get_config_section("PRESETS")
    if presets_config is not None:
        for name, filename in presets_config.items():
            lookup[name] = Path(filename)
    return lookup


def available_presets() -> List[str]:
    names = ["heisenberg3", "heisenberg:N", "abelian:N"]
    names.extend(_get_presets_lookup())
    return names


def lie_algebra_from_name(name: str) -> LieAlgebraData:
    """Resolve a preset name or a path to a JSON preset file."""
    name = _ALIASES.get(name, name)
    match = _PARAMETRIC.match(name)
    if match is not None:
        return _BUILTIN_FAMILIES[match["family"]](int(match["dim"]))
    lookup = _get_presets_lookup()
    if name in lookup:
        return load_preset_file(lookup[name])
    if Path(name).is_file():
        return load_preset_file(Path(name))
    raise UnknownPreset(name, available_presets())


def params_from_algebra(alg: LieAlgebraData) -> SolvsolitonParams:
    try:
        lambda0, d = detect_solvsoliton(alg)
    except NotASoliton:
        if not alg.is_abelian:
            raise
        LOG.debug("Abelian algebra, routing to the scalar-flat branch")
        lambda0, d = detect_flat_soliton(alg)
    return normalize(lambda0, d, alg.dim)


def preset(name: str) -> Tuple[LieAlgebraData, SolvsolitonParams]:
    alg = lie_algebra_from_name(name)
    params = params_from_algebra(alg)
    LOG.debug(f"Preset {name}: {params}")
    return alg, params
