"""JSON formats for matrices, states, settings and reports.

Output is deterministic: keys keep insertion order and floats are written
with 17 significant digits, so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .assembly import MZConfig, SetupConfig, StationConfig
from .errors import PhotonGateError, ShapeError
from .measure import validate_density


class FormatError(PhotonGateError):
    """Malformed JSON document."""


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    x = float(x) + 0.0  # drops the sign of -0.0
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Serialize plain data (dict/list/str/int/float/bool/None) deterministically."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _complex_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _parse_complex(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        z = complex(v)
    elif isinstance(v, (list, tuple)) and len(v) == 2:
        z = complex(float(v[0]), float(v[1]))
    else:
        raise FormatError(f"expected [re, im], got {v!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise FormatError("complex entries must be finite")
    return z


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "rows": [[_complex_pair(z) for z in row] for row in m]}


def matrix_from_json(doc, dim: int | None = None) -> np.ndarray:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise FormatError("matrix document needs 'dim' and 'rows'")
    rows = doc["rows"]
    d = doc.get("dim", len(rows))
    if d not in (2, 4) or len(rows) != d or any(len(r) != d for r in rows):
        raise ShapeError(f"matrix must be 2x2 or 4x4 matching 'dim', got dim={d!r}")
    if dim is not None and d != dim:
        raise ShapeError(f"expected a {dim}x{dim} matrix, got {d}x{d}")
    return np.array([[_parse_complex(z) for z in row] for row in rows], dtype=complex)


def state_to_json(v) -> dict:
    return {"amps": [_complex_pair(z) for z in np.asarray(v, dtype=complex)]}


def state_from_json(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "amps" not in doc or len(doc["amps"]) != 4:
        raise FormatError("state document needs 'amps' with four entries")
    v = np.array([_parse_complex(z) for z in doc["amps"]], dtype=complex)
    n = np.linalg.norm(v)
    if n == 0:
        raise FormatError("state vector is zero")
    return v / n


def density_from_json(doc) -> np.ndarray:
    return validate_density(matrix_from_json(doc, 4))


def parse_angle(v) -> float:
    """Radians, or a string with a ``deg`` suffix (``"22.5deg"``)."""
    if isinstance(v, bool):
        raise FormatError(f"invalid angle {v!r}")
    if isinstance(v, (int, float)):
        x = float(v)
    elif isinstance(v, str):
        s = v.strip().lower()
        try:
            if s.endswith("deg"):
                x = math.radians(float(s[:-3]))
            elif s.endswith("rad"):
                x = float(s[:-3])
            else:
                x = float(s)
        except ValueError:
            raise FormatError(f"invalid angle {v!r}") from None
    else:
        raise FormatError(f"invalid angle {v!r}")
    if not math.isfinite(x):
        raise FormatError(f"angle must be finite, got {v!r}")
    return x


_STATION_KEYS = ("phase", "alpha", "beta", "gamma")
_SETUP_KEYS = ("entry", "exit", "arm_r", "arm_l")
_MZ_KEYS = ("phi1", "phi2", "vphi1", "vphi2")


def station_to_json(s: StationConfig) -> dict:
    return {k: getattr(s, k) for k in _STATION_KEYS}


def station_from_json(doc) -> StationConfig:
    if not isinstance(doc, dict) or set(doc) != set(_STATION_KEYS):
        raise FormatError(f"station needs exactly the keys {_STATION_KEYS}")
    return StationConfig(**{k: parse_angle(doc[k]) for k in _STATION_KEYS})


def setup_to_json(cfg: SetupConfig) -> dict:
    return {k: station_to_json(getattr(cfg, k)) for k in _SETUP_KEYS}


def setup_from_json(doc) -> SetupConfig:
    if not isinstance(doc, dict) or set(doc) != set(_SETUP_KEYS):
        raise FormatError(f"setup needs exactly the keys {_SETUP_KEYS}")
    return SetupConfig(**{k: station_from_json(doc[k]) for k in _SETUP_KEYS})


def mz_to_json(cfg: MZConfig) -> dict:
    return {k: getattr(cfg, k) for k in _MZ_KEYS}


def mz_from_json(doc) -> MZConfig:
    if not isinstance(doc, dict) or set(doc) != set(_MZ_KEYS):
        raise FormatError(f"Mach-Zehnder config needs exactly the keys {_MZ_KEYS}")
    return MZConfig(**{k: parse_angle(doc[k]) for k in _MZ_KEYS})


def load(path) -> object:
    """Read a JSON file, raising :class:`FormatError` on syntax errors."""
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
