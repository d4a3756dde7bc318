"""
JSON wire format for tuples and run configuration.

Matrices are nested lists of ``[re, im]`` pairs. A tuple file looks like::

    {"shape": [1, 1], "d": 1,
     "matrices": {"X_1_1": [[[0.5, 0.0]]], "X_2_1": [[[0.3, 0.0]]]},
     "label": "example"}
"""

import json
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from ._version import __version__
from .domain import OperatorTuple
from .errors import InvalidInputError
from .fock import DEFAULT_DIM_CAP, PolyballShape
from .linalg_core import DEFAULT_TOL

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "tuple_to_dict",
    "tuple_from_dict",
    "load_tuple",
    "dump_tuple",
    "RunConfig",
    "dumps",
]


def matrix_to_json(M):
    """Nested ``[re, im]`` pairs of a 2-D array."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_json(obj, name="matrix"):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name}: entries must be [re, im] pairs") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise InvalidInputError(f"{name}: expected rows of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def tuple_to_dict(X, label=None):
    out = {
        "version": __version__,
        "shape": list(X.shape.n),
        "d": X.d,
        "matrices": {f"X_{i}_{j}": matrix_to_json(M)
                     for i, row in enumerate(X.rows, start=1)
                     for j, M in enumerate(row, start=1)},
    }
    if label is not None:
        out["label"] = label
    return out


def tuple_from_dict(obj):
    """Parse a tuple file object.

    Raises
    ------
    InvalidInputError
        On missing keys, missing or extra ``X_i_j`` entries, or inconsistent
        dimensions.
    """
    if not isinstance(obj, dict):
        raise InvalidInputError("tuple file must be a JSON object")
    for key in ("shape", "d", "matrices"):
        if key not in obj:
            raise InvalidInputError(f"tuple file lacks {key!r}")
    shape = PolyballShape(tuple(obj["shape"]))
    d = int(obj["d"])
    mats = obj["matrices"]
    if not isinstance(mats, dict):
        raise InvalidInputError("'matrices' must map X_i_j keys to matrices")
    expected = {f"X_{i}_{j}" for i, n in enumerate(shape.n, start=1) for j in range(1, n + 1)}
    missing, extra = expected - set(mats), set(mats) - expected
    if missing or extra:
        raise InvalidInputError(
            f"matrix keys do not match shape: missing {sorted(missing)}, extra {sorted(extra)}")
    rows = []
    for i, n in enumerate(shape.n, start=1):
        row = []
        for j in range(1, n + 1):
            M = matrix_from_json(mats[f"X_{i}_{j}"], f"X_{i}_{j}")
            if M.shape != (d, d):
                raise InvalidInputError(f"X_{i}_{j} has shape {M.shape}, expected {(d, d)}")
            row.append(M)
        rows.append(row)
    return OperatorTuple(rows)


def load_tuple(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: malformed JSON ({exc.msg})") from exc
    except OSError as exc:
        raise InvalidInputError(f"{path}: {exc.strerror}") from exc
    return tuple_from_dict(obj), obj.get("label")


def dump_tuple(X, path, label=None):
    with open(path, "w") as fh:
        fh.write(dumps(tuple_to_dict(X, label)))


def dumps(obj):
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, default=_default) + "\n"


def _default(o):
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


@dataclass
class RunConfig:
    """Options shared by the command-line verbs.

    ``L`` of ``None`` means each verb's default. ``r_grid`` of ``None``
    means the default grid (with ``r = 1`` added where admissible).
    """

    L: object = None
    tol_psd: float = DEFAULT_TOL.psd
    tol_alg: float = DEFAULT_TOL.alg
    tail_tol: float = DEFAULT_TOL.tail
    r_grid: list = None
    cap: int = DEFAULT_DIM_CAP
    seed: int = 0
    format: str = "json"
    samples: int = None
    levels: int = None

    def __post_init__(self):
        for name in ("tol_psd", "tol_alg", "tail_tol"):
            if not float(getattr(self, name)) > 0:
                raise InvalidInputError(f"{name} must be positive")
        if int(self.cap) < 1:
            raise InvalidInputError("cap must be positive")
        if self.format not in ("json", "csv"):
            raise InvalidInputError(f"format must be json or csv, got {self.format!r}")
        if self.r_grid is not None:
            self.r_grid = [float(r) for r in self.r_grid]
            if any(not 0.0 <= r <= 1.0 for r in self.r_grid):
                raise InvalidInputError("r_grid values must lie in [0, 1]")
        if self.L is not None:
            L = np.atleast_1d(self.L).astype(int)
            if np.any(L < 1):
                raise InvalidInputError("L must be >= 1")
            self.L = int(L[0]) if L.size == 1 else tuple(int(v) for v in L)

    @classmethod
    def from_file(cls, path, **overrides):
        """Config from a JSON file, with non-``None`` overrides taking precedence."""
        data = {}
        if path is not None:
            try:
                with open(path) as fh:
                    data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"{path}: malformed JSON ({exc.msg})") from exc
            except OSError as exc:
                raise InvalidInputError(f"{path}: {exc.strerror}") from exc
            if not isinstance(data, dict):
                raise InvalidInputError("config file must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def to_dict(self):
        return asdict(self)
