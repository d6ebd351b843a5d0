"""The shared JSON matrix format ``{"n": N, "re": [[...]], "im": [[...]]}``.

Hamiltonian files may instead hold a piecewise schedule::

    {"segments": [{"duration": 0.5, "H": {"n": 2, "re": ..., "im": ...}}, ...]}
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"n": int(M.shape[0]), "re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "re" not in obj or "n" not in obj:
        raise ParseError('matrix object needs keys "n", "re" and optionally "im"')
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"matrix entries are not numeric: {exc}") from exc
    if n < 1 or re.shape != (n, n) or im.shape != (n, n):
        raise ParseError(f'"re"/"im" must both be {n}x{n}, got {re.shape} and {im.shape}')
    M = re + 1j * im
    if not np.all(np.isfinite(M)):
        raise ParseError("matrix has non-finite entries")
    return M


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def dump_matrix(M, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")


def load_schedule_pieces(path, duration: float | None = None) -> list[tuple[float, np.ndarray]]:
    """(duration, H) pieces from a Hamiltonian file; a bare matrix needs ``duration``."""
    obj = _read_json(path)
    if isinstance(obj, dict) and "segments" in obj:
        try:
            return [(float(s["duration"]), matrix_from_json(s["H"])) for s in obj["segments"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad segment entry in {path}: {exc}") from exc
    if duration is None:
        raise ParseError("a constant Hamiltonian needs an evolution time")
    return [(float(duration), matrix_from_json(obj))]
