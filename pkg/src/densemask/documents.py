"""JSON documents for states, matrices and reports.

Complex numbers are ``[re, im]`` pairs; every document carries
``"format_version": 1``.  Floats are written with Python's shortest
round-trip repr, so reading a written file gives back identical bits.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .state import BipartiteState, StateError

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed input document; the message names the offending field."""


def complex_pairs(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def _parse_pairs(raw, field: str) -> np.ndarray:
    if not isinstance(raw, list):
        raise DocumentError(f"{field}: expected a list of [re, im] pairs")
    out = np.empty(len(raw), dtype=complex)
    for i, pair in enumerate(raw):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise DocumentError(f"{field}[{i}]: expected [re, im] with numeric entries")
        if not all(math.isfinite(x) for x in pair):
            raise DocumentError(f"{field}[{i}]: non-finite value")
        out[i] = complex(pair[0], pair[1])
    return out


def _require(doc, key: str, where: str):
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected a JSON object")
    if key not in doc:
        raise DocumentError(f"{where}: missing field '{key}'")
    return doc[key]


def _check_version(doc, where: str) -> None:
    version = _require(doc, "format_version", where)
    if version != FORMAT_VERSION:
        raise DocumentError(f"{where}.format_version: unsupported value {version!r}")


def _count(raw, field: str) -> int:
    if not isinstance(raw, int) or isinstance(raw, bool) or raw < 1:
        raise DocumentError(f"{field}: expected a positive integer")
    return raw


def state_to_doc(state: BipartiteState) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "dims": [state.dim_a, state.dim_b],
        "amplitudes": complex_pairs(state.amplitudes),
    }


def state_from_doc(doc, where: str = "state") -> BipartiteState:
    _check_version(doc, where)
    dims = _require(doc, "dims", where)
    if not isinstance(dims, list) or len(dims) != 2:
        raise DocumentError(f"{where}.dims: expected [n, p]")
    n = _count(dims[0], f"{where}.dims[0]")
    p = _count(dims[1], f"{where}.dims[1]")
    amps = _parse_pairs(_require(doc, "amplitudes", where), f"{where}.amplitudes")
    if amps.size != n * p:
        raise DocumentError(f"{where}.amplitudes: expected {n * p} entries, got {amps.size}")
    try:
        return BipartiteState(n, p, amps)
    except StateError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def matrix_to_doc(M) -> dict:
    M = np.asarray(M)
    return {
        "format_version": FORMAT_VERSION,
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "entries": complex_pairs(M),
    }


def matrix_from_doc(doc, where: str = "matrix") -> np.ndarray:
    _check_version(doc, where)
    rows = _count(_require(doc, "rows", where), f"{where}.rows")
    cols = _count(_require(doc, "cols", where), f"{where}.cols")
    entries = _parse_pairs(_require(doc, "entries", where), f"{where}.entries")
    if entries.size != rows * cols:
        raise DocumentError(f"{where}.entries: expected {rows * cols} entries, got {entries.size}")
    return entries.reshape(rows, cols)


def parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
