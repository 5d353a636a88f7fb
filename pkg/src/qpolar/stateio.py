"""JSON state files with explicit (re, im) pairs.

Two kinds are supported::

    {"kind": "pure",
     "entries": [{"N": 1, "n": 0, "re": 0.31622776601683794, "im": 0.0}, ...]}

    {"kind": "block-diagonal",
     "blocks": [{"N": 1, "matrix": [[[re, im], [re, im]],
                                    [[re, im], [re, im]]]}, ...]}

Matrices are the unnormalized manifold blocks whose traces are the manifold
probabilities.  Unknown fields are rejected; floats round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import (
    BlockDiagonalState,
    ManifoldBlock,
    PureAmplitudes,
    TwoModeState,
)


class StateFileError(ValueError):
    """The document cannot be parsed as a state file."""


def _require_fields(doc: dict, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(doc, dict):
        raise StateFileError(f"{where}: expected an object, got {type(doc).__name__}")
    unknown = set(doc) - allowed
    if unknown:
        raise StateFileError(f"{where}: unknown fields {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise StateFileError(f"{where}: missing fields {sorted(missing)}")


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise StateFileError(f"{where}: expected an integer, got {value!r}")
    return value


def _as_float(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StateFileError(f"{where}: expected a number, got {value!r}")
    return float(value)


def state_from_dict(doc: dict) -> TwoModeState:
    _require_fields(doc, {"kind", "entries", "blocks"}, {"kind"}, "state file")
    kind = doc.get("kind")
    if kind == "pure":
        _require_fields(doc, {"kind", "entries"}, {"kind", "entries"}, "pure state")
        entries = doc["entries"]
        if not isinstance(entries, list):
            raise StateFileError("pure state: 'entries' must be a list")
        triples = []
        for i, item in enumerate(entries):
            where = f"entries[{i}]"
            _require_fields(item, {"N", "n", "re", "im"}, {"N", "n", "re", "im"}, where)
            triples.append(
                (
                    _as_int(item["N"], where),
                    _as_int(item["n"], where),
                    complex(_as_float(item["re"], where), _as_float(item["im"], where)),
                )
            )
        return PureAmplitudes(tuple(triples))
    if kind == "block-diagonal":
        _require_fields(doc, {"kind", "blocks"}, {"kind", "blocks"}, "block-diagonal state")
        blocks_doc = doc["blocks"]
        if not isinstance(blocks_doc, list):
            raise StateFileError("block-diagonal state: 'blocks' must be a list")
        blocks = []
        for i, item in enumerate(blocks_doc):
            where = f"blocks[{i}]"
            _require_fields(item, {"N", "matrix"}, {"N", "matrix"}, where)
            n_total = _as_int(item["N"], where)
            rows = item["matrix"]
            dim = n_total + 1
            if not isinstance(rows, list) or len(rows) != dim:
                raise StateFileError(f"{where}: matrix must have {dim} rows")
            mat = np.zeros((dim, dim), dtype=complex)
            for r, row in enumerate(rows):
                if not isinstance(row, list) or len(row) != dim:
                    raise StateFileError(f"{where}: row {r} must have {dim} entries")
                for c, pair in enumerate(row):
                    if not isinstance(pair, list) or len(pair) != 2:
                        raise StateFileError(
                            f"{where}: entry ({r},{c}) must be a [re, im] pair"
                        )
                    mat[r, c] = complex(
                        _as_float(pair[0], where), _as_float(pair[1], where)
                    )
            blocks.append(ManifoldBlock(n_total, mat))
        return BlockDiagonalState(tuple(blocks))
    raise StateFileError(f"unknown state kind {kind!r}")


def state_to_dict(state: TwoModeState) -> dict:
    if isinstance(state, PureAmplitudes):
        return {
            "kind": "pure",
            "entries": [
                {"N": n_total, "n": n, "re": amp.real, "im": amp.imag}
                for n_total, n, amp in state.entries
            ],
        }
    return {
        "kind": "block-diagonal",
        "blocks": [
            {
                "N": b.n_photons,
                "matrix": [
                    [[v.real, v.imag] for v in row] for row in np.asarray(b.matrix)
                ],
            }
            for b in state.blocks
        ],
    }


def read_state(path) -> TwoModeState:
    """Parse a state file.  Raises StateFileError on malformed documents and
    InvalidStateError on structural invariant violations."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: invalid JSON: {exc}") from exc
    return state_from_dict(doc)


def write_state(path, state: TwoModeState) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=1) + "\n")
