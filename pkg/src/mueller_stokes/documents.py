"""Line-delimited JSON documents carrying one matrix or vector each.

A document looks like::

    {"kind": "mueller", "convention": "internal", "data": [[1, 0, 0, 0], ...], "meta": {}}

Complex entries are written as ``[re, im]`` pairs, real entries as bare
numbers. ``convention`` is optional and only meaningful for Stokes vectors
and Mueller matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .polarization import StokesConvention

SHAPES = {
    "jones": (2, 2),
    "mueller": (4, 4),
    "stokes": (4,),
    "density2": (2, 2),
    "density4": (4, 4),
    "h": (4, 4),
    "c": (4, 4),
}
REAL_KINDS = frozenset({"mueller", "stokes"})


class DocumentError(ValueError):
    """Malformed or inconsistent document."""


@dataclass(frozen=True, eq=False)
class MatrixDocument:
    kind: str
    data: np.ndarray
    convention: StokesConvention | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in SHAPES:
            raise DocumentError(f"unknown document kind {self.kind!r}")
        dtype = float if self.kind in REAL_KINDS else complex
        data = np.asarray(self.data)
        if dtype is float and np.iscomplexobj(data):
            if np.any(data.imag != 0):
                raise DocumentError(f"{self.kind} entries must be real")
            data = data.real
        data = data.astype(dtype)
        if data.shape != SHAPES[self.kind]:
            raise DocumentError(f"{self.kind} data must have shape {SHAPES[self.kind]}, got {data.shape}")
        if not np.all(np.isfinite(data)):
            raise DocumentError("non-finite entries are not allowed")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "meta", {str(k): str(v) for k, v in self.meta.items()})

    def to_json(self) -> str:
        doc: dict = {"kind": self.kind}
        if self.convention is not None:
            doc["convention"] = self.convention.value
        doc["data"] = _encode(self.data, self.kind in REAL_KINDS)
        doc["meta"] = dict(sorted(self.meta.items()))
        return json.dumps(doc, separators=(", ", ": "))


def _clean(x: float) -> float:
    return float(x) + 0.0  # folds -0.0 into 0.0


def _encode(a: np.ndarray, real: bool):
    if a.ndim == 0:
        return _clean(a.real) if real else [_clean(a.real), _clean(a.imag)]
    return [_encode(x, real) for x in a]


def _decode(node, depth: int, real: bool):
    if depth == 0:
        if isinstance(node, bool):
            raise DocumentError("booleans are not numbers")
        if isinstance(node, (int, float)):
            return float(node)
        if (
            not real
            and isinstance(node, list)
            and len(node) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in node)
        ):
            return complex(node[0], node[1])
        raise DocumentError(f"expected a {'real number' if real else 'number or [re, im] pair'}, got {node!r}")
    if not isinstance(node, list):
        raise DocumentError(f"expected a nested array, got {node!r}")
    return [_decode(x, depth - 1, real) for x in node]


def parse_document(text: str) -> MatrixDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise DocumentError("a document must be a JSON object")
    kind = raw.get("kind")
    if kind not in SHAPES:
        raise DocumentError(f"unknown document kind {kind!r}")
    if "data" not in raw:
        raise DocumentError("document has no data")
    conv = raw.get("convention")
    try:
        convention = None if conv is None else StokesConvention.parse(conv)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    meta = raw.get("meta", {})
    if not isinstance(meta, dict):
        raise DocumentError("meta must be an object")
    data = _decode(raw["data"], len(SHAPES[kind]), kind in REAL_KINDS)
    try:
        return MatrixDocument(kind, np.array(data, dtype=complex), convention, meta)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def parse_documents(text: str) -> list[MatrixDocument]:
    return [parse_document(line) for line in text.splitlines() if line.strip()]
