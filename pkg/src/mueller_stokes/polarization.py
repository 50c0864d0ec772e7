"""Stokes vectors, convention changes and the 2x2 coherency matrix."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .algebra import as_complex, as_real, require_hermitian
from .bases import PAULI

SQRT2 = np.sqrt(2.0)
PHYSICAL_TOL = 1e-12
HERMITIAN_TOL = 1e-12


class StokesConvention(enum.Enum):
    INTERNAL = "internal"
    TRADITIONAL_IQUV = "traditional"
    BORN_WOLF = "born-wolf"
    VAN_DE_HULST = "van-de-hulst"

    @classmethod
    def parse(cls, text: "str | StokesConvention") -> "StokesConvention":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "-")
        aliases = {
            "internal": cls.INTERNAL,
            "traditional": cls.TRADITIONAL_IQUV,
            "iquv": cls.TRADITIONAL_IQUV,
            "traditional-iquv": cls.TRADITIONAL_IQUV,
            "born-wolf": cls.BORN_WOLF,
            "bornwolf": cls.BORN_WOLF,
            "van-de-hulst": cls.VAN_DE_HULST,
            "vandehulst": cls.VAN_DE_HULST,
            "vdh": cls.VAN_DE_HULST,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown Stokes convention {text!r}") from None


# S_internal = Q S_other for each convention. All are signed permutations.
_Q_IQUV = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1], [0, 1, 0, 0]], dtype=float
)
_TO_INTERNAL = {
    StokesConvention.INTERNAL: np.eye(4),
    StokesConvention.TRADITIONAL_IQUV: _Q_IQUV,
    StokesConvention.BORN_WOLF: _Q_IQUV,
    StokesConvention.VAN_DE_HULST: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1], [0, -1, 0, 0]], dtype=float
    ),
}
for _q in _TO_INTERNAL.values():
    _q.setflags(write=False)


def conversion_matrix(source: StokesConvention, target: StokesConvention) -> np.ndarray:
    """Real orthogonal ``Q`` with ``S_target = Q @ S_source``."""
    source = StokesConvention.parse(source)
    target = StokesConvention.parse(target)
    return _TO_INTERNAL[target].T @ _TO_INTERNAL[source]


@dataclass(frozen=True, eq=False)
class StokesVector:
    """Four real Stokes parameters tagged with the convention they follow."""

    s: np.ndarray
    convention: StokesConvention = StokesConvention.INTERNAL

    def __post_init__(self):
        s = as_real(self.s, (4,), "Stokes vector").copy()
        s.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "convention", StokesConvention.parse(self.convention))

    def to(self, convention: StokesConvention) -> "StokesVector":
        return convert_stokes(self, convention)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.s, dtype=dtype)


class FieldSample(NamedTuple):
    x: complex
    y: complex


class StokesCheck(NamedTuple):
    physical: bool
    excess: float


def stokes_from_field(x: complex, y: complex) -> StokesVector:
    """Stokes parameters of a plane wave with field components ``X``, ``Y``.

    These carry no ``1/sqrt(2)``: ``S0 = |X|^2 + |Y|^2``,
    ``S1 = 2 Re(X Y*)``, ``S2 = i (X Y* - X* Y)``, ``S3 = |X|^2 - |Y|^2``.
    Multiply by ``1/sqrt(2)`` (see :func:`rescale`) to match
    :func:`stokes_from_coherency`.
    """
    x = complex(x)
    y = complex(y)
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValueError("field components must be finite")
    xy = x * y.conjugate()
    s = np.array(
        [
            abs(x) ** 2 + abs(y) ** 2,
            (xy + xy.conjugate()).real,
            (1j * (xy - xy.conjugate())).real,
            abs(x) ** 2 - abs(y) ** 2,
        ]
    )
    return StokesVector(s, StokesConvention.INTERNAL)


def rescale(s: StokesVector, factor: float) -> StokesVector:
    """Multiply every Stokes parameter by ``factor``.

    ``rescale(stokes_from_field(x, y), 1 / sqrt(2))`` equals the Stokes
    vector read from the coherency matrix of the same field.
    """
    return StokesVector(s.s * factor, s.convention)


def convert_stokes(s: StokesVector, to: StokesConvention) -> StokesVector:
    to = StokesConvention.parse(to)
    if to is s.convention:
        return s
    return StokesVector(conversion_matrix(s.convention, to) @ s.s, to)


def convert_mueller_convention(
    m,
    source: StokesConvention = StokesConvention.VAN_DE_HULST,
    target: StokesConvention = StokesConvention.INTERNAL,
) -> np.ndarray:
    """Re-express a Mueller matrix in another Stokes convention.

    With ``S_target = Q S_source`` the matrix transforms as ``Q M Q^T``.
    """
    m = as_real(m, (4, 4), "Mueller matrix")
    q = conversion_matrix(source, target)
    return q @ m @ q.T


def _internal(s) -> np.ndarray:
    if isinstance(s, StokesVector):
        return s.to(StokesConvention.INTERNAL).s
    return as_real(s, (4,), "Stokes vector")


def coherency_from_stokes(s) -> np.ndarray:
    """Coherency matrix ``J = sum_mu S_mu sigma_mu``."""
    v = _internal(s)
    return np.einsum("m,mij->ij", v.astype(complex), np.array(PAULI))


def stokes_from_coherency(j, tol: float = HERMITIAN_TOL) -> StokesVector:
    """Invert :func:`coherency_from_stokes` via ``S_mu = Tr(sigma_mu J)``."""
    j = require_hermitian(as_complex(j, (2, 2), "coherency matrix"), tol, "coherency matrix")
    s = np.array([np.trace(p @ j).real for p in PAULI])
    return StokesVector(s, StokesConvention.INTERNAL)


def coherency_from_samples(samples: Iterable) -> np.ndarray:
    """Ensemble average ``<E E^dagger>`` over field samples ``(X, Y)``."""
    e = as_complex(list(samples), name="field samples")
    if e.ndim != 2 or e.shape[1] != 2 or e.shape[0] == 0:
        raise ValueError("samples must be a non-empty sequence of (X, Y) pairs")
    return np.einsum("ki,kj->ij", e, e.conj()) / e.shape[0]


def check_physical_stokes(s, tol: float = PHYSICAL_TOL) -> StokesCheck:
    """Test ``S0^2 >= S1^2 + S2^2 + S3^2`` with a relative slack ``tol``."""
    v = s.s if isinstance(s, StokesVector) else as_real(s, (4,), "Stokes vector")
    excess = float(v[0] ** 2 - np.sum(v[1:] ** 2))
    physical = bool(v[0] >= 0 and excess >= -tol * v[0] ** 2)
    return StokesCheck(physical, excess)
