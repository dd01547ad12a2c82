"""Spin-s angular momentum operators and Wigner small-d rotation matrices.

Basis order is m = s, s-1, ..., -s throughout (hbar = 1). Half-integer spins
are carried as ``twice_s`` integers so indexing never touches floating s.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .constants import MAX_TWICE_S
from .errors import ContractViolation

__all__ = [
    "SpinLabel",
    "WignerD",
    "spin_operators",
    "wigner_small_d",
    "evolved_sz",
]


@dataclass(frozen=True)
class SpinLabel:
    twice_s: int

    def __post_init__(self):
        if not isinstance(self.twice_s, (int, np.integer)) or self.twice_s < 1:
            raise ContractViolation(f"twice_s must be a positive integer, got {self.twice_s!r}")
        if self.twice_s > MAX_TWICE_S:
            raise ContractViolation(f"twice_s above {MAX_TWICE_S} is not supported")
        object.__setattr__(self, "twice_s", int(self.twice_s))

    @classmethod
    def parse(cls, text):
        """Parse ``"1/2"``, ``"3/2"``, ``"1"`` or ``"1.5"`` into a spin label."""
        try:
            s = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise ContractViolation(f"cannot parse spin value {text!r}") from None
        twice = 2 * s
        if twice.denominator != 1 or twice <= 0:
            raise ContractViolation(f"spin must be a positive multiple of 1/2, got {text!r}")
        return cls(int(twice))

    @property
    def s(self):
        return Fraction(self.twice_s, 2)

    @property
    def dim(self):
        return self.twice_s + 1

    @property
    def twice_m(self):
        """Magnetic quantum numbers (times two) in basis order, s down to -s."""
        return tuple(range(self.twice_s, -self.twice_s - 1, -2))

    @property
    def m_values(self):
        return tuple(Fraction(tm, 2) for tm in self.twice_m)

    def __str__(self):
        return str(self.s)


def _as_spin(s):
    return s if isinstance(s, SpinLabel) else SpinLabel(s)


@lru_cache(maxsize=None)
def _spin_ops(twice_s):
    tm = np.arange(twice_s, -twice_s - 1, -2)
    m = tm / 2.0
    s = twice_s / 2.0
    d = twice_s + 1
    sz = np.diag(m).astype(np.complex128)
    # <m+1|S_+|m> = sqrt(s(s+1) - m(m+1)); index i-1 holds m+1
    splus = np.zeros((d, d), dtype=np.complex128)
    for i in range(1, d):
        splus[i - 1, i] = np.sqrt(s * (s + 1) - m[i] * (m[i] + 1))
    sminus = splus.conj().T
    sx = 0.5 * (splus + sminus)
    sy = -0.5j * (splus - sminus)
    for op in (sx, sy, sz):
        op.setflags(write=False)
    return sx, sy, sz


def spin_operators(s):
    """Return ``(S_x, S_y, S_z)`` for spin ``s`` (a :class:`SpinLabel` or ``twice_s``).

    The arrays are cached and read-only; copy before modifying.
    """
    return _spin_ops(_as_spin(s).twice_s)


@dataclass(frozen=True)
class WignerD:
    """Real rotation matrix with ``matrix[i, j] = d^s_{m_i, m_j}(angle)``."""

    spin: SpinLabel
    angle: float
    matrix: np.ndarray

    def element(self, twice_m_row, twice_m_col):
        n = self.spin.twice_s
        return self.matrix[(n - twice_m_row) // 2, (n - twice_m_col) // 2]


def wigner_small_d(s, theta):
    """Wigner small-d matrix ``<s,m'|exp(-i theta S_y)|s,m>`` from the explicit factorial sum."""
    spin = _as_spin(s)
    theta = float(theta)
    if not np.isfinite(theta):
        raise ContractViolation("theta must be finite")
    return WignerD(spin=spin, angle=theta, matrix=kernels.wigner_small_d(spin.twice_s, theta))


def evolved_sz(s, omega_t):
    """Heisenberg-picture ``S_z(t) = S_z cos(wt) + S_x sin(wt)`` for the ``S_y`` rotor."""
    sx, _, sz = spin_operators(s)
    return np.cos(omega_t) * sz + np.sin(omega_t) * sx
