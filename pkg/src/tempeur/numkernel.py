"""Dense complex linear algebra for small Hermitian problems.

Matrices are plain ``numpy`` complex128 arrays. Every routine returns a new
array and never mutates its arguments.
"""

from dataclasses import dataclass

import numpy as np

from .constants import TOL
from .errors import ContractViolation

__all__ = [
    "EigenSystem",
    "as_matrix",
    "matrices_close",
    "is_hermitian",
    "eig_hermitian",
    "expm_skew_hermitian",
    "kron",
    "partial_trace",
]


def as_matrix(a, name="matrix"):
    """Coerce ``a`` to a 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise ContractViolation(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    return m


def matrices_close(a, b, atol):
    """Entrywise comparison with an explicit absolute tolerance."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) <= atol)


def is_hermitian(a, atol=TOL["hermitian"]):
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and matrices_close(a, a.conj().T, atol)


def _require_hermitian(a, name):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ContractViolation(f"{name} must be square, got shape {m.shape}")
    if not is_hermitian(m):
        dev = np.max(np.abs(m - m.conj().T))
        raise ContractViolation(f"{name} is not Hermitian (max |A - A^H| = {dev:.3e})")
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in ascending order and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return len(self.eigenvalues)

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _fix_phases(v):
    # first component with non-negligible magnitude made real-positive
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = int(np.argmax(np.abs(col) > 1e-8 * np.max(np.abs(col))))
        phase = col[idx] / abs(col[idx])
        v[:, k] = col / phase
        v[idx, k] = abs(col[idx])
    return v


def eig_hermitian(a):
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come out ascending; each eigenvector is normalised so that its
    first non-negligible component is real and positive, which makes the
    output deterministic for nondegenerate spectra.

    Raises
    ------
    ContractViolation
        If ``a`` is not square or not Hermitian within ``TOL["hermitian"]``.
    """
    m = _require_hermitian(a, "A")
    # symmetrise so LAPACK sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return EigenSystem(eigenvalues=w, eigenvectors=_fix_phases(v))


def expm_skew_hermitian(g, t):
    """Return ``exp(-1j * t * G)`` for Hermitian ``G`` via its spectral decomposition."""
    es = eig_hermitian(g)
    v = es.eigenvectors
    return (v * np.exp(-1j * t * es.eigenvalues)) @ v.conj().T


def kron(a, b):
    return np.kron(as_matrix(a, "A"), as_matrix(b, "B"))


def partial_trace(m, subsystem, dims):
    """Trace out ``subsystem`` (``"A"`` or ``"B"``) of an operator on A⊗B.

    ``dims`` is ``(d_A, d_B)``; the kept factor is returned.
    """
    m = as_matrix(m, "M")
    d_a, d_b = (int(d) for d in dims)
    if d_a < 1 or d_b < 1 or m.shape != (d_a * d_b, d_a * d_b):
        raise ContractViolation(
            f"operator of shape {m.shape} does not match dims ({d_a}, {d_b})"
        )
    t = m.reshape(d_a, d_b, d_a, d_b)
    if subsystem == "B":
        return np.einsum("ijkj->ik", t)
    if subsystem == "A":
        return np.einsum("ijil->jl", t)
    raise ContractViolation(f"subsystem must be 'A' or 'B', got {subsystem!r}")
