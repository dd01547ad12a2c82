"""States, observables and projective (sequential) measurement statistics."""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import TOL
from .errors import ContractViolation
from .numkernel import as_matrix, eig_hermitian, is_hermitian, kron, partial_trace
from .spin import SpinLabel, evolved_sz, spin_operators, wigner_small_d

__all__ = [
    "DensityMatrix",
    "Observable",
    "JointDistribution",
    "BipartiteState",
    "clean_probabilities",
    "measure_distribution",
    "sequential_joint",
    "sequential_joint_spin",
    "post_measurement_bipartite",
    "bell_state",
    "random_unitary",
    "random_density_matrix",
    "random_observable",
    "fourier_pair",
    "rotor_observables",
]


def clean_probabilities(p):
    """Apply the clamping policy to a computed probability vector or table.

    Entries in ``[-TOL['clamp'], 0)`` become 0. If the total then deviates from 1
    by less than ``TOL['normalization']`` the values are renormalised; anything
    worse raises instead of being silently repaired.
    """
    p = np.array(p, dtype=np.float64)
    if np.any(~np.isfinite(p)):
        raise ContractViolation("probabilities must be finite")
    if np.any(p < -TOL["clamp"]):
        raise ContractViolation(f"negative probability {p.min():.3e}")
    p[p < 0] = 0.0
    total = p.sum()
    if abs(total - 1.0) >= TOL["normalization"]:
        raise ContractViolation(f"probabilities sum to {total!r}, not 1")
    if total != 1.0:
        p /= total
    return p


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix, "rho")
        if m.shape[0] != m.shape[1]:
            raise ContractViolation(f"density matrix must be square, got {m.shape}")
        if not is_hermitian(m):
            raise ContractViolation("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TOL["trace"]:
            raise ContractViolation(f"density matrix has trace {tr!r}")
        if np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -TOL["psd"]:
            raise ContractViolation("density matrix is not positive semidefinite")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def maximally_mixed(cls, d):
        return cls(np.eye(d, dtype=np.complex128) / d)

    @classmethod
    def pure(cls, psi):
        psi = np.asarray(psi, dtype=np.complex128).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def _default_label(value):
    twice = 2.0 * value
    r = round(twice)
    if abs(twice - r) < TOL["degenerate"]:
        return Fraction(int(r), 2)
    return float(value)


class Observable:
    """Hermitian operator with its spectral projectors.

    Eigenvalues closer than ``TOL['degenerate']`` are merged into one outcome
    whose projector is the sum of the rank-1 projectors. ``labels`` are the
    outcome names; by default exact half-integers where the eigenvalue is one,
    else the float eigenvalue.
    """

    def __init__(self, matrix, labels=None):
        m = as_matrix(matrix, "observable")
        self.spectrum = eig_hermitian(m)
        self.matrix = m.copy()
        self.matrix.setflags(write=False)

        w = self.spectrum.eigenvalues
        v = self.spectrum.eigenvectors
        clusters = [[0]]
        for k in range(1, len(w)):
            if w[k] - w[clusters[-1][-1]] < TOL["degenerate"]:
                clusters[-1].append(k)
            else:
                clusters.append([k])
        self.projectors = []
        for idx in clusters:
            vs = v[:, idx]
            proj = vs @ vs.conj().T
            proj.setflags(write=False)
            self.projectors.append((float(np.mean(w[idx])), proj))

        if labels is None:
            labels = tuple(_default_label(ev) for ev, _ in self.projectors)
        labels = tuple(labels)
        if len(labels) != len(self.projectors):
            raise ContractViolation(
                f"{len(labels)} labels given for {len(self.projectors)} outcomes"
            )
        self.labels = labels

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def nondegenerate(self):
        return len(self.projectors) == self.dim

    def __repr__(self):
        return f"Observable(dim={self.dim}, outcomes={list(self.labels)})"


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Probability table ``p[a, b]`` over a prior outcome ``a`` and a later outcome ``b``."""

    labels_a: tuple
    labels_b: tuple
    p: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = clean_probabilities(self.p)
        if p.ndim != 2 or p.shape != (len(self.labels_a), len(self.labels_b)):
            raise ContractViolation(
                f"table shape {p.shape} does not match labels "
                f"({len(self.labels_a)}, {len(self.labels_b)})"
            )
        p.setflags(write=False)
        object.__setattr__(self, "labels_a", tuple(self.labels_a))
        object.__setattr__(self, "labels_b", tuple(self.labels_b))
        object.__setattr__(self, "p", p)

    def marginal_a(self):
        return self.p.sum(axis=1)

    def marginal_b(self):
        return self.p.sum(axis=0)

    def reindexed(self, labels_a, labels_b):
        """Return the table with rows/columns permuted to the given label orders."""
        ia = [self.labels_a.index(a) for a in labels_a]
        ib = [self.labels_b.index(b) for b in labels_b]
        return self.p[np.ix_(ia, ib)]

    def transposed(self):
        return JointDistribution(self.labels_b, self.labels_a, self.p.T)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    dims: tuple
    state: DensityMatrix

    def __post_init__(self):
        d_a, d_b = (int(d) for d in self.dims)
        if not isinstance(self.state, DensityMatrix):
            object.__setattr__(self, "state", DensityMatrix(self.state))
        if self.state.dim != d_a * d_b:
            raise ContractViolation(
                f"state of dimension {self.state.dim} does not match dims ({d_a}, {d_b})"
            )
        object.__setattr__(self, "dims", (d_a, d_b))

    @property
    def matrix(self):
        return self.state.matrix

    def reduced(self, keep):
        """Reduced state on ``keep`` (``"A"`` or ``"B"``)."""
        traced = "B" if keep == "A" else "A"
        return DensityMatrix(partial_trace(self.matrix, traced, self.dims))

    @classmethod
    def product(cls, rho_a, rho_b):
        return cls((rho_a.dim, rho_b.dim), DensityMatrix(kron(rho_a.matrix, rho_b.matrix)))


def _check_dims(*ops):
    dims = {op.dim for op in ops}
    if len(dims) != 1:
        raise ContractViolation(f"dimension mismatch: {sorted(dims)}")


def measure_distribution(rho, obs):
    """Born probabilities ``Tr[rho Pi_k]`` in the observable's outcome order."""
    _check_dims(rho, obs)
    p = [np.real(np.trace(rho.matrix @ proj)) for _, proj in obs.projectors]
    return clean_probabilities(p)


def sequential_joint(rho, first, second):
    """Two-time statistics ``P(a, b) = Tr[Pi_a rho Pi_a Pi_b]`` (first measured, collapsed, then second)."""
    _check_dims(rho, first, second)
    table = np.empty((len(first.projectors), len(second.projectors)))
    for i, (_, pa) in enumerate(first.projectors):
        collapsed = pa @ rho.matrix @ pa
        for j, (_, pb) in enumerate(second.projectors):
            table[i, j] = np.real(np.trace(collapsed @ pb))
    return JointDistribution(first.labels, second.labels, table)


def sequential_joint_spin(s, angle):
    """Closed form ``P(m0, m) = |d^s_{m m0}(angle)|^2 / (2s+1)`` for the maximally mixed rotor.

    Labels are the magnetic numbers as exact fractions in basis order s..-s.
    """
    spin = s if isinstance(s, SpinLabel) else SpinLabel(s)
    w = wigner_small_d(spin, angle).matrix
    table = (w * w).T / spin.dim
    return JointDistribution(spin.m_values, spin.m_values, table)


def post_measurement_bipartite(rho_ab, obs):
    """Non-selective measurement of ``obs`` on subsystem A: ``sum_k (Pi_k x I) rho (Pi_k x I)``."""
    d_a, d_b = rho_ab.dims
    if obs.dim != d_a:
        raise ContractViolation(f"observable dimension {obs.dim} does not match d_A = {d_a}")
    eye_b = np.eye(d_b)
    out = np.zeros_like(rho_ab.matrix)
    for _, proj in obs.projectors:
        big = np.kron(proj, eye_b)
        out += big @ rho_ab.matrix @ big
    return BipartiteState(rho_ab.dims, DensityMatrix(out))


def bell_state(d=2):
    """Maximally entangled ``(1/sqrt d) sum_k |k>|k>`` on C^d x C^d."""
    if d < 2:
        raise ContractViolation(f"bell_state needs d >= 2, got {d}")
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[[k * d + k for k in range(d)]] = 1.0 / np.sqrt(d)
    return BipartiteState((d, d), DensityMatrix.pure(psi))


# random instances for sweeps and property tests


def random_unitary(d, rng):
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_density_matrix(d, rng, n_pure=None):
    """Mixture of ``n_pure`` random pure states with uniformly drawn weights."""
    n_pure = d if n_pure is None else n_pure
    psis = rng.standard_normal((n_pure, d)) + 1j * rng.standard_normal((n_pure, d))
    psis /= np.linalg.norm(psis, axis=1, keepdims=True)
    w = rng.uniform(size=n_pure)
    w /= w.sum()
    m = np.einsum("k,ki,kj->ij", w, psis, psis.conj())
    return DensityMatrix(0.5 * (m + m.conj().T))


def random_observable(d, rng, min_gap=1e-3):
    """Random nondegenerate observable ``U diag(lambda) U^H`` with eigenvalue gaps >= ``min_gap``."""
    while True:
        lam = np.sort(rng.uniform(-1.0, 1.0, size=d))
        if d == 1 or np.min(np.diff(lam)) >= min_gap:
            break
    u = random_unitary(d, rng)
    m = (u * lam) @ u.conj().T
    return Observable(0.5 * (m + m.conj().T))


def fourier_pair(d):
    """Mutually unbiased observables on C^d: ``Z = diag(0..d-1)`` and its Fourier conjugate ``X``.

    For d = 2 these have the eigenbases of sigma_z and sigma_x.
    """
    k = np.arange(d)
    f = np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)
    z = np.diag(k).astype(np.complex128)
    x = f @ z @ f.conj().T
    return Observable(0.5 * (x + x.conj().T)), Observable(z)


def rotor_observables(s, theta, phi):
    """The four rotor observables ``(X0, X, Z0, Z)`` for time separations ``theta``, ``phi``.

    X run: ``X0 = S_z(t)`` at ``wt = theta + pi/2``, then ``X = S_x``.
    Z run: ``Z0 = S_z cos(phi) + S_x sin(phi)``, then ``Z = S_z``. Both Z-run
    operators are the negatives of ``S_z(t)`` at ``wt = phi + pi`` and
    ``wt = pi``, which leaves outcome pairings and every entropy unchanged.
    For spin 1/2 (times two), ``X0 = cos(theta) sigma_x - sin(theta) sigma_z``.
    """
    sx, _, sz = spin_operators(s)
    return (
        Observable(evolved_sz(s, theta + np.pi / 2)),
        Observable(sx),
        Observable(evolved_sz(s, phi)),
        Observable(sz),
    )
