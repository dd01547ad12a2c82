"""Uncertainty relations and temporal-memory witnesses.

Every check returns a :class:`BoundReport` comparing a left-hand side with its
lower bound. Witnesses flag a violation only when the slack is below
``-TOL['violation']`` so rounding noise cannot certify nonclassicality.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .constants import TOL
from .errors import ContractViolation, UnsupportedInput
from .infotheory import conditional_entropy, conditional_vn, shannon
from .quantum import (
    JointDistribution,
    Observable,
    measure_distribution,
    post_measurement_bipartite,
    sequential_joint,
)
from .spin import SpinLabel, spin_operators

__all__ = [
    "BoundReport",
    "max_overlap_c",
    "robertson_check",
    "mu_check",
    "berta_check",
    "conditioned_bound",
    "steering_witness",
    "spin_overlap_c",
    "spin_conditional_entropy_curve",
    "m_witness",
]


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    rhs: float

    @property
    def slack(self):
        return self.lhs - self.rhs

    @property
    def satisfied(self):
        return self.slack >= -TOL["violation"]

    def __str__(self):
        state = "ok" if self.satisfied else "VIOLATED"
        return f"lhs={self.lhs:.12g} rhs={self.rhs:.12g} slack={self.slack:.3e} [{state}]"


def max_overlap_c(x, z):
    """Largest eigenvector overlap ``max |<x|z>|`` of two nondegenerate observables."""
    for name, obs in (("X", x), ("Z", z)):
        if not obs.nondegenerate:
            raise UnsupportedInput(f"{name} has a degenerate spectrum; c(X, Z) is undefined")
    if x.dim != z.dim:
        raise ContractViolation(f"dimension mismatch: {x.dim} vs {z.dim}")
    overlaps = np.abs(x.spectrum.eigenvectors.conj().T @ z.spectrum.eigenvectors)
    return float(min(1.0, overlaps.max()))


def _std(rho, a):
    mean = np.real(np.trace(rho @ a))
    second = np.real(np.trace(rho @ a @ a))
    return math.sqrt(max(0.0, second - mean * mean))


def robertson_check(rho, x, z):
    """Product of standard deviations against ``|<[X, Z]>| / 2``."""
    if not rho.dim == x.dim == z.dim:
        raise ContractViolation("dimension mismatch")
    m = rho.matrix
    comm = x.matrix @ z.matrix - z.matrix @ x.matrix
    return BoundReport(lhs=_std(m, x.matrix) * _std(m, z.matrix), rhs=0.5 * abs(np.trace(m @ comm)))


def mu_check(rho, x, z):
    """Maassen-Uffink: ``H(X) + H(Z) >= -2 log2 c(X, Z)``."""
    c = max_overlap_c(x, z)
    lhs = shannon(measure_distribution(rho, x)) + shannon(measure_distribution(rho, z))
    return BoundReport(lhs=lhs, rhs=-2.0 * math.log2(c))


def berta_check(rho_ab, x, z):
    """Quantum-memory bound ``S(X|B) + S(Z|B) >= -2 log2 c + S(A|B)``."""
    c = max_overlap_c(x, z)
    lhs = conditional_vn(post_measurement_bipartite(rho_ab, x)) + conditional_vn(
        post_measurement_bipartite(rho_ab, z)
    )
    return BoundReport(lhs=lhs, rhs=-2.0 * math.log2(c) + conditional_vn(rho_ab))


def conditioned_bound(rho, x0, x, z0, z):
    """Floor on ``H(X|X0) + H(Z|Z0)`` once prior outcomes are known.

    The bound is ``max[0, -2 log2 c - min(H(X), H(X0)) - min(H(Z), H(Z0))]``
    with all marginal entropies evaluated on ``rho`` itself.
    """
    c = max_overlap_c(x, z)
    lhs = conditional_entropy(sequential_joint(rho, x0, x)) + conditional_entropy(
        sequential_joint(rho, z0, z)
    )

    def h(obs):
        return shannon(measure_distribution(rho, obs))

    rhs = max(0.0, -2.0 * math.log2(c) - min(h(x), h(x0)) - min(h(z), h(z0)))
    return BoundReport(lhs=lhs, rhs=rhs)


def steering_witness(jx, jz, c):
    """Temporal entropic steering inequality ``H(X|X0) + H(Z|Z0) >= -2 log2 c``.

    Any classical (hidden-state) temporal model satisfies it, so an unsatisfied
    report certifies nonclassical temporal correlations.
    """
    if not 0.0 < c <= 1.0:
        raise ContractViolation(f"overlap c must lie in (0, 1], got {c!r}")
    for j in (jx, jz):
        if not isinstance(j, JointDistribution):
            raise ContractViolation("steering_witness expects JointDistribution inputs")
    return BoundReport(
        lhs=conditional_entropy(jx) + conditional_entropy(jz), rhs=-2.0 * math.log2(c)
    )


def _twice_s(s):
    return s.twice_s if isinstance(s, SpinLabel) else SpinLabel(s).twice_s


@lru_cache(maxsize=None)
def _spin_two_log_c(twice_s):
    sx, _, sz = spin_operators(twice_s)
    return 2.0 * math.log2(max_overlap_c(Observable(sx), Observable(sz)))


def spin_overlap_c(s):
    """``c(S_x, S_z)`` for spin ``s``."""
    return 2.0 ** (0.5 * _spin_two_log_c(_twice_s(s)))


def spin_conditional_entropy_curve(s, angles):
    """Conditional entropy of the later rotor outcome given the earlier one, per angle.

    Evaluated by the compiled kernel when available. Agrees with
    ``conditional_entropy(sequential_joint_spin(s, angle))`` to rounding.
    """
    return kernels.conditional_entropy_curve(_twice_s(s), np.asarray(angles, dtype=np.float64))


def m_witness(s, theta, phi):
    """Conditional-entropy sum minus the Maassen-Uffink bound for the spin-s rotor.

    Negative values mean the earlier measurements acted as a quantum temporal
    memory that beats the unconditioned bound.
    """
    ts = _twice_s(s)
    h = spin_conditional_entropy_curve(ts, [theta, phi])
    return float((h[0] + h[1]) + _spin_two_log_c(ts))
