"""Classical and quantum entropy functionals, all in bits."""

import math

import numpy as np

from .constants import TOL
from .errors import ContractViolation
from .quantum import BipartiteState, DensityMatrix, JointDistribution

__all__ = [
    "shannon",
    "binary_entropy",
    "joint_entropy",
    "conditional_entropy",
    "conditional_entropy_given",
    "mutual_information",
    "relative_entropy",
    "von_neumann_entropy",
    "conditional_vn",
]


def _distribution(p):
    p = np.asarray(p, dtype=np.float64).ravel()
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise ContractViolation("distribution must be a non-empty finite vector")
    if np.any(p < -TOL["clamp"]):
        raise ContractViolation(f"distribution has negative entry {p.min():.3e}")
    if abs(p.sum() - 1.0) > TOL["normalization"]:
        raise ContractViolation(f"distribution sums to {p.sum()!r}")
    return p


def _entropy_terms(p):
    # 0 log 0 := 0, with everything below the threshold treated as 0
    return -math.fsum(float(x) * math.log2(x) for x in p if x >= TOL["log_zero"])


def shannon(p):
    """Shannon entropy ``-sum p log2 p``."""
    return _entropy_terms(_distribution(p))


def binary_entropy(p):
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"binary entropy needs 0 <= p <= 1, got {p!r}")
    return _entropy_terms((p, 1.0 - p))


def _table(j):
    if isinstance(j, JointDistribution):
        return j.p
    t = np.asarray(j, dtype=np.float64)
    if t.ndim != 2:
        raise ContractViolation("joint distribution must be a 2-D table")
    _distribution(t)
    return t


def joint_entropy(j):
    return _entropy_terms(_table(j).ravel())


def conditional_entropy(j):
    """``H(B|A) = H(A,B) - H(A)`` where A indexes rows (the prior outcome)."""
    t = _table(j)
    return _entropy_terms(t.ravel()) - _entropy_terms(t.sum(axis=1))


def conditional_entropy_given(j, a_index):
    """Entropy of the later outcome given the prior outcome ``a_index``."""
    t = _table(j)
    row = t[a_index]
    pa = row.sum()
    if pa <= TOL["clamp"]:
        raise ContractViolation(f"prior outcome {a_index} has zero probability")
    return _entropy_terms(row / pa)


def mutual_information(j):
    """``I(A:B) = H(A) + H(B) - H(A,B)``."""
    t = _table(j)
    return _entropy_terms(t.sum(axis=1)) + _entropy_terms(t.sum(axis=0)) - _entropy_terms(t.ravel())


def relative_entropy(p, q):
    """Kullback-Leibler divergence ``D(p||q)`` in bits.

    Returns ``math.inf`` when ``p`` puts weight where ``q`` has none.
    """
    p = _distribution(p)
    q = _distribution(q)
    if p.shape != q.shape:
        raise ContractViolation(f"length mismatch: {p.size} vs {q.size}")
    terms = []
    for pk, qk in zip(p, q):
        if pk < TOL["log_zero"]:
            continue
        if qk < TOL["log_zero"]:
            return math.inf
        terms.append(pk * math.log2(pk / qk))
    # rounding can leave -1e-17 at p == q
    return max(0.0, math.fsum(terms))


def von_neumann_entropy(rho):
    """``S(rho) = -sum lambda log2 lambda`` over the spectrum."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    lam = np.linalg.eigvalsh(0.5 * (rho.matrix + rho.matrix.conj().T))
    return -math.fsum(float(x) * math.log2(x) for x in lam if x > TOL["eig_zero"])


def conditional_vn(rho_ab):
    """``S(A|B) = S(rho_AB) - S(rho_B)``; negative for entangled states."""
    if not isinstance(rho_ab, BipartiteState):
        raise ContractViolation("conditional_vn expects a BipartiteState")
    return von_neumann_entropy(rho_ab.state) - von_neumann_entropy(rho_ab.reduced("B"))
