"""Pure-Python implementation of the hot kernels (fallback backend)."""

import math

import numpy as np

from ._wigner_table import wigner_terms

_LOG_ZERO = 1e-15


def wigner_small_d(twice_s, angle):
    offsets, coef, cpow, spow = wigner_terms(twice_s)
    d = twice_s + 1
    c = math.cos(0.5 * angle)
    s = math.sin(0.5 * angle)
    coef = coef.tolist()
    cpow = cpow.tolist()
    spow = spow.tolist()
    offsets = offsets.tolist()
    out = np.empty((d, d))
    for e in range(d * d):
        lo, hi = offsets[e], offsets[e + 1]
        out[e // d, e % d] = math.fsum(
            coef[t] * c ** cpow[t] * s ** spow[t] for t in range(lo, hi)
        )
    return out


def _plogp_sum(values):
    return -math.fsum(p * math.log2(p) for p in values if p >= _LOG_ZERO)


def spin_conditional_entropy(twice_s, angle):
    d = twice_s + 1
    w = wigner_small_d(twice_s, angle)
    # P(m0, m) = d[m, m0]^2 / (2s+1): prior outcome indexes the column
    joint = (w * w).T / d
    rows = joint.tolist()
    h_joint = _plogp_sum(p for row in rows for p in row)
    h_prior = _plogp_sum(math.fsum(row) for row in rows)
    return h_joint - h_prior


def conditional_entropy_curve(twice_s, angles):
    return np.array([spin_conditional_entropy(twice_s, float(a)) for a in angles])
