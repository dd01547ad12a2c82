"""Term table for the explicit Wigner small-d sum.

Each matrix entry d[m', m](beta) is a short sum of terms
``coef * cos(beta/2)**cpow * sin(beta/2)**spow``. Coefficients are built from
exact integer factorials and rounded to double once. Rows and columns are
indexed by ``(twice_s - twice_m) // 2``, i.e. basis order m = s, s-1, ..., -s.
"""

from functools import lru_cache
from math import factorial, sqrt

import numpy as np

from .constants import MAX_TWICE_S
from .errors import UnsupportedInput

_FACT = [factorial(n) for n in range(MAX_TWICE_S + 1)]


@lru_cache(maxsize=None)
def wigner_terms(twice_s):
    """Return ``(offsets, coef, cpow, spow)`` in CSR layout over the d*d entries.

    Terms of entry ``i*d + j`` live in ``offsets[i*d + j] : offsets[i*d + j + 1]``.
    """
    n = int(twice_s)
    if n < 1 or n > MAX_TWICE_S:
        raise UnsupportedInput(f"twice_s must be in [1, {MAX_TWICE_S}], got {twice_s}")
    d = n + 1
    offsets = [0]
    coef, cpow, spow = [], [], []
    for i in range(d):
        jpmp = n - i  # j + m'
        jmmp = i  # j - m'
        for col in range(d):
            jpm = n - col  # j + m
            jmm = col  # j - m
            root = sqrt(_FACT[jpmp] * _FACT[jmmp] * _FACT[jpm] * _FACT[jmm])
            # m' - m = (jpmp - jpm)
            dm = jpmp - jpm
            for k in range(max(0, -dm), min(jpm, jmmp) + 1):
                den = _FACT[jpm - k] * _FACT[k] * _FACT[jmmp - k] * _FACT[dm + k]
                sign = -1.0 if (dm + k) % 2 else 1.0
                coef.append(sign * root / den)
                cpow.append(n - 2 * k - dm)
                spow.append(2 * k + dm)
            offsets.append(len(coef))
    return (
        np.asarray(offsets, dtype=np.int64),
        np.asarray(coef, dtype=np.float64),
        np.asarray(cpow, dtype=np.int64),
        np.asarray(spow, dtype=np.int64),
    )
