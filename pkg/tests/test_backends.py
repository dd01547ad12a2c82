import math
import os

import numpy as np
import pytest

from tempeur import _backend, _pykernels

compiled = pytest.importorskip("tempeur._ckernels")


@pytest.mark.skipif(os.environ.get("TEMPEUR_PURE_PYTHON", "") not in ("", "0"), reason="fallback forced")
def test_compiled_backend_selected():
    assert _backend.BACKEND == "cython"


@pytest.mark.parametrize("twice_s", [1, 2, 3, 4, 7, 10, 20])
def test_wigner_kernels_agree(twice_s):
    for angle in np.linspace(-2 * math.pi, 2 * math.pi, 17):
        a = compiled.wigner_small_d(twice_s, angle)
        b = _pykernels.wigner_small_d(twice_s, angle)
        assert np.max(np.abs(a - b)) < 1e-12


@pytest.mark.parametrize("twice_s", [1, 2, 3, 4, 6])
def test_entropy_curves_agree(twice_s):
    angles = np.linspace(0, 2 * math.pi, 101)
    a = compiled.conditional_entropy_curve(twice_s, angles)
    b = _pykernels.conditional_entropy_curve(twice_s, angles)
    assert np.max(np.abs(a - b)) < 1e-12


def test_curve_is_position_independent():
    angles = np.linspace(0, 6, 41)
    full = compiled.conditional_entropy_curve(3, angles)
    for k in (0, 17, 40):
        assert compiled.conditional_entropy_curve(3, angles[k : k + 1])[0] == full[k]


def test_forced_fallback(monkeypatch):
    import importlib

    monkeypatch.setenv("TEMPEUR_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(_backend)
        assert mod.BACKEND == "python" and mod.kernels is _pykernels
    finally:
        monkeypatch.delenv("TEMPEUR_PURE_PYTHON")
        importlib.reload(_backend)
