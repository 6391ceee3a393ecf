"""Logistic base classifier: output map and binary logistic likelihood.

A base classifier is a weight vector w over bias-augmented features x. Its
probabilistic output is g(x) = 1 / (1 + exp(-w.x)) and its bipolar output is
f(x) = 2 g(x) - 1 in (-1, +1), so sign(f) is the predicted label.

The log-likelihood of one example is

    BLH(w, x, y) = ((1+y)/2) ln g(x) + ((1-y)/2) ln (1 - g(x))

which is always <= 0 and symmetric under (y, w) -> (-y, -w). It is computed
through the softplus form ln(1 + e^z) = max(z, 0) + ln(1 + e^-|z|) so scores
with |w.x| up to the float64 range stay finite.
"""

from __future__ import annotations

import math

import numpy as np

from .core import LABELS, as_dense_vector
from .errors import DimensionMismatchError, UdeedError

#: Clamp bounds keeping g away from exact 0 and 1 so ln g stays finite.
G_CLAMP = 1e-15


def _score(w, x) -> float:
    w = as_dense_vector(w, "w")
    x = as_dense_vector(x, "x")
    if w.shape != x.shape:
        raise DimensionMismatchError(
            f"weight length {w.shape[0]} != feature length {x.shape[0]}"
        )
    return float(w @ x)


def _check_label(y: int):
    if y not in LABELS:
        raise UdeedError(f"label must be -1 or +1, got {y!r}")


def _softplus(z: float) -> float:
    """ln(1 + e^z), stable for any float64 z."""
    return max(z, 0.0) + math.log1p(math.exp(-abs(z)))


def logistic_g(w, x) -> float:
    """Probabilistic output g = sigmoid(w.x), clamped to [1e-15, 1 - 1e-15]."""
    s = _score(w, x)
    if s >= 0:
        g = 1.0 / (1.0 + math.exp(-s))
    else:
        e = math.exp(s)
        g = e / (1.0 + e)
    return min(max(g, G_CLAMP), 1.0 - G_CLAMP)


def base_output_f(w, x) -> float:
    """Bipolar output f = 2 g - 1, strictly inside (-1, +1)."""
    return 2.0 * logistic_g(w, x) - 1.0


def blh(w, x, y: int) -> float:
    """Binary logistic log-likelihood of one labeled example.

    Equals -((1+y)/2) ln(1 + e^(-w.x)) - ((1-y)/2) ln(1 + e^(w.x)); always
    <= 0, and 0 is approached only as the example becomes confidently
    correct.
    """
    _check_label(y)
    s = _score(w, x)
    if y == 1:
        return -_softplus(-s)
    return -_softplus(s)


def blh_gradient(w, x, y: int) -> np.ndarray:
    """Gradient of blh with respect to w.

    d BLH / dw = c x with c = (1+y)/2 - g(x), the exact derivative of the
    softplus form above (equivalently c = (1+y)(1-f)/4 - (1-y)(1+f)/4).
    """
    _check_label(y)
    w = as_dense_vector(w, "w")
    x = as_dense_vector(x, "x")
    if w.shape != x.shape:
        raise DimensionMismatchError(
            f"weight length {w.shape[0]} != feature length {x.shape[0]}"
        )
    s = float(w @ x)
    if s >= 0:
        g = 1.0 / (1.0 + math.exp(-s))
    else:
        e = math.exp(s)
        g = e / (1.0 + e)
    c = (1 + y) / 2.0 - g
    return c * x
