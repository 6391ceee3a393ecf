"""Pure-numpy batch kernels (fallback backend).

Mirrors the compiled module udeed._kernels._speedups function for function.
Inputs are C-contiguous float64 arrays; labels are passed as float64 -1/+1
so both backends share one signature.
"""

import numpy as np

#: Same clamp as udeed.logistic.G_CLAMP, keeping ln g finite downstream.
G_CLAMP = 1e-15


def _sigmoid(s):
    out = np.empty_like(s)
    pos = s >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-s[pos]))
    es = np.exp(s[~pos])
    out[~pos] = es / (1.0 + es)
    return out


def f_matrix(weights, features):
    """Bipolar outputs F[k, j] = 2 sigmoid(w_k . x_j) - 1, clamped.

    weights is (m, d), features is (n, d); returns (m, n).
    """
    g = _sigmoid(weights @ features.T)
    np.clip(g, G_CLAMP, 1.0 - G_CLAMP, out=g)
    return 2.0 * g - 1.0


def emp_sum_grad(weights, features, labels):
    """Total log-likelihood and its per-classifier gradients.

    Returns (sum_k sum_j BLH(w_k, x_j, y_j), grads) where grads[k] =
    sum_j ((1 + y_j)/2 - sigmoid(w_k . x_j)) x_j, the exact derivative of
    the summed BLH with respect to w_k.
    """
    scores = weights @ features.T
    z = -labels[None, :] * scores
    total = -float(np.logaddexp(0.0, z).sum())
    coef = (1.0 + labels[None, :]) / 2.0 - _sigmoid(scores)
    return total, coef @ features


def div_sum_grad(f_values, features):
    """Raw pairwise-product sum and its gradient accumulators.

    f_values is the (m, n) output of f_matrix on the diversity set. Returns
    (sum over pairs p < q of sum_j F[p, j] F[q, j], R) where R[k] =
    sum_j (S_j - F[k, j]) (1 - F[k, j]^2) x_j with S_j the column sums of
    f_values. Callers apply the 1/|D| and pair-count normalizations.
    """
    gram = f_values @ f_values.T
    pair_sum = float((gram.sum() - np.trace(gram)) / 2.0)
    col_sums = f_values.sum(axis=0)
    coef = (col_sums[None, :] - f_values) * (1.0 - f_values * f_values)
    return pair_sum, coef @ features
