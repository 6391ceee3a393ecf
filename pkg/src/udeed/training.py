"""Ensemble training: composite loss, gradients, initialization, descent.

The trained object is an ensemble of m logistic classifiers minimizing

    V(model) = V_emp + gamma * V_div

where V_emp is the averaged negative log-likelihood on the labeled set,

    V_emp = (1 / (m |L|)) sum_k sum_i -BLH(w_k, x_i, y_i),

and V_div is the averaged pairwise agreement of the bipolar outputs on a
diversity set D,

    V_div = (2 / (m (m-1))) sum_{p<q} (1/|D|) sum_{x in D} f_p(x) f_q(x).

Minimizing V_div pushes classifier outputs apart, so the ensemble stays
accurate on the labeled examples while disagreeing on D. Training runs in
two phases: each classifier is first fit alone on a bootstrap sample of the
labeled set (ridge-regularized likelihood maximization), then the whole
ensemble descends V by simultaneous fixed-rate gradient steps. Which D the
descent uses is the variant choice: none (LC), the labeled features (LCD),
or a labeled-features stage followed by an unlabeled stage (LCUD).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .core import EnsembleModel, TrainConfig, TrainingData, Variant
from .data import bootstrap_sample
from .errors import (
    DimensionMismatchError,
    NonFiniteLossError,
    SingleClassWarning,
    UdeedError,
)

#: Initialization stops after the first update that improves its objective
#: by less than this.
INIT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class LossBreakdown:
    """One evaluation of the composite loss: v_total = v_emp + gamma * v_div."""

    v_total: float
    v_emp: float
    v_div: float


@dataclass(frozen=True)
class DescentResult:
    """Outcome of one descent stage.

    steps counts accepted steps; trace holds the loss at the start point
    followed by one entry per accepted step (a rejected final step is
    rolled back and leaves no entry).
    """

    model: EnsembleModel
    steps: int
    trace: tuple[LossBreakdown, ...]


@dataclass(frozen=True)
class TrainResult:
    """Full training outcome: the pre-descent ensemble and each stage."""

    model: EnsembleModel
    initial: EnsembleModel
    stages: tuple[DescentResult, ...]


def _as_features(x, dim: int | None, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    if arr.ndim != 2:
        raise UdeedError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise UdeedError(f"{name} contains non-finite entries")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatchError(
            f"{name} dimension {arr.shape[1]} != model dimension {dim}"
        )
    return arr


def _as_labeled(model_dim: int | None, labeled_x, labeled_y):
    x = _as_features(labeled_x, model_dim, "labeled_x")
    if x.shape[0] == 0:
        raise UdeedError("labeled set must be non-empty")
    y = np.asarray(labeled_y)
    if y.ndim != 1 or y.shape[0] != x.shape[0]:
        raise DimensionMismatchError(
            f"labeled_y shape {y.shape} does not match {x.shape[0]} labeled rows"
        )
    if not np.all(np.isin(y, (-1, 1))):
        raise UdeedError("labeled_y must contain only -1 and +1")
    return x, np.ascontiguousarray(y, dtype=np.float64)


def _as_diversity(diversity_x, dim: int | None):
    if diversity_x is None:
        return None
    dx = _as_features(diversity_x, dim, "diversity_x")
    if dx.shape[0] == 0:
        raise UdeedError("diversity set must be non-empty (pass None for no set)")
    return dx


def _evaluate(weights, x, y, dx, gamma):
    """Composite loss and its gradient at one weight matrix.

    Returns (LossBreakdown, gradient) where gradient is (m, d). With no
    diversity set (dx None) v_div is exactly 0 and the gradient is purely
    empirical.
    """
    m = weights.shape[0]
    emp_scale = 1.0 / (m * x.shape[0])
    blh_total, emp_grads = kernels.emp_sum_grad(weights, x, y)
    v_emp = -emp_scale * blh_total
    grad = (-emp_scale) * emp_grads
    if dx is None:
        v_div = 0.0
    else:
        f_values = kernels.f_matrix(weights, dx)
        pair_sum, div_grads = kernels.div_sum_grad(f_values, dx)
        denom = m * (m - 1) * dx.shape[0]
        v_div = 2.0 * pair_sum / denom
        if gamma != 0.0:
            grad += (gamma / denom) * div_grads
    return LossBreakdown(v_emp + gamma * v_div, v_emp, v_div), grad


def empirical_loss(model: EnsembleModel, labeled_x, labeled_y) -> float:
    """V_emp: averaged negative log-likelihood of the labeled set; >= 0."""
    x, y = _as_labeled(model.dimension, labeled_x, labeled_y)
    losses, _ = _evaluate(model.weights, x, y, None, 0.0)
    return losses.v_emp


def pair_diversity(w_p, w_q, features) -> float:
    """Averaged output product of two classifiers over a feature set.

    d(f_p, f_q) = (1/|D|) sum_x f_p(x) f_q(x), in (-1, +1); symmetric in
    its two weight vectors.
    """
    w_p = np.asarray(w_p, dtype=np.float64)
    w_q = np.asarray(w_q, dtype=np.float64)
    if w_p.ndim != 1 or w_p.shape != w_q.shape:
        raise DimensionMismatchError(
            f"weight vectors must be 1-dimensional and equal length, "
            f"got {w_p.shape} and {w_q.shape}"
        )
    dx = _as_diversity(features, w_p.shape[0])
    f_values = kernels.f_matrix(np.ascontiguousarray(np.stack([w_p, w_q])), dx)
    return float(np.mean(f_values[0] * f_values[1]))


def diversity_loss(model: EnsembleModel, diversity_x) -> float:
    """V_div: averaged pairwise output product over the diversity set.

    diversity_x may be None, meaning no diversity set; the loss is then
    exactly 0. Bounded by (-1, +1) otherwise.
    """
    dx = _as_diversity(diversity_x, model.dimension)
    if dx is None:
        return 0.0
    f_values = kernels.f_matrix(model.weights, dx)
    pair_sum, _ = kernels.div_sum_grad(f_values, dx)
    return 2.0 * pair_sum / (model.m * (model.m - 1) * dx.shape[0])


def total_loss(model: EnsembleModel, labeled_x, labeled_y, diversity_x,
               gamma: float) -> LossBreakdown:
    """Composite loss V = V_emp + gamma * V_div at the model's weights."""
    if not (math.isfinite(gamma) and gamma >= 0):
        raise UdeedError(f"gamma must be finite and >= 0, got {gamma}")
    x, y = _as_labeled(model.dimension, labeled_x, labeled_y)
    dx = _as_diversity(diversity_x, model.dimension)
    losses, _ = _evaluate(model.weights, x, y, dx, gamma)
    return losses


def loss_gradient(model: EnsembleModel, labeled_x, labeled_y, diversity_x,
                  gamma: float) -> np.ndarray:
    """Gradient of the composite loss, one (m, d) row per classifier.

    Row k is -(1/(m|L|)) sum_i dBLH/dw_k plus, when a diversity set is
    present, (gamma/(m(m-1)|D|)) sum_x (S(x) - f_k(x)) (1 - f_k(x)^2) x
    with S(x) the sum of all classifier outputs at x.
    """
    if not (math.isfinite(gamma) and gamma >= 0):
        raise UdeedError(f"gamma must be finite and >= 0, got {gamma}")
    x, y = _as_labeled(model.dimension, labeled_x, labeled_y)
    dx = _as_diversity(diversity_x, model.dimension)
    _, grad = _evaluate(model.weights, x, y, dx, gamma)
    return grad


def _fit_one(x, y, config: TrainConfig) -> np.ndarray:
    """Fit one classifier on (x, y) by minimizing the ridge likelihood

        J(w) = 0.5 ||w||^2 + lambda * sum_i -BLH(w, x_i, y_i)

    with plain fixed-rate gradient descent from the zero vector: at most
    init_max_steps updates at the configured learning rate, stopping early
    after any update whose objective improvement falls below
    INIT_TOLERANCE. The last update is kept. No line search or rate
    adaptation is used anywhere in training, so on larger labeled sets the
    sum-form data term makes the first update overshoot and the loop stops
    there, leaving a large-margin classifier pointed along the sampled
    class-difference direction.
    """
    lam = config.lambda_
    w = np.zeros(x.shape[1])
    blh_total, g = kernels.emp_sum_grad(w[None, :], x, y)
    objective = 0.5 * float(w @ w) - lam * blh_total
    for _ in range(config.init_max_steps):
        w = w - config.learning_rate * (w - lam * g[0])
        blh_total, g = kernels.emp_sum_grad(w[None, :], x, y)
        objective_new = 0.5 * float(w @ w) - lam * blh_total
        if objective - objective_new < INIT_TOLERANCE:
            break
        objective = objective_new
    return w


def init_ensemble(labeled_x, labeled_y, config: TrainConfig, rng) -> EnsembleModel:
    """Fit m classifiers independently, each on a bootstrap sample of L.

    Consumes rng deterministically (one bootstrap draw per classifier, in
    order), so a fixed seed fixes the ensemble. A single-class labeled set
    is allowed but warned about: every classifier then degenerates toward
    constant output.
    """
    x, y = _as_labeled(None, labeled_x, labeled_y)
    if np.unique(y).size < 2:
        warnings.warn(
            "labeled set contains a single class; the initialized ensemble "
            "degenerates toward constant output",
            SingleClassWarning,
            stacklevel=2,
        )
    weights = np.empty((config.m, x.shape[1]))
    for k in range(config.m):
        sample_x, sample_y = bootstrap_sample(x, y, rng)
        weights[k] = _fit_one(sample_x, sample_y, config)
    return EnsembleModel(weights)


def descend(model: EnsembleModel, labeled_x, labeled_y, diversity_x,
            config: TrainConfig) -> DescentResult:
    """Refine an ensemble by simultaneous fixed-rate gradient steps.

    All classifiers step together from the current ensemble's gradient.
    The loop stops at the first step after which v_total fails to strictly
    decrease, or, when a diversity set is present, after which v_div fails
    to strictly decrease; that non-improving step is rolled back. Runs at
    most config.max_steps steps; max_steps = 0 returns the model unchanged.

    Raises NonFiniteLossError naming the step if the loss leaves the float
    range, and dimension errors when the data does not match the model.
    """
    x, y = _as_labeled(model.dimension, labeled_x, labeled_y)
    dx = _as_diversity(diversity_x, model.dimension)
    weights = np.array(model.weights, dtype=np.float64, order="C")
    losses, grad = _evaluate(weights, x, y, dx, config.gamma)
    if not math.isfinite(losses.v_total):
        raise NonFiniteLossError("starting loss is non-finite", step=0)
    trace = [losses]
    steps = 0
    for step in range(1, config.max_steps + 1):
        weights_new = weights - config.learning_rate * grad
        losses_new, grad_new = _evaluate(weights_new, x, y, dx, config.gamma)
        if not (math.isfinite(losses_new.v_total) and math.isfinite(losses_new.v_div)):
            raise NonFiniteLossError("loss became non-finite", step=step)
        improved = losses_new.v_total < losses.v_total
        if dx is not None:
            improved = improved and losses_new.v_div < losses.v_div
        if not improved:
            break
        weights, losses, grad = weights_new, losses_new, grad_new
        trace.append(losses)
        steps += 1
    return DescentResult(EnsembleModel(weights), steps, tuple(trace))


def train_traced(data: TrainingData, config: TrainConfig) -> TrainResult:
    """Train per the configured variant, keeping per-stage details.

    LC descends with no diversity set, LCD with the labeled features, and
    LCUD first with the labeled features, then from that model with the
    unlabeled features (each stage with its own max_steps budget). With
    gamma = 0 the diversity term is inert, the variants minimize the same
    purely empirical objective, and all are trained by the single LC-style
    stage, so their models are bit-identical for a shared seed.

    All randomness flows from config.seed through one PCG64 generator, so
    identical (data, config) pairs give identical results.
    """
    if config.variant is Variant.LCUD and data.n_unlabeled == 0:
        raise UdeedError("LCUD requires a non-empty unlabeled set (empty U)")
    rng = np.random.default_rng(config.seed)
    initial = init_ensemble(data.labeled_x, data.labeled_y, config, rng)
    lx, ly = data.labeled_x, data.labeled_y
    if config.gamma == 0.0 or config.variant is Variant.LC:
        stages = (descend(initial, lx, ly, None, config),)
    elif config.variant is Variant.LCD:
        stages = (descend(initial, lx, ly, data.labeled_x, config),)
    else:
        first = descend(initial, lx, ly, data.labeled_x, config)
        second = descend(first.model, lx, ly, data.unlabeled_x, config)
        stages = (first, second)
    return TrainResult(stages[-1].model, initial, stages)


def train(data: TrainingData, config: TrainConfig) -> EnsembleModel:
    """Train an ensemble; see train_traced for the variant semantics."""
    return train_traced(data, config).model
