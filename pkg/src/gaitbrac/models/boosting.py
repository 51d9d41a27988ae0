"""AdaBoost (discrete + R2) and gradient boosting on the from-scratch CART.

All four trainers are deterministic: base trees are fit on weighted data
directly (no bootstrap), so two runs on the same inputs produce identical
ensembles bit for bit.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateWeights, EmptyData, NonBinaryLabels, SingleClass
from .base import Ensemble, Hyperparams, ModelKind
from .tree import PresortedMatrix, predict_tree, train_cart_presorted

EPS_FLOOR = 1e-10


def _check_xy(X, y):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyData(f"need a non-empty 2-D matrix, got shape {X.shape}")
    if y.shape != (X.shape[0],):
        raise EmptyData(f"{y.shape[0]} targets for {X.shape[0]} rows")
    return X, y


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def train_adaboost_classifier(X, y, params: Hyperparams) -> Ensemble:
    """Discrete AdaBoost over decision stumps (entropy splits).

    Stage weight alpha = lr * 0.5*ln((1-eps)/eps), with eps floored at
    1e-10 so separable data cannot produce infinite weights. The ensemble
    score is logistic(sum alpha_m h_m(x)).
    """
    X, y = _check_xy(X, y)
    if not np.all(np.isin(y, (0.0, 1.0))):
        raise NonBinaryLabels("classification targets must be in {0, 1}")
    if params.n_estimators < 1:
        raise ValueError("AdaBoost needs n_estimators >= 1")
    n = X.shape[0]
    y_pm = 2.0 * y - 1.0
    w = np.full(n, 1.0 / n)
    model = Ensemble(ModelKind.ADABOOST_CLF, params, X.shape[1])
    pm = PresortedMatrix(X)
    for _ in range(params.n_estimators):
        if w.sum() <= 0:
            raise DegenerateWeights("sample weights collapsed to zero")
        stump = train_cart_presorted(
            pm,
            y,
            "classify",
            max_depth=params.max_depth if params.max_depth is not None else 1,
            min_samples_split=params.min_samples_split,
            sample_weight=w,
        )
        h = np.where(predict_tree(stump, X) >= 0.5, 1.0, -1.0)
        eps = float(np.clip((w * (h != y_pm)).sum() / w.sum(), EPS_FLOOR, 1 - EPS_FLOOR))
        alpha = params.learning_rate * 0.5 * np.log((1.0 - eps) / eps)
        model.base_models.append(stump)
        model.stage_weights.append(float(alpha))
        model.stage_errors.append(eps)
        if eps <= EPS_FLOOR:
            break  # perfect stump; further stages would just repeat it
        w = w * np.exp(-alpha * y_pm * h)
        w = w / w.sum()
    return model


def adaboost_classifier_score(model: Ensemble, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    model.check_dims(X)
    acc = np.zeros(X.shape[0])
    for stump, alpha in zip(model.base_models, model.stage_weights):
        acc += alpha * np.where(predict_tree(stump, X) >= 0.5, 1.0, -1.0)
    return _sigmoid(acc)


def train_adaboost_regressor(X, y, params: Hyperparams) -> Ensemble:
    """AdaBoost.R2 with linear loss; prediction is the weighted median."""
    X, y = _check_xy(X, y)
    if params.n_estimators < 1:
        raise ValueError("AdaBoost needs n_estimators >= 1")
    n = X.shape[0]
    w = np.full(n, 1.0 / n)
    model = Ensemble(ModelKind.ADABOOST_REG, params, X.shape[1])
    pm = PresortedMatrix(X)
    for _ in range(params.n_estimators):
        tree = train_cart_presorted(
            pm,
            y,
            "regress",
            max_depth=params.max_depth,
            min_samples_split=params.min_samples_split,
            sample_weight=w,
        )
        pred = predict_tree(tree, X)
        err = np.abs(pred - y)
        err_max = err.max()
        if err_max == 0.0:  # perfect fit: keep this stage, done
            model.base_models.append(tree)
            model.stage_weights.append(1.0)
            model.stage_errors.append(0.0)
            break
        loss = err / err_max
        eps = float(np.clip((w * loss).sum(), EPS_FLOOR, None))
        if eps >= 0.5:
            if not model.base_models:  # keep something predictive
                model.base_models.append(tree)
                model.stage_weights.append(EPS_FLOOR)
                model.stage_errors.append(eps)
            break
        beta = eps / (1.0 - eps)
        model.base_models.append(tree)
        model.stage_weights.append(float(params.learning_rate * np.log(1.0 / beta)))
        model.stage_errors.append(eps)
        w = w * beta ** ((1.0 - loss) * params.learning_rate)
        total = w.sum()
        if total <= 0:
            raise DegenerateWeights("sample weights collapsed to zero")
        w = w / total
    return model


def adaboost_regressor_predict(model: Ensemble, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    model.check_dims(X)
    preds = np.stack([predict_tree(t, X) for t in model.base_models], axis=1)
    weights = np.asarray(model.stage_weights)
    order = np.argsort(preds, axis=1)
    wsort = weights[order]
    cdf = np.cumsum(wsort, axis=1)
    at_median = cdf >= 0.5 * cdf[:, -1:]
    median_idx = at_median.argmax(axis=1)
    rows = np.arange(X.shape[0])
    return preds[rows, order[rows, median_idx]]


def train_gradient_boosting(X, y, task: str, params: Hyperparams) -> Ensemble:
    """Stagewise trees on pseudo-residuals under an MSE tree fit.

    Regression: init = mean(y), residuals y - F. Classification: binomial
    deviance, init = log-odds, residuals y - sigmoid(F); the score is
    logistic(F_M(x)).
    """
    X, y = _check_xy(X, y)
    kind = ModelKind.GB_CLF if task == "classify" else ModelKind.GB_REG
    if task == "classify":
        if not np.all(np.isin(y, (0.0, 1.0))):
            raise NonBinaryLabels("classification targets must be in {0, 1}")
        p = y.mean()
        if p in (0.0, 1.0):
            raise SingleClass("gradient boosting classification needs both classes")
        init = float(np.log(p / (1.0 - p)))
    else:
        init = float(y.mean())
    model = Ensemble(kind, params, X.shape[1], init_value=init)
    F = np.full(X.shape[0], init)
    pm = PresortedMatrix(X)
    for _ in range(params.n_estimators):
        residual = y - (_sigmoid(F) if task == "classify" else F)
        tree = train_cart_presorted(
            pm,
            residual,
            "regress",
            max_depth=params.max_depth,
            min_samples_split=params.min_samples_split,
        )
        step = params.learning_rate * predict_tree(tree, X)
        F = F + step
        model.base_models.append(tree)
        model.stage_weights.append(float(params.learning_rate))
    return model


def gradient_boosting_raw(model: Ensemble, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    model.check_dims(X)
    F = np.full(X.shape[0], model.init_value)
    for tree, lr in zip(model.base_models, model.stage_weights):
        F = F + lr * predict_tree(tree, X)
    return F


def staged_raw_scores(model: Ensemble, X: np.ndarray):
    """Yield the raw additive score after stage 0 (init only), 1, 2, ..., M."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    model.check_dims(X)
    F = np.full(X.shape[0], model.init_value)
    yield F.copy()
    for tree, lr in zip(model.base_models, model.stage_weights):
        F = F + lr * predict_tree(tree, X)
        yield F.copy()
