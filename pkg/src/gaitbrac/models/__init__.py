"""From-scratch supervised learners: CART, AdaBoost, gradient boosting, Lasso."""

from __future__ import annotations

import numpy as np

from ..errors import EmptyData
from .base import (
    CLASSIFIER_KINDS,
    REGRESSOR_KINDS,
    Ensemble,
    Hyperparams,
    ModelKind,
    catalog_fingerprint,
    default_hyperparams,
    kind_task,
)
from .boosting import (
    adaboost_classifier_score,
    adaboost_regressor_predict,
    gradient_boosting_raw,
    staged_raw_scores,
    train_adaboost_classifier,
    train_adaboost_regressor,
    train_gradient_boosting,
)
from .lasso import lasso_predict, soft_threshold, train_lasso
from .persistence import load_model, parse_model, save_model, serialize_model
from .tree import (
    Leaf,
    Split,
    TreeNode,
    binary_entropy,
    label_entropy,
    predict_tree,
    train_cart,
    tree_depth,
)
from .boosting import _sigmoid  # noqa: F401  (shared squashing for scores)


def train_model(
    kind: ModelKind,
    X: np.ndarray,
    y: np.ndarray,
    params: Hyperparams | None = None,
    fingerprint: str | None = None,
) -> Ensemble:
    """Train any model kind on (X, y); y is {0,1} for classifier kinds."""
    params = params or default_hyperparams(kind)
    if kind in (ModelKind.DT, ModelKind.RT):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EmptyData(f"need a non-empty 2-D matrix, got shape {X.shape}")
        tree = train_cart(
            X,
            y,
            "classify" if kind is ModelKind.DT else "regress",
            max_depth=params.max_depth,
            min_samples_split=params.min_samples_split,
        )
        model = Ensemble(kind, params, X.shape[1], base_models=[tree], stage_weights=[1.0])
    elif kind is ModelKind.ADABOOST_CLF:
        model = train_adaboost_classifier(X, y, params)
    elif kind is ModelKind.ADABOOST_REG:
        model = train_adaboost_regressor(X, y, params)
    elif kind in (ModelKind.GB_CLF, ModelKind.GB_REG):
        model = train_gradient_boosting(X, y, kind_task(kind), params)
    elif kind is ModelKind.LASSO:
        model = train_lasso(X, y, params)
    else:  # pragma: no cover
        raise ValueError(f"unknown model kind {kind}")
    model.fingerprint = fingerprint
    return model


def predict(model: Ensemble, X) -> np.ndarray:
    """Classification kinds return scores in [0, 1]; regressors return BrAC.

    Accepts a matrix, a single row, or anything with a `.values` array
    (e.g. a FeatureVector).
    """
    X = getattr(X, "values", X)
    if model.kind in (ModelKind.DT, ModelKind.RT):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        model.check_dims(X)
        return predict_tree(model.base_models[0], X)
    if model.kind is ModelKind.ADABOOST_CLF:
        return adaboost_classifier_score(model, X)
    if model.kind is ModelKind.ADABOOST_REG:
        return adaboost_regressor_predict(model, X)
    if model.kind is ModelKind.GB_CLF:
        return _sigmoid(gradient_boosting_raw(model, X))
    if model.kind is ModelKind.GB_REG:
        return gradient_boosting_raw(model, X)
    return lasso_predict(model, X)


__all__ = [
    "CLASSIFIER_KINDS",
    "REGRESSOR_KINDS",
    "Ensemble",
    "Hyperparams",
    "Leaf",
    "ModelKind",
    "Split",
    "TreeNode",
    "binary_entropy",
    "catalog_fingerprint",
    "default_hyperparams",
    "kind_task",
    "label_entropy",
    "load_model",
    "parse_model",
    "predict",
    "predict_tree",
    "save_model",
    "serialize_model",
    "soft_threshold",
    "staged_raw_scores",
    "train_cart",
    "train_model",
    "tree_depth",
]
