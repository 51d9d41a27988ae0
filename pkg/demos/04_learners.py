"""
The from-scratch learners
=========================

CART with entropy/MSE splits, discrete AdaBoost over stumps, AdaBoost.R2,
gradient boosting for both tasks, and coordinate-descent Lasso. All
training is deterministic: same data and hyperparameters give bit-identical
models.
"""

import numpy as np

from gaitbrac.models import (
    Hyperparams,
    ModelKind,
    label_entropy,
    predict,
    save_model,
    load_model,
    serialize_model,
    staged_raw_scores,
    train_cart,
    train_model,
)
from gaitbrac.models.tree import predict_tree

# --- a single decision tree
X = np.array([[1.0], [2.0], [8.0], [9.0]])
y = np.array([0.0, 0.0, 1.0, 1.0])
print(f"root entropy of y={y.astype(int).tolist()}: {label_entropy(y):.1f} bit")
tree = train_cart(X, y, "classify")
print(f"learned split: feature {tree.feature} at threshold {tree.threshold}")
print(f"training predictions: {predict_tree(tree, X).tolist()}")

# --- boosting on a noisy nonlinear target
rng = np.random.default_rng(0)
Xr = rng.normal(size=(60, 5))
yr = np.sin(2 * Xr[:, 0]) + 0.5 * Xr[:, 1] + 0.2 * rng.normal(size=60)
gbr = train_model(ModelKind.GB_REG, Xr, yr)
mse = [float(np.mean((yr - f) ** 2)) for f in staged_raw_scores(gbr, Xr)]
print(f"\nGB regression MSE: {mse[0]:.3f} (init) -> {mse[10]:.3f} (10) -> {mse[-1]:.3f} (100)")

yb = (Xr[:, 0] > 0).astype(float)
ada = train_model(ModelKind.ADABOOST_CLF, Xr, yb)
print(f"AdaBoost stumps: {len(ada.base_models)}, max stage error "
      f"{max(ada.stage_errors):.3f} (always <= 0.5)")

# --- lasso shrinks noise coefficients to exactly zero
beta = np.array([3.0, 0.0, -2.0, 0.0, 0.0])
yl = Xr @ beta + 0.1 * rng.normal(size=60)
for alpha in (1.0, 0.1, 0.01):
    model = train_model(ModelKind.LASSO, Xr, yl, Hyperparams(alpha=alpha))
    nz = np.nonzero(model.coef)[0]
    print(f"lasso alpha={alpha:<5}: nonzero coefficients at {nz.tolist()}")

# --- persistence: text files that round-trip bit-exactly
import tempfile
from pathlib import Path

with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "model.txt"
    save_model(gbr, path)
    loaded = load_model(path)
    same = np.array_equal(predict(loaded, Xr), predict(gbr, Xr))
    print(f"\nsaved {path.stat().st_size} bytes; reloaded predictions bitwise equal: {same}")
    print(f"file round-trip is byte-stable: {serialize_model(loaded) == path.read_text()}")
