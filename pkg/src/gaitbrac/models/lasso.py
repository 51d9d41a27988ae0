"""Lasso by cyclic coordinate descent with soft-thresholding.

Features are standardized internally to zero mean / unit population
variance (zero-variance columns never update), the target is centered, and
the penalized objective (1/2N)||y - Xw - b||^2 + alpha*||w||_1 is minimized
in the standardized space. Coefficients are reported in the original space.
The sweep loop is compiled (numba); iteration order is fixed, so fits are
bit-reproducible.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ..errors import EmptyData
from .base import Ensemble, Hyperparams, ModelKind


def soft_threshold(z: float, t: float) -> float:
    """S(z, t) = sign(z) * max(|z| - t, 0)."""
    return float(np.sign(z) * max(abs(z) - t, 0.0))


@njit(cache=True)
def _cd_sweeps(cols, yc, alpha, tol, max_sweeps):
    """Cyclic coordinate descent over unit-variance columns (shape (F, n)).

    With unit-variance columns the exact coordinate minimizer is
    S(rho_j, alpha) where rho_j = x_j . r / n + w_j. Returns the weight
    vector, the objective after sweep 0..k, and the convergence flag.
    """
    n_feat, n = cols.shape
    w = np.zeros(n_feat)
    r = yc.copy()
    history = np.empty(max_sweeps + 1)
    acc = 0.0
    for i in range(n):
        acc += r[i] * r[i]
    history[0] = acc / (2.0 * n)
    sweeps = 0
    converged = False
    for _ in range(max_sweeps):
        max_delta = 0.0
        for j in range(n_feat):
            w_old = w[j]
            rho = 0.0
            for i in range(n):
                rho += cols[j, i] * r[i]
            rho = rho / n + w_old
            if rho > alpha:
                w_new = rho - alpha
            elif rho < -alpha:
                w_new = rho + alpha
            else:
                w_new = 0.0
            if w_new != w_old:
                delta = w_old - w_new
                for i in range(n):
                    r[i] += cols[j, i] * delta
                w[j] = w_new
            step = abs(w_new - w_old)
            if step > max_delta:
                max_delta = step
        acc = 0.0
        for i in range(n):
            acc += r[i] * r[i]
        penalty = 0.0
        for j in range(n_feat):
            penalty += abs(w[j])
        sweeps += 1
        history[sweeps] = acc / (2.0 * n) + alpha * penalty
        if max_delta < tol:
            converged = True
            break
    return w, history[: sweeps + 1].copy(), converged


def train_lasso(
    X,
    y,
    params: Hyperparams,
    tol: float = 1e-4,
    max_sweeps: int = 1000,
) -> Ensemble:
    """Fit Lasso; stops when the largest coordinate change drops below tol.

    A run that exhausts max_sweeps keeps its last iterate and sets
    converged=False on the returned model. objective_history holds the
    standardized-space objective before the first sweep and after each one.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyData(f"need a non-empty 2-D matrix, got shape {X.shape}")
    if y.shape != (X.shape[0],):
        raise EmptyData(f"{y.shape[0]} targets for {X.shape[0]} rows")
    n, n_feat = X.shape

    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    scale = np.where(sigma > 0.0, sigma, 1.0)  # zero-variance columns stay zero
    cols = np.ascontiguousarray(((X - mu) / scale).T)
    cols[sigma == 0.0] = 0.0
    y_mean = float(y.mean())
    yc = np.ascontiguousarray(y - y_mean)

    w, history, converged = _cd_sweeps(cols, yc, float(params.alpha), tol, max_sweeps)

    coef = w / scale
    intercept = y_mean - float(coef @ mu)
    model = Ensemble(
        ModelKind.LASSO,
        params,
        n_feat,
        init_value=intercept,
        coef=coef,
        converged=bool(converged),
    )
    model.objective_history = list(history)
    return model


def lasso_predict(model: Ensemble, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    model.check_dims(X)
    return X @ model.coef + model.init_value
