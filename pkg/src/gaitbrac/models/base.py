"""Model kinds, hyperparameters, and the shared trained-model container."""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import DimensionMismatch


class ModelKind(enum.Enum):
    DT = "dt"  # single classification tree
    ADABOOST_CLF = "adaboost"
    GB_CLF = "gbc"
    RT = "rt"  # single regression tree
    ADABOOST_REG = "abr"
    GB_REG = "gbr"
    LASSO = "lasso"


CLASSIFIER_KINDS = (ModelKind.DT, ModelKind.ADABOOST_CLF, ModelKind.GB_CLF)
REGRESSOR_KINDS = (
    ModelKind.RT,
    ModelKind.ADABOOST_REG,
    ModelKind.GB_REG,
    ModelKind.LASSO,
)


def kind_task(kind: ModelKind) -> str:
    return "classify" if kind in CLASSIFIER_KINDS else "regress"


@dataclass(frozen=True)
class Hyperparams:
    n_estimators: int = 100
    learning_rate: float = 0.1
    max_depth: int | None = 3
    min_samples_split: int = 2
    alpha: float = 1.0
    random_seed: int = 42

    def override(self, **kwargs) -> "Hyperparams":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def default_hyperparams(kind: ModelKind) -> Hyperparams:
    """Per-kind defaults; the paper reports none, so these are house choices."""
    if kind in (ModelKind.DT, ModelKind.RT):
        return Hyperparams(n_estimators=1, learning_rate=1.0, max_depth=None)
    if kind is ModelKind.ADABOOST_CLF:
        return Hyperparams(n_estimators=50, learning_rate=1.0, max_depth=1)
    if kind is ModelKind.ADABOOST_REG:
        return Hyperparams(n_estimators=50, learning_rate=1.0, max_depth=3)
    if kind in (ModelKind.GB_CLF, ModelKind.GB_REG):
        return Hyperparams(n_estimators=100, learning_rate=0.1, max_depth=3)
    return Hyperparams(n_estimators=1, learning_rate=1.0, max_depth=None, alpha=1.0)


def catalog_fingerprint(catalog: tuple[str, ...]) -> str:
    """SHA-256 of the newline-joined catalog names."""
    return hashlib.sha256("\n".join(catalog).encode()).hexdigest()


@dataclass
class Ensemble:
    """A trained model of any kind.

    base_models holds TreeNode roots (empty for Lasso); stage_weights holds
    one multiplier per stage. Lasso stores its coefficient vector in `coef`
    and its intercept in `init_value`. stage_errors and objective_history
    are training-time diagnostics and are not serialized.
    """

    kind: ModelKind
    hyperparams: Hyperparams
    n_features: int
    base_models: list = field(default_factory=list)
    stage_weights: list[float] = field(default_factory=list)
    init_value: float = 0.0
    coef: np.ndarray | None = None
    converged: bool = True
    fingerprint: str | None = None
    stage_errors: list[float] = field(default_factory=list, repr=False)
    objective_history: list[float] = field(default_factory=list, repr=False)

    @property
    def task(self) -> str:
        return kind_task(self.kind)

    def check_dims(self, X: np.ndarray) -> None:
        if X.shape[-1] != self.n_features:
            raise DimensionMismatch(
                f"model expects {self.n_features} features, got {X.shape[-1]}"
            )
