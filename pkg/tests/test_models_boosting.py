import math

import numpy as np
import pytest

from gaitbrac.errors import NonBinaryLabels, SingleClass
from gaitbrac.models import (
    Hyperparams,
    ModelKind,
    default_hyperparams,
    predict,
    staged_raw_scores,
    train_model,
)


def test_adaboost_stage_weight_formula():
    # best stump errs on exactly one of four equally weighted rows: eps = 0.25
    X = np.array([[0.0], [0.0], [1.0], [2.0]])
    y = np.array([0.0, 1.0, 1.0, 1.0])
    model = train_model(
        ModelKind.ADABOOST_CLF, X, y, Hyperparams(n_estimators=1, learning_rate=1.0, max_depth=1)
    )
    assert model.stage_errors[0] == pytest.approx(0.25)
    assert model.stage_weights[0] == pytest.approx(0.5 * math.log(3), abs=1e-12)


def test_adaboost_separable_training_error_zero_after_stage_one():
    X = np.array([[1.0], [2.0], [8.0], [9.0]])
    y = np.array([0.0, 0.0, 1.0, 1.0])
    model = train_model(ModelKind.ADABOOST_CLF, X, y)
    assert len(model.base_models) == 1  # stops after the perfect stump
    scores = predict(model, X)
    assert np.array_equal(scores >= 0.5, y.astype(bool))


def test_adaboost_scores_rank_training_labels():
    rng = np.random.default_rng(41)
    X = rng.normal(size=(30, 4))
    y = (X[:, 1] + 0.3 * rng.normal(size=30) > 0).astype(float)
    if y.min() == y.max():
        pytest.skip("degenerate draw")
    model = train_model(ModelKind.ADABOOST_CLF, X, y)
    scores = predict(model, X)
    assert np.all((scores >= 0) & (scores <= 1))
    # every selected stump has weighted error <= 0.5
    assert all(e <= 0.5 for e in model.stage_errors)


def test_adaboost_stage_errors_bounded_on_noise():
    rng = np.random.default_rng(43)
    X = rng.normal(size=(40, 6))
    y = (rng.random(40) > 0.5).astype(float)
    model = train_model(ModelKind.ADABOOST_CLF, X, y)
    assert all(e <= 0.5 + 1e-12 for e in model.stage_errors)


def test_adaboost_rejects_nonbinary():
    with pytest.raises(NonBinaryLabels):
        train_model(ModelKind.ADABOOST_CLF, np.ones((3, 1)), np.array([0.0, 0.5, 1.0]))


def test_adaboost_r2_single_row():
    model = train_model(ModelKind.ADABOOST_REG, np.array([[1.0]]), np.array([5.0]))
    assert predict(model, np.array([[1.0]]))[0] == 5.0


def test_adaboost_r2_weighted_median_prediction():
    rng = np.random.default_rng(47)
    X = rng.normal(size=(25, 3))
    y = 3.0 * X[:, 0] + rng.normal(0, 0.1, 25)
    model = train_model(ModelKind.ADABOOST_REG, X, y)
    pred = predict(model, X)
    assert np.corrcoef(pred, y)[0, 1] > 0.9
    assert all(e < 0.5 for e in model.stage_errors)


def test_gb_regression_single_row():
    model = train_model(ModelKind.GB_REG, np.array([[2.0]]), np.array([5.0]))
    assert model.init_value == 5.0
    assert predict(model, np.array([[2.0]]))[0] == 5.0


def test_gb_regression_one_stage_two_clusters_exact():
    X = np.array([[-2.0], [-1.0], [1.0], [2.0]])
    y = np.array([0.0, 0.0, 10.0, 10.0])
    model = train_model(
        ModelKind.GB_REG, X, y, Hyperparams(n_estimators=1, learning_rate=1.0, max_depth=1)
    )
    assert predict(model, X).tolist() == [0.0, 0.0, 10.0, 10.0]


def test_gb_regression_training_mse_non_increasing():
    rng = np.random.default_rng(53)
    X = rng.normal(size=(40, 8))
    y = np.sin(X[:, 0]) + 0.5 * rng.normal(size=40)
    model = train_model(ModelKind.GB_REG, X, y, Hyperparams(n_estimators=100, learning_rate=0.1, max_depth=3))
    mse = [float(np.mean((y - f) ** 2)) for f in staged_raw_scores(model, X)]
    assert len(mse) == 101
    for a, b in zip(mse, mse[1:]):
        assert b <= a + 1e-12


def test_gb_classification_behaviour():
    rng = np.random.default_rng(59)
    X = rng.normal(size=(30, 5))
    y = (X[:, 2] > 0).astype(float)
    model = train_model(ModelKind.GB_CLF, X, y)
    p = y.mean()
    assert model.init_value == pytest.approx(math.log(p / (1 - p)))
    scores = predict(model, X)
    assert np.all((scores > 0) & (scores < 1))
    assert np.array_equal(scores >= 0.5, y.astype(bool))


def test_gb_classification_single_class_rejected():
    with pytest.raises(SingleClass):
        train_model(ModelKind.GB_CLF, np.ones((4, 2)), np.ones(4))


def test_gb_predict_with_zero_stages_returns_init():
    X = np.array([[1.0], [2.0]])
    model = train_model(ModelKind.GB_REG, X, np.array([4.0, 6.0]), Hyperparams(n_estimators=0))
    assert predict(model, X).tolist() == [5.0, 5.0]


def test_adaboost_needs_at_least_one_stage():
    X, y = np.ones((3, 1)), np.array([0.0, 1.0, 0.0])
    with pytest.raises(ValueError):
        train_model(ModelKind.ADABOOST_CLF, X, y, Hyperparams(n_estimators=0))
    with pytest.raises(ValueError):
        train_model(ModelKind.ADABOOST_REG, X, y, Hyperparams(n_estimators=0))


def test_default_hyperparams_per_kind():
    assert default_hyperparams(ModelKind.ADABOOST_CLF).n_estimators == 50
    assert default_hyperparams(ModelKind.ADABOOST_CLF).max_depth == 1
    assert default_hyperparams(ModelKind.GB_CLF).n_estimators == 100
    assert default_hyperparams(ModelKind.GB_CLF).learning_rate == 0.1
    assert default_hyperparams(ModelKind.DT).max_depth is None


def test_training_is_deterministic():
    rng = np.random.default_rng(61)
    X = rng.normal(size=(25, 6))
    y = rng.normal(size=25)
    yb = (y > 0).astype(float)
    for kind, target in [
        (ModelKind.GB_REG, y),
        (ModelKind.GB_CLF, yb),
        (ModelKind.ADABOOST_CLF, yb),
        (ModelKind.ADABOOST_REG, y),
    ]:
        m1 = train_model(kind, X, target)
        m2 = train_model(kind, X, target)
        assert np.array_equal(predict(m1, X), predict(m2, X))
        assert m1.base_models == m2.base_models
        assert m1.stage_weights == m2.stage_weights
