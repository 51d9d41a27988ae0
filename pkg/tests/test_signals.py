import numpy as np
import pytest

import gaitbrac as gb
from gaitbrac.datamodel import Device, SensorKind, SensorStream
from gaitbrac.errors import EmptySignal, EvenWindow, WindowEmpty
from gaitbrac.signals import Axis, extract_window, resample, sma_filter


def _stream(t_s, xyz, device=Device.GLASS, sensor=SensorKind.ACCELEROMETER):
    t_ns = np.asarray(np.round(np.asarray(t_s) * 1e9), dtype=np.int64)
    return SensorStream(device, sensor, t_ns, np.asarray(xyz, dtype=float))


def _uniform_stream(rate_hz, seconds, fn):
    t = np.arange(int(round(rate_hz * seconds))) / rate_hz
    x = fn(t)
    return _stream(t, np.column_stack([x, x * 0.0, x * 0.0])), t


def test_extract_window_800_samples_at_100hz():
    stream, _ = _uniform_stream(100.0, 16.0, lambda t: np.sin(t))
    windowed = extract_window(stream)
    assert len(windowed) == 800
    t = windowed.t_seconds
    assert t[0] >= 6.0 and t[-1] < 14.0


def test_extract_window_empty():
    stream, _ = _uniform_stream(50.0, 5.0, lambda t: t)
    with pytest.raises(WindowEmpty):
        extract_window(stream)


def test_extract_window_full_extent_is_identity():
    stream, _ = _uniform_stream(50.0, 4.0, lambda t: t)
    out = extract_window(stream, 0.0, 4.0)
    assert np.array_equal(out.t_ns, stream.t_ns)
    assert np.array_equal(out.xyz, stream.xyz)


def test_sma_window1_is_identity():
    x = np.array([3.0, -1.0, 4.0, 1.5])
    assert np.array_equal(sma_filter(x, 1), x)


def test_sma_constant_signal():
    out = sma_filter(np.full(20, 2.5), 5)
    assert np.allclose(out, 2.5, rtol=0, atol=1e-15)
    assert out.shape == (20,)


def test_sma_hand_example():
    # centered window clipped at the edges
    out = sma_filter(np.array([0.0, 3.0, 0.0]), 3)
    assert out.tolist() == [1.5, 1.0, 1.5]


def test_sma_rejects_bad_window():
    with pytest.raises(EvenWindow):
        sma_filter(np.ones(5), 4)
    with pytest.raises(EvenWindow):
        sma_filter(np.ones(5), 0)
    with pytest.raises(EmptySignal):
        sma_filter(np.array([]), 3)


def test_sma_is_convex_combination():
    rng = np.random.default_rng(7)
    for _ in range(50):
        x = rng.normal(size=rng.integers(3, 200))
        for window in (3, 5, 9):
            out = sma_filter(x, window)
            assert out.shape == x.shape
            eps = 1e-12 * max(1.0, np.abs(x).max())
            assert out.min() >= x.min() - eps
            assert out.max() <= x.max() + eps


def test_resample_constant():
    stream, _ = _uniform_stream(62.0, 16.0, lambda t: np.full_like(t, 9.8))
    ax = resample(stream)
    assert [a.axis for a in ax] == [Axis.X, Axis.Y, Axis.Z]
    assert all(len(a) == 400 for a in ax)
    assert np.allclose(ax[0].values, 9.8, rtol=0, atol=1e-12)


def test_resample_linear_ramp_is_exact():
    stream, _ = _uniform_stream(62.0, 16.0, lambda t: t)
    ax = resample(stream)
    grid = 6.0 + np.arange(400) / 50.0
    assert np.allclose(ax[0].values, grid, rtol=0, atol=1e-9)


def test_resample_sinusoid_against_analytic_oracle():
    f = 2.0
    stream, _ = _uniform_stream(62.0, 16.0, lambda t: np.sin(2 * np.pi * f * t))
    ax = resample(stream)
    grid = 6.0 + np.arange(400) / 50.0
    err = np.abs(ax[0].values - np.sin(2 * np.pi * f * grid)).max()
    assert err < 0.01  # < 1% of unit amplitude


def test_resample_idempotent_on_uniform_signal():
    rng = np.random.default_rng(3)
    x = rng.normal(size=800)
    t = np.arange(800) / 50.0
    stream = _stream(t, np.column_stack([x, x, x]))
    ax = resample(stream, 50.0, 0.0, 16.0)
    rel = np.abs(ax[0].values - x).max() / np.abs(x).max()
    assert rel <= 1e-12


def test_resample_window_errors():
    stream, _ = _uniform_stream(50.0, 3.0, lambda t: t)
    with pytest.raises(WindowEmpty):
        resample(stream, 50.0, 6.0, 14.0)


def test_pipeline_determinism(one_pair):
    s = one_pair.before.streams[0]
    a1 = gb.preprocess_stream(s)
    a2 = gb.preprocess_stream(s)
    for x, y in zip(a1, a2):
        assert np.array_equal(x.values, y.values)  # bit-identical


def test_pipeline_config_validation():
    with pytest.raises(EvenWindow):
        gb.PipelineConfig(sma_window=2)
    with pytest.raises(ValueError):
        gb.PipelineConfig(window_start_s=14.0, window_end_s=6.0)
