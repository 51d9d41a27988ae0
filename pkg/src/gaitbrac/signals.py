"""Windowing, SMA smoothing, and resampling onto a common time base.

Device rates range from 62 Hz to 200 Hz, so every stream is linearly
interpolated onto a shared 50 Hz grid (below the slowest device, so nothing
is upsampled past its information content) before features are extracted.
Order of operations: window -> resample -> SMA.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .datamodel import Device, SensorKind, SensorStream
from .errors import EmptySignal, EvenWindow, NonFiniteInput, WindowEmpty

WINDOW_START_S = 6.0
WINDOW_END_S = 14.0
TARGET_HZ = 50.0
SMA_WINDOW = 5


class Axis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


AXIS_ORDER = (Axis.X, Axis.Y, Axis.Z)


@dataclass(frozen=True)
class AxisSignal:
    """One axis of one sensor, uniformly sampled at rate_hz."""

    device_id: Device
    sensor_kind: SensorKind
    axis: Axis
    rate_hz: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if self.rate_hz <= 0:
            raise ValueError(f"rate_hz must be positive, got {self.rate_hz}")
        if not np.all(np.isfinite(v)):
            raise NonFiniteInput(
                f"{self.device_id.value}/{self.sensor_kind.value}/{self.axis.value}"
            )
        object.__setattr__(self, "values", v)
        v.setflags(write=False)

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class PipelineConfig:
    """Signal-conditioning knobs shared by feature extraction and the CLI."""

    target_hz: float = TARGET_HZ
    sma_window: int = SMA_WINDOW
    window_start_s: float = WINDOW_START_S
    window_end_s: float = WINDOW_END_S

    def __post_init__(self):
        if self.target_hz <= 0:
            raise ValueError("target_hz must be positive")
        if self.sma_window < 1 or self.sma_window % 2 == 0:
            raise EvenWindow(f"sma_window must be odd and >= 1, got {self.sma_window}")
        if not self.window_end_s > self.window_start_s:
            raise ValueError("window_end_s must exceed window_start_s")


def extract_window(
    stream: SensorStream,
    start_s: float = WINDOW_START_S,
    end_s: float = WINDOW_END_S,
) -> SensorStream:
    """Keep only samples with start_s <= t < end_s (defaults: the 6-14 s window)."""
    t = stream.t_seconds
    mask = (t >= start_s) & (t < end_s)
    n = int(np.count_nonzero(mask))
    if n < 2:
        raise WindowEmpty(
            f"{stream.device_id.value}/{stream.sensor_kind.value}: "
            f"{n} sample(s) in [{start_s}, {end_s}) s"
        )
    return SensorStream(
        stream.device_id, stream.sensor_kind, stream.t_ns[mask], stream.xyz[mask]
    )


def sma_filter(signal: np.ndarray, window: int = SMA_WINDOW) -> np.ndarray:
    """Centered simple moving average; same length as the input.

    Near the edges the window is clipped to the available samples (no
    padding, so no data is fabricated), e.g. [0, 3, 0] with window=3
    gives [1.5, 1.0, 1.5].
    """
    v = np.asarray(signal, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise EmptySignal("sma_filter needs a non-empty 1-D signal")
    if window < 1 or window % 2 == 0:
        raise EvenWindow(f"window must be odd and >= 1, got {window}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteInput("sma_filter input")
    if window == 1:
        return v.copy()
    # Direct windowed sums (no cumulative-sum cancellation), clipped at edges.
    # 'full' + slice keeps the output aligned even when window > len(v).
    half = window // 2
    kernel = np.ones(window)
    sums = np.convolve(v, kernel, mode="full")[half : half + v.size]
    counts = np.convolve(np.ones_like(v), kernel, mode="full")[half : half + v.size]
    return sums / counts


def resample(
    stream: SensorStream,
    target_hz: float = TARGET_HZ,
    start_s: float = WINDOW_START_S,
    end_s: float = WINDOW_END_S,
) -> tuple[AxisSignal, AxisSignal, AxisSignal]:
    """Linearly interpolate one stream onto the uniform grid start_s + k/target_hz.

    The grid has round(target_hz * (end_s - start_s)) points (400 for the
    default 8 s window at 50 Hz). Returns one AxisSignal per axis.
    """
    if target_hz <= 0:
        raise ValueError("target_hz must be positive")
    n_out = int(round(target_hz * (end_s - start_s)))
    if n_out < 1:
        raise WindowEmpty(f"window [{start_s}, {end_s}) too short at {target_hz} Hz")
    grid = start_s + np.arange(n_out) / target_hz
    t = stream.t_seconds
    if len(stream) < 2 or t[0] > grid[-1] or t[-1] < grid[0]:
        raise WindowEmpty(
            f"{stream.device_id.value}/{stream.sensor_kind.value}: stream "
            f"[{t[0]:.3f}, {t[-1]:.3f}] s does not overlap the window"
        )
    if not np.all(np.isfinite(stream.xyz)):
        raise NonFiniteInput("resample input")
    out = []
    for i, axis in enumerate(AXIS_ORDER):
        vals = np.interp(grid, t, stream.xyz[:, i])
        out.append(
            AxisSignal(stream.device_id, stream.sensor_kind, axis, target_hz, vals)
        )
    return tuple(out)


def preprocess_stream(
    stream: SensorStream, config: PipelineConfig = PipelineConfig()
) -> tuple[AxisSignal, AxisSignal, AxisSignal]:
    """Full conditioning chain for one stream: window -> resample -> SMA."""
    windowed = extract_window(stream, config.window_start_s, config.window_end_s)
    axes = resample(
        windowed, config.target_hz, config.window_start_s, config.window_end_s
    )
    return tuple(
        AxisSignal(
            a.device_id,
            a.sensor_kind,
            a.axis,
            a.rate_hz,
            sma_filter(a.values, config.sma_window),
        )
        for a in axes
    )
