"""
Windowing, resampling, and SMA smoothing
========================================

Devices sample at 62-200 Hz, so every stream is cut to the 6-14 s analysis
window, linearly interpolated onto a common 50 Hz grid (400 samples), and
smoothed with a centered 5-sample moving average.
"""

import numpy as np

import gaitbrac as gb
from gaitbrac.datamodel import Device, SensorKind

pair = gb.generate_pair(gb.SubjectProfile("demo", 1.9, 2.4, 1.1, 120.0, seed=3))
stream = pair.before.stream(Device.BAND, SensorKind.ACCELEROMETER)
print(f"raw Band accelerometer: {len(stream)} samples at 62 Hz over 16 s")

windowed = gb.extract_window(stream)  # defaults: [6 s, 14 s)
print(f"windowed: {len(windowed)} samples, t in [{windowed.t_seconds[0]:.2f}, "
      f"{windowed.t_seconds[-1]:.2f}] s")

x, y, z = gb.resample(windowed)
print(f"resampled: {len(z)} samples per axis at {z.rate_hz:.0f} Hz")

smooth = gb.sma_filter(z.values, window=5)
print(f"SMA(5) keeps length {smooth.shape[0]} and the mean "
      f"({z.values.mean():.4f} -> {smooth.mean():.4f})")
print(f"noise std before/after smoothing: "
      f"{np.std(np.diff(z.values)):.3f} / {np.std(np.diff(smooth)):.3f}")

# the one-call version used by feature extraction
axes = gb.preprocess_stream(stream, gb.PipelineConfig())
print(f"preprocess_stream -> {[a.axis.value for a in axes]} of {len(axes[0])} samples")

# edge behavior: the window shrinks against the array bounds, no padding
print(f"sma_filter([0, 3, 0], 3) = {gb.sma_filter(np.array([0.0, 3.0, 0.0]), 3).tolist()}")
