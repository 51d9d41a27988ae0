"""The four feature families and canonical feature-vector assembly.

Each (device, sensor, axis) signal contributes statistics, spectral, and
histogram features; each sensor adds its three axis-pair covariances; each
device adds one block of gait features computed from its accelerometer and
gyroscope. Concatenating all blocks in the canonical order produces vectors
of identical length and meaning for every subject and session, so the
after-minus-before difference is well defined index by index.

Catalog names are dotted: ``<device>.<sensor>.<axis>.<family>.<feature>``,
e.g. ``Glass.Accelerometer.x.stat.mean`` or ``Band.imu.xyz.gait.mi_mean``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .datamodel import (
    DEVICE_CATALOG,
    DEVICE_ORDER,
    Device,
    GaitRecording,
    SensorKind,
)
from .errors import (
    CatalogMismatch,
    EmptySignal,
    MalformedFile,
    MissingDevice,
    MissingSensor,
    NonFiniteInput,
    TooShort,
)
from .signals import AXIS_ORDER, PipelineConfig, preprocess_stream

STAT_NAMES = (
    "mean",
    "variance",
    "std",
    "skewness",
    "min",
    "max",
    "median",
    "range",
    "rms",
    "zcr",
    "mcr",
)
COV_NAMES = ("cov_xy", "cov_xz", "cov_yz")
FFT_NAMES = (
    "energy",
    "top_freq_1",
    "top_freq_2",
    "top_freq_3",
    "top_freq_4",
    "dominant_bin",
)
GAIT_NAMES = (
    "mi_mean",
    "sma_norm",
    "cov_eig1",
    "cov_eig2",
    "cov_eig3",
    "corr_gravity_heading",
    "avg_vel_heading",
    "avg_vel_gravity",
    "dominant_freq_hz",
    "magnitude_energy",
    "avg_accel_energy",
    "avg_rot_angle",
    "avg_rot_energy",
)

#: Fixed integer histogram supports per sensor kind (values are rounded to
#: the nearest integer and clamped into the support, keeping vector lengths
#: identical across subjects).
HIST_SUPPORT: dict[SensorKind, tuple[int, int]] = {
    SensorKind.ACCELEROMETER: (-20, 20),
    SensorKind.LINEAR_ACCELERATION: (-20, 20),
    SensorKind.GRAVITY: (-20, 20),
    SensorKind.GYROSCOPE: (-10, 10),
    SensorKind.COMPASS: (-100, 100),
}

FAMILY_STAT = "stat"
FAMILY_FFT = "fft"
FAMILY_HIST = "hist"
FAMILY_GAIT = "gait"
FAMILIES = (FAMILY_STAT, FAMILY_FFT, FAMILY_HIST, FAMILY_GAIT)


def _sign_change_rate(values: np.ndarray) -> float:
    s = np.sign(values)
    return float(np.count_nonzero(s[1:] != s[:-1])) / (values.shape[0] - 1)


def stat_features(values: np.ndarray) -> np.ndarray:
    """Per-axis statistics, aligned with STAT_NAMES.

    Variance and skewness are population moments; skewness is 0 for a
    constant signal. ZCR and MCR count sign changes normalized by N-1.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.shape[0] < 2:
        raise TooShort(f"stat_features needs >= 2 samples, got {v.shape[0]}")
    mean = float(v.mean())
    var = float(v.var())
    std = float(np.sqrt(var))
    centered = v - mean
    skew = 0.0 if std == 0.0 else float(np.mean(centered**3)) / std**3
    vmin = float(v.min())
    vmax = float(v.max())
    return np.array(
        [
            mean,
            var,
            std,
            skew,
            vmin,
            vmax,
            float(np.median(v)),
            vmax - vmin,
            float(np.sqrt(np.mean(v**2))),
            _sign_change_rate(v),
            _sign_change_rate(centered),
        ]
    )


def axis_pair_covariances(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Population covariances cov(x,y), cov(x,z), cov(y,z), aligned with COV_NAMES."""
    cov = np.cov(np.stack([x, y, z]), bias=True)
    return np.array([cov[0, 1], cov[0, 2], cov[1, 2]])


def fft_features(values: np.ndarray, rate_hz: float) -> np.ndarray:
    """Spectral features, aligned with FFT_NAMES.

    Energy is sum(|X_k|^2)/N over the full DFT of the raw signal (Parseval:
    equals sum(x^2)). The top-4 frequencies and the dominant bin come from
    the mean-removed spectrum with DC excluded; magnitude ties break toward
    the lower frequency.
    """
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    if n < 8:
        raise TooShort(f"fft_features needs >= 8 samples, got {n}")
    energy = float(np.sum(np.abs(np.fft.fft(v)) ** 2) / n)
    mags = np.abs(np.fft.rfft(v - v.mean()))[1:]
    bins = np.arange(1, mags.shape[0] + 1)
    order = np.lexsort((bins, -mags))
    top_bins = bins[order[:4]]
    top_freqs = top_bins * rate_hz / n
    return np.array([energy, *top_freqs, float(top_bins[0])])


def histogram_features(values: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Normalized count of integer-rounded samples over the support [lo, hi].

    Rounding is half-away-from-zero; out-of-support values are clamped to
    the nearest edge bin. Output has hi-lo+1 entries and sums to 1.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise EmptySignal("histogram_features needs a non-empty signal")
    if hi < lo:
        raise ValueError(f"empty support [{lo}, {hi}]")
    rounded = np.copysign(np.floor(np.abs(v) + 0.5), v)
    clamped = np.clip(rounded, lo, hi).astype(np.int64)
    counts = np.bincount(clamped - lo, minlength=hi - lo + 1)
    return counts / v.shape[0]


def _cumtrapz(values: np.ndarray, dt: float) -> np.ndarray:
    """Cumulative trapezoidal integral, starting at 0, same length as input."""
    steps = (values[1:] + values[:-1]) * (dt / 2.0)
    return np.concatenate([[0.0], np.cumsum(steps)])


def gait_features(
    accel: np.ndarray, gyro: np.ndarray | None, rate_hz: float
) -> np.ndarray:
    """Device-level gait features from (3, N) accelerometer and gyroscope arrays.

    Aligned with GAIT_NAMES. The gravity direction is the normalized mean
    accelerometer vector; the heading direction is the principal eigenvector
    of the covariance of the gravity-orthogonal residual. Velocities and the
    rotation angle come from trapezoidal integration at 1/rate_hz steps.
    """
    a = np.asarray(accel, dtype=np.float64)
    if a.shape[0] != 3 or a.shape[1] < 8:
        raise TooShort(f"gait_features needs (3, N>=8) accelerometer, got {a.shape}")
    if gyro is None:
        raise MissingSensor("rotation features require a gyroscope stream")
    w = np.asarray(gyro, dtype=np.float64)
    if w.shape != a.shape:
        raise TooShort(f"gyroscope shape {w.shape} != accelerometer shape {a.shape}")
    n = a.shape[1]
    dt = 1.0 / rate_hz

    mi = np.sqrt(np.sum(a**2, axis=0))
    mi_mean = float(mi.mean())
    sma_norm = float(np.sum(np.abs(a)) / n)

    cov = np.cov(a, bias=True)
    eigvals = np.sort(np.linalg.eigvalsh(cov))[::-1]

    mean_vec = a.mean(axis=1)
    norm = np.linalg.norm(mean_vec)
    g_hat = mean_vec / norm if norm > 1e-12 else np.array([0.0, 0.0, 1.0])

    proj_g = g_hat @ a
    residual = a - np.outer(g_hat, proj_g)
    res_cov = np.cov(residual, bias=True)
    evals, evecs = np.linalg.eigh(res_cov)
    h_hat = evecs[:, -1]  # eigenvector of the largest eigenvalue
    proj_h = h_hat @ a

    if proj_g.std() == 0.0 or proj_h.std() == 0.0:
        corr_gh = 0.0
    else:
        corr_gh = float(np.corrcoef(proj_g, proj_h)[0, 1])

    vel_h = _cumtrapz(proj_h - proj_h.mean(), dt)
    vel_g = _cumtrapz(proj_g - proj_g.mean(), dt)

    mag_spec = np.abs(np.fft.rfft(mi - mi.mean()))[1:]
    dom_bin = int(np.argmax(mag_spec)) + 1
    dominant_freq = dom_bin * rate_hz / n
    magnitude_energy = float(np.sum(np.abs(np.fft.fft(mi)) ** 2) / n)

    theta = _cumtrapz(g_hat @ w, dt)
    rot_energy = float(np.mean(np.sum(w**2, axis=0)))

    return np.array(
        [
            mi_mean,
            sma_norm,
            eigvals[0],
            eigvals[1],
            eigvals[2],
            corr_gh,
            float(vel_h.mean()),
            float(vel_g.mean()),
            dominant_freq,
            magnitude_energy,
            float(np.mean(mi**2)),
            float(theta.mean()),
            rot_energy,
        ]
    )


# --- catalog and assembly ---------------------------------------------------


@dataclass(frozen=True)
class FeatureVector:
    """Fixed-length feature values with the parallel name catalog."""

    values: np.ndarray
    catalog: tuple[str, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (len(self.catalog),):
            raise CatalogMismatch(
                f"{v.shape[0]} values vs {len(self.catalog)} catalog names"
            )
        if not np.all(np.isfinite(v)):
            raise NonFiniteInput("feature vector contains non-finite values")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "catalog", tuple(self.catalog))
        v.setflags(write=False)

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class LabeledInstance:
    """One subject's f-difference vector with its breathalyzer label."""

    subject_id: str
    diff: FeatureVector
    brac: float


def _hist_names(sensor: SensorKind) -> tuple[str, ...]:
    lo, hi = HIST_SUPPORT[sensor]
    return tuple(f"bin_{v}" for v in range(lo, hi + 1))


def build_catalog(device_mask: frozenset[Device] | set[Device]) -> tuple[str, ...]:
    """Canonical catalog for a device mask; a pure function of the mask."""
    names: list[str] = []
    for device in DEVICE_ORDER:
        if device not in device_mask:
            continue
        d = device.value
        for sensor in DEVICE_CATALOG[device].ordered_sensors():
            s = sensor.value
            for axis in AXIS_ORDER:
                prefix = f"{d}.{s}.{axis.value}"
                names.extend(f"{prefix}.{FAMILY_STAT}.{n}" for n in STAT_NAMES)
                names.extend(f"{prefix}.{FAMILY_FFT}.{n}" for n in FFT_NAMES)
                names.extend(
                    f"{prefix}.{FAMILY_HIST}.{n}" for n in _hist_names(sensor)
                )
            names.extend(f"{d}.{s}.xyz.{FAMILY_STAT}.{n}" for n in COV_NAMES)
        names.extend(f"{d}.imu.xyz.{FAMILY_GAIT}.{n}" for n in GAIT_NAMES)
    return tuple(names)


def catalog_family(name: str) -> str:
    """The family tag ('stat' | 'fft' | 'hist' | 'gait') of a catalog name."""
    parts = name.split(".")
    if len(parts) != 5 or parts[3] not in FAMILIES:
        raise CatalogMismatch(f"not a catalog name: '{name}'")
    return parts[3]


def catalog_device(name: str) -> str:
    """The device token of a catalog name."""
    return name.split(".", 1)[0]


def assemble_feature_vector(
    recording: GaitRecording,
    device_mask: frozenset[Device] | set[Device] | None = None,
    config: PipelineConfig = PipelineConfig(),
) -> FeatureVector:
    """Extract every family over every (device, sensor, axis) in the mask.

    The mask defaults to the devices present in the recording. Two
    recordings with the same mask always produce identical catalogs.
    """
    if device_mask is None:
        device_mask = recording.devices()
    values: list[np.ndarray] = []
    for device in DEVICE_ORDER:
        if device not in device_mask:
            continue
        if device not in recording.devices():
            raise MissingDevice(
                f"{recording.subject_id}/{recording.session.value}: "
                f"mask includes {device.value} but no {device.value} streams present"
            )
        processed: dict[SensorKind, np.ndarray] = {}
        for sensor in DEVICE_CATALOG[device].ordered_sensors():
            stream = recording.stream(device, sensor)
            if stream is None:
                raise MissingSensor(
                    f"{recording.subject_id}/{recording.session.value}: "
                    f"{device.value} lacks {sensor.value}"
                )
            axes = preprocess_stream(stream, config)
            lo, hi = HIST_SUPPORT[sensor]
            for sig in axes:
                values.append(stat_features(sig.values))
                values.append(fft_features(sig.values, sig.rate_hz))
                values.append(histogram_features(sig.values, lo, hi))
            values.append(
                axis_pair_covariances(
                    axes[0].values, axes[1].values, axes[2].values
                )
            )
            processed[sensor] = np.stack([a.values for a in axes])
        values.append(
            gait_features(
                processed[SensorKind.ACCELEROMETER],
                processed.get(SensorKind.GYROSCOPE),
                config.target_hz,
            )
        )
    return FeatureVector(np.concatenate(values), build_catalog(device_mask))


def feature_difference(before: FeatureVector, after: FeatureVector) -> FeatureVector:
    """Elementwise after - before; both vectors must share one catalog."""
    if before.catalog != after.catalog:
        raise CatalogMismatch(
            f"catalogs differ ({len(before.catalog)} vs {len(after.catalog)} names)"
        )
    return FeatureVector(after.values - before.values, before.catalog)


def catalog_slice(vector: FeatureVector, names: tuple[str, ...]) -> FeatureVector:
    """Project a vector onto a catalog subset (order taken from `names`)."""
    index = {n: i for i, n in enumerate(vector.catalog)}
    try:
        idx = [index[n] for n in names]
    except KeyError as exc:
        raise CatalogMismatch(f"name not in catalog: {exc}") from None
    return FeatureVector(vector.values[idx], names)


# --- feature matrix files ----------------------------------------------------


def save_matrix(instances: list[LabeledInstance], path: str | Path) -> None:
    """Write instances as CSV: subject_id, one column per catalog name, brac."""
    if not instances:
        raise EmptySignal("no instances to save")
    catalog = instances[0].diff.catalog
    for inst in instances:
        if inst.diff.catalog != catalog:
            raise CatalogMismatch(f"{inst.subject_id}: catalog differs")
    lines = ["subject_id," + ",".join(catalog) + ",brac"]
    for inst in instances:
        vals = ",".join(repr(x) for x in inst.diff.values.tolist())
        lines.append(f"{inst.subject_id},{vals},{inst.brac!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix(path: str | Path) -> list[LabeledInstance]:
    """Parse a feature matrix CSV back into LabeledInstances."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise MalformedFile(f"{path}: empty file")
    header = lines[0].split(",")
    if len(header) < 3 or header[0] != "subject_id" or header[-1] != "brac":
        raise MalformedFile(f"{path}: expected 'subject_id,<catalog...>,brac' header")
    catalog = tuple(header[1:-1])
    instances: list[LabeledInstance] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != len(header):
            raise MalformedFile(
                f"{path}:{lineno}: {len(parts)} fields, expected {len(header)}"
            )
        try:
            vals = np.array([float(x) for x in parts[1:-1]])
            brac = float(parts[-1])
        except ValueError as exc:
            raise MalformedFile(f"{path}:{lineno}: {exc}") from None
        instances.append(
            LabeledInstance(parts[0], FeatureVector(vals, catalog), brac)
        )
    if not instances:
        raise MalformedFile(f"{path}: no data rows")
    return instances
