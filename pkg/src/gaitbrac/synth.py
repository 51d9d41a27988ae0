"""Parametric synthetic-gait generator: the desk-scale stand-in dataset.

Each synthetic subject walks with a personal cadence, step amplitude, and
arm-swing ratio. The after-drinking session slows the cadence by up to 25%
at the maximum label (430), adds phase jitter, and adds a 0.4 Hz
mediolateral sway that grows with the label. Streams are emitted at each
device's native rate over 16 s, so the 6-14 s analysis window is always
covered, and everything is a pure function of the seeds.

Effect sizes are modeling choices tuned to give the pipeline a learnable,
physiologically plausible signal; they are not measured constants.
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
    SensorStream,
    Session,
    SubjectPair,
    write_labels,
    write_recording,
)
from .errors import BadDistribution, InvalidProfile

GRAVITY = 9.81
BRAC_MAX = 430.0
EXPERIMENT_SECONDS = 16.0


@dataclass(frozen=True)
class SubjectProfile:
    """Gait parameters of one synthetic subject."""

    subject_id: str
    cadence_hz: float  # step frequency, [1.6, 2.2]
    step_amplitude: float  # vertical step harmonic, m/s^2
    arm_swing_ratio: float  # wrist amplitude relative to torso
    brac: float  # label, micrograms of alcohol per liter of breath
    seed: int

    def __post_init__(self):
        if not 1.6 <= self.cadence_hz <= 2.2:
            raise InvalidProfile(f"cadence_hz={self.cadence_hz} outside [1.6, 2.2]")
        if self.step_amplitude <= 0 or self.arm_swing_ratio <= 0:
            raise InvalidProfile("amplitude and arm_swing_ratio must be positive")
        if not 0.0 <= self.brac <= BRAC_MAX:
            raise InvalidProfile(f"brac={self.brac} outside [0, {BRAC_MAX}]")


@dataclass(frozen=True)
class EffectModel:
    """How intoxication (brac/430) perturbs the after-session gait.

    baseline_drift_amp adds a slow, label-independent baseline wander to the
    after session (devices re-donned between sessions): it confounds
    mean-relative statistics without moving the cadence spectral peak.
    """

    cadence_slowdown: float = 0.25  # fractional slowdown at brac=430
    sway_freq_hz: float = 0.4
    sway_amp: float = 1.6  # m/s^2 at brac=430; scales linearly with brac
    phase_jitter_std: float = 0.45  # rad at brac=430
    noise_std: float = 0.35  # broadband sensor noise, all sessions
    baseline_drift_amp: float = 0.0  # m/s^2, after session, label-independent
    drift_freq_hz: float = 0.15


#: Per-device scaling of step harmonics (head is damped, wrists amplified).
_DEVICE_ACCEL_SCALE = {
    Device.GLASS: 0.55,
    Device.WATCH: 1.0,
    Device.BAND: 0.9,
    Device.PHONE: 1.1,
}
_DEVICE_SWAY_SCALE = {
    Device.GLASS: 0.8,
    Device.WATCH: 1.0,
    Device.BAND: 1.0,
    Device.PHONE: 1.2,
}


def _timestamps(rate_hz: float) -> np.ndarray:
    n = int(round(EXPERIMENT_SECONDS * rate_hz))
    return np.rint(np.arange(n) * (1e9 / rate_hz)).astype(np.int64)


def _harmonics(phase: np.ndarray, amp: float, rng, mix: tuple[float, float]):
    """Step fundamental plus its first overtone with random phase offsets."""
    p0, p1 = rng.uniform(0.0, 2.0 * np.pi, 2)
    return amp * (mix[0] * np.sin(phase + p0) + mix[1] * np.sin(2.0 * phase + p1))


def _session_recording(
    profile: SubjectProfile,
    session: Session,
    has_phone: bool,
    effects: EffectModel,
) -> GaitRecording:
    drunk = session is Session.AFTER
    level = profile.brac / BRAC_MAX if drunk else 0.0
    cadence = profile.cadence_hz * (1.0 - effects.cadence_slowdown * level)
    jitter_std = effects.phase_jitter_std * level
    sway_amp = effects.sway_amp * level

    rng = np.random.default_rng([profile.seed, int(drunk)])
    streams: list[SensorStream] = []
    for device in DEVICE_ORDER:
        if device is Device.PHONE and not has_phone:
            continue
        spec = DEVICE_CATALOG[device]
        t_ns = _timestamps(spec.max_rate_hz)
        t = t_ns * 1e-9
        n = t.shape[0]
        amp = profile.step_amplitude * _DEVICE_ACCEL_SCALE[device]
        if device in (Device.WATCH, Device.BAND):
            amp *= profile.arm_swing_ratio

        base_phase = 2.0 * np.pi * cadence * t
        phase = base_phase + (
            rng.normal(0.0, jitter_std, n) if jitter_std > 0 else 0.0
        )
        noise = lambda scale: rng.normal(0.0, effects.noise_std * scale, n)
        sway = (
            sway_amp
            * _DEVICE_SWAY_SCALE[device]
            * np.sin(2.0 * np.pi * effects.sway_freq_hz * t + rng.uniform(0, 2 * np.pi))
        )

        if drunk and effects.baseline_drift_amp > 0:
            drift = lambda: (
                effects.baseline_drift_amp
                * rng.uniform(0.5, 1.0)
                * np.sin(2 * np.pi * effects.drift_freq_hz * t + rng.uniform(0, 2 * np.pi))
            )
        else:
            drift = lambda: 0.0

        body_x = _harmonics(phase, 0.5 * amp, rng, (1.0, 0.35)) + drift() + noise(1.0)
        body_y = _harmonics(phase, 0.25 * amp, rng, (1.0, 0.2)) + sway + drift() + noise(1.0)
        body_z = _harmonics(phase, amp, rng, (1.0, 0.4)) + drift() + noise(1.0)

        tilt = 0.03 * np.sin(phase + rng.uniform(0, 2 * np.pi))
        grav_x = GRAVITY * tilt + noise(0.15)
        grav_y = GRAVITY * 0.5 * tilt + noise(0.15)
        grav_z = GRAVITY * np.sqrt(np.clip(1.0 - tilt**2, 0.0, None)) + noise(0.15)

        for sensor in spec.ordered_sensors():
            if sensor is SensorKind.ACCELEROMETER:
                xyz = np.column_stack([body_x, body_y, body_z + GRAVITY])
            elif sensor is SensorKind.LINEAR_ACCELERATION:
                xyz = np.column_stack(
                    [body_x + noise(0.3), body_y + noise(0.3), body_z + noise(0.3)]
                )
            elif sensor is SensorKind.GYROSCOPE:
                rot = 0.8 * (amp / profile.step_amplitude)
                gx = _harmonics(phase, rot, rng, (1.0, 0.3)) + noise(0.5)
                gy = _harmonics(phase, 0.6 * rot, rng, (1.0, 0.3)) + noise(0.5)
                gz = _harmonics(phase, 0.4 * rot, rng, (1.0, 0.3)) + noise(0.5)
                xyz = np.column_stack([gx, gy, gz])
            elif sensor is SensorKind.GRAVITY:
                xyz = np.column_stack([grav_x, grav_y, grav_z])
            else:  # compass
                field = rng.normal((30.0, 5.0, -40.0), 3.0)
                cx = field[0] + _harmonics(phase, 2.0, rng, (1.0, 0.2)) + noise(1.5)
                cy = field[1] + _harmonics(phase, 2.0, rng, (1.0, 0.2)) + noise(1.5)
                cz = field[2] + noise(1.5)
                xyz = np.column_stack([cx, cy, cz])
            streams.append(
                SensorStream(device, sensor, t_ns, np.round(xyz, 6))
            )
    return GaitRecording(profile.subject_id, session, tuple(streams), has_phone)


def generate_pair(
    profile: SubjectProfile,
    has_phone: bool = True,
    effects: EffectModel = EffectModel(),
) -> SubjectPair:
    """Both sessions of one subject; deterministic given profile.seed."""
    before = _session_recording(profile, Session.BEFORE, has_phone, effects)
    after = _session_recording(profile, Session.AFTER, has_phone, effects)
    return SubjectPair(profile.subject_id, before, after, profile.brac)


def default_brac_distribution(rng: np.random.Generator, n: int) -> np.ndarray:
    """Stratified labels: ~70% spread over [0, 210), the rest over [240, 430].

    The drunk count is fixed at round(0.3 n) so the sober/drunk balance
    matches the reported 27%-35% share at the low thresholds for any seed.
    """
    n_drunk = int(round(0.3 * n))
    sober = rng.uniform(0.0, 210.0, n - n_drunk)
    drunk = rng.uniform(240.0, BRAC_MAX, n_drunk)
    values = np.concatenate([sober, drunk])
    return values[rng.permutation(n)]


def generate_dataset(
    n_subjects: int,
    master_seed: int = 42,
    brac_distribution=default_brac_distribution,
    effects: EffectModel = EffectModel(),
    phone_fraction: float = 1.0,
) -> list[SubjectPair]:
    """n_subjects independent SubjectPairs, a pure function of master_seed."""
    if n_subjects < 3:
        raise BadDistribution(f"need at least 3 subjects, got {n_subjects}")
    rng = np.random.default_rng(master_seed)
    brac = np.asarray(brac_distribution(rng, n_subjects), dtype=np.float64)
    if brac.shape != (n_subjects,) or np.any(brac < 0) or np.any(brac > BRAC_MAX):
        raise BadDistribution(
            f"distribution must return {n_subjects} values in [0, {BRAC_MAX}]"
        )
    cadence = rng.uniform(1.6, 2.2, n_subjects)
    amplitude = rng.uniform(1.8, 3.0, n_subjects)
    arm_swing = rng.uniform(0.8, 1.4, n_subjects)
    seeds = rng.integers(0, 2**31 - 1, n_subjects)
    n_phone = int(round(phone_fraction * n_subjects))
    pairs = []
    for i in range(n_subjects):
        profile = SubjectProfile(
            subject_id=f"s{i + 1:02d}",
            cadence_hz=float(cadence[i]),
            step_amplitude=float(amplitude[i]),
            arm_swing_ratio=float(arm_swing[i]),
            brac=float(brac[i]),
            seed=int(seeds[i]),
        )
        pairs.append(generate_pair(profile, has_phone=i < n_phone, effects=effects))
    return pairs


def write_dataset(pairs: list[SubjectPair], out_dir: str | Path) -> None:
    """Emit per-session recording CSVs plus labels.csv into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    labels = {}
    for pair in pairs:
        write_recording(pair.before, out / f"{pair.subject_id}_before.csv")
        write_recording(pair.after, out / f"{pair.subject_id}_after.csv")
        labels[pair.subject_id] = pair.brac
    write_labels(labels, out / "labels.csv")
