"""Core types, the device/sensor catalog, and recording/label file ingestion.

A recording file holds every stream of one subject in one session:

    subject_id,session,device,sensor      <- fixed header line
    s01,Before,,                          <- identity row (device/sensor are
                                             per-stream, so blank here)
    #stream,Glass,Accelerometer           <- stream section line
    60000000000,0.12,-0.04,9.81           <- data rows: t_ns,x,y,z
    ...

Labels are a plain CSV: header ``subject_id,brac``, one row per subject.
All numbers use '.' as the radix; floats are written with ``repr`` so a
serialize -> parse -> serialize round trip is byte-stable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateSubject,
    EmptyStream,
    MalformedFile,
    NegativeBrac,
    NonFiniteInput,
    NonMonotonicTime,
    UnknownDevice,
    UnknownSensor,
)

HEADER_LINE = "subject_id,session,device,sensor"
STREAM_MARKER = "#stream"

BRAC_THRESHOLDS = (220, 240, 250, 350)


class Device(enum.Enum):
    GLASS = "Glass"
    WATCH = "Watch"
    BAND = "Band"
    PHONE = "Phone"


class SensorKind(enum.Enum):
    ACCELEROMETER = "Accelerometer"
    LINEAR_ACCELERATION = "LinearAcceleration"
    GYROSCOPE = "Gyroscope"
    GRAVITY = "Gravity"
    COMPASS = "Compass"


class Session(enum.Enum):
    BEFORE = "Before"
    AFTER = "After"


class GaitClass(enum.IntEnum):
    """Binary intoxication class; ordered so SOBER < DRUNK."""

    SOBER = 0
    DRUNK = 1


#: Canonical iteration orders used everywhere a deterministic layout matters.
DEVICE_ORDER = (Device.GLASS, Device.WATCH, Device.BAND, Device.PHONE)
SENSOR_ORDER = (
    SensorKind.ACCELEROMETER,
    SensorKind.LINEAR_ACCELERATION,
    SensorKind.GYROSCOPE,
    SensorKind.GRAVITY,
    SensorKind.COMPASS,
)

_ALL_FIVE = frozenset(SENSOR_ORDER)

SENSOR_UNITS = {
    SensorKind.ACCELEROMETER: "m/s^2",
    SensorKind.LINEAR_ACCELERATION: "m/s^2",
    SensorKind.GYROSCOPE: "rad/s",
    SensorKind.GRAVITY: "m/s^2",
    SensorKind.COMPASS: "uT",
}


@dataclass(frozen=True)
class DeviceSpec:
    """One wearable device: where it sits and what it samples."""

    device_id: Device
    body_location: str
    sensors: frozenset[SensorKind]
    max_rate_hz: float

    def ordered_sensors(self) -> tuple[SensorKind, ...]:
        return tuple(s for s in SENSOR_ORDER if s in self.sensors)


DEVICE_CATALOG: dict[Device, DeviceSpec] = {
    Device.GLASS: DeviceSpec(Device.GLASS, "head", _ALL_FIVE, 100.0),
    Device.WATCH: DeviceSpec(Device.WATCH, "left_hand", _ALL_FIVE, 200.0),
    Device.BAND: DeviceSpec(
        Device.BAND,
        "right_hand",
        frozenset({SensorKind.ACCELEROMETER, SensorKind.GYROSCOPE}),
        62.0,
    ),
    Device.PHONE: DeviceSpec(Device.PHONE, "rump", _ALL_FIVE, 180.0),
}


@dataclass(frozen=True)
class SensorStream:
    """One sensor's (t_ns, x, y, z) series for one device in one session.

    Timestamps are integer nanoseconds from experiment start and must be
    strictly increasing; all axis values must be finite.
    """

    device_id: Device
    sensor_kind: SensorKind
    t_ns: np.ndarray  # int64, strictly increasing
    xyz: np.ndarray  # float64, shape (n, 3)

    def __post_init__(self):
        t = np.asarray(self.t_ns, dtype=np.int64)
        v = np.asarray(self.xyz, dtype=np.float64)
        if t.ndim != 1 or v.shape != (t.shape[0], 3):
            raise MalformedFile(
                f"stream shape mismatch: {t.shape} timestamps vs {v.shape} values"
            )
        if t.shape[0] < 2:
            raise EmptyStream(
                f"{self.device_id.value}/{self.sensor_kind.value}: "
                f"{t.shape[0]} sample(s), need at least 2"
            )
        if np.any(np.diff(t) <= 0):
            raise NonMonotonicTime(
                f"{self.device_id.value}/{self.sensor_kind.value}: "
                "timestamps not strictly increasing"
            )
        if not np.all(np.isfinite(v)):
            raise NonFiniteInput(
                f"{self.device_id.value}/{self.sensor_kind.value}: non-finite value"
            )
        if self.sensor_kind not in DEVICE_CATALOG[self.device_id].sensors:
            raise UnknownSensor(
                f"{self.device_id.value} does not expose {self.sensor_kind.value}"
            )
        object.__setattr__(self, "t_ns", t)
        object.__setattr__(self, "xyz", v)
        t.setflags(write=False)
        v.setflags(write=False)

    @property
    def units(self) -> str:
        return SENSOR_UNITS[self.sensor_kind]

    @property
    def t_seconds(self) -> np.ndarray:
        return self.t_ns * 1e-9

    def __len__(self) -> int:
        return self.t_ns.shape[0]


@dataclass(frozen=True)
class GaitRecording:
    """All streams of one subject in one session."""

    subject_id: str
    session: Session
    streams: tuple[SensorStream, ...]
    has_phone: bool

    def __post_init__(self):
        object.__setattr__(self, "streams", tuple(self.streams))
        seen = set()
        for s in self.streams:
            key = (s.device_id, s.sensor_kind)
            if key in seen:
                raise MalformedFile(
                    f"duplicate stream {s.device_id.value}/{s.sensor_kind.value}"
                )
            seen.add(key)
        if not self.has_phone and any(
            s.device_id is Device.PHONE for s in self.streams
        ):
            raise MalformedFile("has_phone=False but Phone streams present")

    def devices(self) -> frozenset[Device]:
        return frozenset(s.device_id for s in self.streams)

    def stream(self, device: Device, sensor: SensorKind) -> SensorStream | None:
        for s in self.streams:
            if s.device_id is device and s.sensor_kind is sensor:
                return s
        return None


@dataclass(frozen=True)
class SubjectPair:
    """Before/after recordings of one subject plus the breathalyzer label."""

    subject_id: str
    before: GaitRecording
    after: GaitRecording
    brac: float  # micrograms of alcohol per liter of breath

    def __post_init__(self):
        if self.before.session is not Session.BEFORE:
            raise MalformedFile("'before' recording is not a Before session")
        if self.after.session is not Session.AFTER:
            raise MalformedFile("'after' recording is not an After session")
        if not (self.subject_id == self.before.subject_id == self.after.subject_id):
            raise MalformedFile("subject ids differ between sessions")
        key = lambda r: {(s.device_id, s.sensor_kind) for s in r.streams}
        if key(self.before) != key(self.after):
            raise MalformedFile(
                f"{self.subject_id}: before/after expose different (device, sensor) sets"
            )
        if self.brac < 0:
            raise NegativeBrac(f"{self.subject_id}: brac={self.brac}")


def label_class(brac: float, threshold: int) -> GaitClass:
    """Classify a BrAC value against a legal threshold.

    The boundary brac == threshold counts as DRUNK (safety-first house rule).
    """
    if brac < 0:
        raise NegativeBrac(f"brac={brac}")
    if threshold not in BRAC_THRESHOLDS:
        raise ValueError(f"threshold must be one of {BRAC_THRESHOLDS}, got {threshold}")
    return GaitClass.DRUNK if brac >= threshold else GaitClass.SOBER


# --- file ingestion -------------------------------------------------------

_DEVICE_BY_NAME = {d.value: d for d in Device}
_SENSOR_BY_NAME = {s.value: s for s in SensorKind}
_SESSION_BY_NAME = {s.value: s for s in Session}


def parse_recording(path: str | Path) -> GaitRecording:
    """Parse one recording CSV into a GaitRecording.

    Samples are sorted by t_ns per stream; a residual duplicate timestamp
    raises NonMonotonicTime. has_phone is derived from Phone stream presence.
    """
    path = Path(path)
    text = path.read_text()
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER_LINE:
        raise MalformedFile(f"{path}: missing '{HEADER_LINE}' header")
    if len(lines) < 2:
        raise MalformedFile(f"{path}: missing identity row")
    ident = lines[1].split(",")
    if len(ident) != 4:
        raise MalformedFile(f"{path}: identity row needs 4 fields, got {len(ident)}")
    subject_id = ident[0].strip()
    if not subject_id:
        raise MalformedFile(f"{path}: empty subject_id")
    session_name = ident[1].strip()
    if session_name not in _SESSION_BY_NAME:
        raise MalformedFile(f"{path}: unknown session '{session_name}'")
    session = _SESSION_BY_NAME[session_name]

    streams: list[SensorStream] = []
    current: tuple[Device, SensorKind] | None = None
    rows: list[tuple[int, float, float, float]] = []

    def flush():
        if current is None:
            return
        if len(rows) < 2:
            raise EmptyStream(
                f"{path}: stream {current[0].value}/{current[1].value} has "
                f"{len(rows)} sample(s)"
            )
        rows.sort(key=lambda r: r[0])
        t = np.array([r[0] for r in rows], dtype=np.int64)
        v = np.array([r[1:] for r in rows], dtype=np.float64)
        streams.append(SensorStream(current[0], current[1], t, v))

    for lineno, raw in enumerate(lines[2:], start=3):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(STREAM_MARKER):
            flush()
            parts = line.split(",")
            if len(parts) != 3:
                raise MalformedFile(f"{path}:{lineno}: bad stream section line")
            dev_name, sensor_name = parts[1].strip(), parts[2].strip()
            if dev_name not in _DEVICE_BY_NAME:
                raise UnknownDevice(f"{path}:{lineno}: unknown device '{dev_name}'")
            sensor = _SENSOR_BY_NAME.get(sensor_name)
            if sensor is None:
                raise UnknownSensor(f"{path}:{lineno}: unknown sensor '{sensor_name}'")
            current = (_DEVICE_BY_NAME[dev_name], sensor)
            rows = []
            continue
        if current is None:
            raise MalformedFile(f"{path}:{lineno}: data row before any stream section")
        parts = line.split(",")
        if len(parts) != 4:
            raise MalformedFile(f"{path}:{lineno}: expected t_ns,x,y,z")
        try:
            rows.append(
                (int(parts[0]), float(parts[1]), float(parts[2]), float(parts[3]))
            )
        except ValueError as exc:
            raise MalformedFile(f"{path}:{lineno}: {exc}") from None
    flush()
    if not streams:
        raise MalformedFile(f"{path}: no streams")

    has_phone = any(s.device_id is Device.PHONE for s in streams)
    return GaitRecording(subject_id, session, tuple(streams), has_phone)


def serialize_recording(recording: GaitRecording) -> str:
    """Render a GaitRecording in the recording CSV format (canonical order)."""
    out = [HEADER_LINE, f"{recording.subject_id},{recording.session.value},,"]
    by_key = {(s.device_id, s.sensor_kind): s for s in recording.streams}
    for device in DEVICE_ORDER:
        for sensor in SENSOR_ORDER:
            s = by_key.get((device, sensor))
            if s is None:
                continue
            out.append(f"{STREAM_MARKER},{device.value},{sensor.value}")
            t = s.t_ns.tolist()
            for ti, (x, y, z) in zip(t, s.xyz.tolist()):
                out.append(f"{ti},{x!r},{y!r},{z!r}")
    return "\n".join(out) + "\n"


def write_recording(recording: GaitRecording, path: str | Path) -> None:
    Path(path).write_text(serialize_recording(recording))


def parse_labels(path: str | Path) -> dict[str, float]:
    """Parse a labels CSV into {subject_id: brac}."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines or lines[0].strip() != "subject_id,brac":
        raise MalformedFile(f"{path}: missing 'subject_id,brac' header")
    labels: dict[str, float] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise MalformedFile(f"{path}:{lineno}: expected subject_id,brac")
        sid = parts[0].strip()
        if not sid:
            raise MalformedFile(f"{path}:{lineno}: empty subject_id")
        try:
            brac = float(parts[1])
        except ValueError:
            raise MalformedFile(f"{path}:{lineno}: bad brac '{parts[1]}'") from None
        if not np.isfinite(brac):
            raise MalformedFile(f"{path}:{lineno}: non-finite brac")
        if brac < 0:
            raise NegativeBrac(f"{path}:{lineno}: brac={brac}")
        if sid in labels:
            raise DuplicateSubject(f"{path}:{lineno}: subject '{sid}' listed twice")
        labels[sid] = brac
    return labels


def write_labels(labels: dict[str, float], path: str | Path) -> None:
    lines = ["subject_id,brac"]
    for sid in sorted(labels):
        lines.append(f"{sid},{float(labels[sid])!r}")
    Path(path).write_text("\n".join(lines) + "\n")
