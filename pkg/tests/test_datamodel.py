import numpy as np
import pytest

import gaitbrac as gb
from gaitbrac.datamodel import (
    BRAC_THRESHOLDS,
    DEVICE_CATALOG,
    Device,
    GaitClass,
    SensorKind,
    SensorStream,
    Session,
    serialize_recording,
)
from gaitbrac.errors import (
    DuplicateSubject,
    EmptyStream,
    MalformedFile,
    NegativeBrac,
    NonFiniteInput,
    NonMonotonicTime,
    UnknownDevice,
    UnknownSensor,
)


def _stream(device=Device.GLASS, sensor=SensorKind.ACCELEROMETER, n=10):
    t = np.arange(n, dtype=np.int64) * 10_000_000
    xyz = np.tile([0.1, 0.2, 9.8], (n, 1))
    return SensorStream(device, sensor, t, xyz)


def test_device_catalog_matches_published_table():
    assert DEVICE_CATALOG[Device.GLASS].max_rate_hz == 100
    assert DEVICE_CATALOG[Device.WATCH].max_rate_hz == 200
    assert DEVICE_CATALOG[Device.BAND].max_rate_hz == 62
    assert DEVICE_CATALOG[Device.PHONE].max_rate_hz == 180
    assert DEVICE_CATALOG[Device.BAND].sensors == {
        SensorKind.ACCELEROMETER,
        SensorKind.GYROSCOPE,
    }
    for d in (Device.GLASS, Device.WATCH, Device.PHONE):
        assert len(DEVICE_CATALOG[d].sensors) == 5
    locations = {spec.body_location for spec in DEVICE_CATALOG.values()}
    assert locations == {"head", "left_hand", "right_hand", "rump"}


def test_stream_counts_with_and_without_phone(tmp_path):
    full = gb.generate_pair(gb.SubjectProfile("a", 2.0, 2.0, 1.0, 0.0, 1))
    assert len(full.before.streams) == 17
    short = gb.generate_pair(
        gb.SubjectProfile("b", 2.0, 2.0, 1.0, 0.0, 1), has_phone=False
    )
    assert len(short.before.streams) == 12


def test_stream_validation_errors():
    t = np.array([0, 1, 1, 2], dtype=np.int64)
    xyz = np.zeros((4, 3))
    with pytest.raises(NonMonotonicTime):
        SensorStream(Device.GLASS, SensorKind.ACCELEROMETER, t, xyz)
    with pytest.raises(EmptyStream):
        SensorStream(Device.GLASS, SensorKind.ACCELEROMETER, t[:1], xyz[:1])
    bad = xyz.copy()
    bad[2, 1] = np.nan
    with pytest.raises(NonFiniteInput):
        SensorStream(Device.GLASS, SensorKind.ACCELEROMETER, np.arange(4, dtype=np.int64), bad)
    with pytest.raises(UnknownSensor):
        SensorStream(Device.BAND, SensorKind.COMPASS, np.arange(4, dtype=np.int64), xyz)


def test_recording_rejects_duplicate_stream():
    with pytest.raises(MalformedFile):
        gb.GaitRecording("s", Session.BEFORE, (_stream(), _stream()), has_phone=False)


def test_parse_recording_roundtrip(tmp_path, one_pair):
    path = tmp_path / "rec.csv"
    gb.write_recording(one_pair.before, path)
    parsed = gb.parse_recording(path)
    assert parsed.subject_id == one_pair.before.subject_id
    assert parsed.session is Session.BEFORE
    assert parsed.has_phone
    assert serialize_recording(parsed) == path.read_text()
    for orig, back in zip(one_pair.before.streams, parsed.streams):
        assert np.array_equal(orig.t_ns, back.t_ns)
        assert np.array_equal(orig.xyz, back.xyz)  # bit-exact


def test_parse_recording_sorts_rows(tmp_path):
    text = (
        "subject_id,session,device,sensor\n"
        "s01,Before,,\n"
        "#stream,Glass,Accelerometer\n"
        "20,0.2,0.0,9.8\n"
        "10,0.1,0.0,9.8\n"
        "30,0.3,0.0,9.8\n"
    )
    path = tmp_path / "rec.csv"
    path.write_text(text)
    rec = gb.parse_recording(path)
    assert rec.streams[0].t_ns.tolist() == [10, 20, 30]
    assert rec.streams[0].xyz[:, 0].tolist() == [0.1, 0.2, 0.3]


@pytest.mark.parametrize(
    "mutation, err",
    [
        (("20,0.2,0.0,9.8", "10,0.1,0.0,9.8\n10,0.2,0.0,9.8"), NonMonotonicTime),
        (("#stream,Glass,Accelerometer", "#stream,Ring,Accelerometer"), UnknownDevice),
        (("#stream,Glass,Accelerometer", "#stream,Glass,Sonar"), UnknownSensor),
        (("#stream,Glass,Accelerometer", "#stream,Band,Compass"), UnknownSensor),
        (("subject_id,session,device,sensor", "id,session"), MalformedFile),
        (("s01,Before,,", "s01,Sometime,,"), MalformedFile),
        (("20,0.2,0.0,9.8", "20,0.2,0.0"), MalformedFile),
    ],
)
def test_parse_recording_errors(tmp_path, mutation, err):
    base = (
        "subject_id,session,device,sensor\n"
        "s01,Before,,\n"
        "#stream,Glass,Accelerometer\n"
        "10,0.1,0.0,9.8\n"
        "20,0.2,0.0,9.8\n"
    )
    old, new = mutation
    path = tmp_path / "rec.csv"
    path.write_text(base.replace(old, new))
    with pytest.raises(err):
        gb.parse_recording(path)


def test_parse_labels(tmp_path):
    path = tmp_path / "labels.csv"
    path.write_text("subject_id,brac\ns01,0\ns02,430\n")
    labels = gb.parse_labels(path)
    assert labels == {"s01": 0.0, "s02": 430.0}
    assert gb.label_class(labels["s01"], 220) is GaitClass.SOBER
    assert all(gb.label_class(labels["s02"], t) is GaitClass.DRUNK for t in BRAC_THRESHOLDS)

    path.write_text("subject_id,brac\ns01,10\ns01,20\n")
    with pytest.raises(DuplicateSubject):
        gb.parse_labels(path)
    path.write_text("subject_id,brac\ns01,-5\n")
    with pytest.raises(NegativeBrac):
        gb.parse_labels(path)
    path.write_text("brac,subject_id\ns01,10\n")
    with pytest.raises(MalformedFile):
        gb.parse_labels(path)


def test_labels_roundtrip(tmp_path):
    labels = {"s02": 117.3, "s01": 0.0, "s10": 430.0}
    path = tmp_path / "labels.csv"
    gb.write_labels(labels, path)
    assert gb.parse_labels(path) == labels


def test_label_class_examples():
    assert gb.label_class(250, 240) is GaitClass.DRUNK
    assert gb.label_class(100, 220) is GaitClass.SOBER
    # boundary house rule: equality counts as drunk
    assert gb.label_class(240, 240) is GaitClass.DRUNK


def test_label_class_monotone_at_every_threshold():
    grid = np.linspace(0, 430, 861)
    for threshold in BRAC_THRESHOLDS:
        classes = [int(gb.label_class(float(b), threshold)) for b in grid]
        assert classes == sorted(classes)
        # exhaustive boundary scan: flip happens exactly at the threshold
        flips = [b for b, c0, c1 in zip(grid[1:], classes, classes[1:]) if c1 != c0]
        assert len(flips) == 1 and flips[0] == threshold


def test_subject_pair_validation(one_pair):
    with pytest.raises(MalformedFile):
        gb.SubjectPair("s77", one_pair.after, one_pair.after, 100.0)
    with pytest.raises(NegativeBrac):
        gb.SubjectPair("s77", one_pair.before, one_pair.after, -1.0)
    other = gb.generate_pair(
        gb.SubjectProfile("s77", 2.0, 2.4, 1.1, 320.0, seed=5), has_phone=False
    )
    with pytest.raises(MalformedFile):
        gb.SubjectPair("s77", one_pair.before, other.after, 100.0)
