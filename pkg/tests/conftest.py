"""Shared builders for the test suite."""

import numpy as np
import pytest

import gaitbrac as gb


def make_instances(n=8, seed=3, effects=None, brac_distribution=None, phone_fraction=1.0):
    """Small synthetic f-difference dataset through the real pipeline."""
    kwargs = {}
    if effects is not None:
        kwargs["effects"] = effects
    if brac_distribution is not None:
        kwargs["brac_distribution"] = brac_distribution
    pairs = gb.generate_dataset(n, master_seed=seed, phone_fraction=phone_fraction, **kwargs)
    instances = []
    for p in pairs:
        mask = p.before.devices()
        diff = gb.feature_difference(
            gb.assemble_feature_vector(p.before, mask),
            gb.assemble_feature_vector(p.after, mask),
        )
        instances.append(gb.LabeledInstance(p.subject_id, diff, p.brac))
    return pairs, instances


def toy_instances(scores, bracs, n_features=3, seed=0):
    """Hand-sized LabeledInstances whose first feature is `scores`."""
    rng = np.random.default_rng(seed)
    catalog = tuple(f"Glass.Accelerometer.x.stat.f{i}" for i in range(n_features))
    out = []
    for i, (s, b) in enumerate(zip(scores, bracs)):
        vals = np.concatenate([[s], rng.normal(0, 0.01, n_features - 1)])
        out.append(
            gb.LabeledInstance(f"t{i:02d}", gb.FeatureVector(vals, catalog), float(b))
        )
    return out


@pytest.fixture(scope="session")
def small_dataset():
    """Eight full-pipeline subjects shared by slower tests."""
    return make_instances(n=8, seed=3)


@pytest.fixture(scope="session")
def one_pair():
    profile = gb.SubjectProfile("s77", 2.0, 2.4, 1.1, 320.0, seed=77)
    return gb.generate_pair(profile)
