"""Self-describing text format for trained models; round-trips bit-exactly.

Layout: a magic/version line, key=value header fields in a fixed order,
then each tree in preorder ("S <feature> <threshold>" / "L <value>" lines).
Floats are written with repr, so parse(serialize(m)) reproduces every value
exactly and serialize(parse(f)) reproduces f byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import CatalogFingerprintMismatch, MalformedModelFile
from .base import Ensemble, Hyperparams, ModelKind, catalog_fingerprint
from .tree import Leaf, Split, TreeNode

MAGIC = "gaitbrac-model v1"


def _tree_lines(node: TreeNode, out: list[str]) -> None:
    if isinstance(node, Leaf):
        out.append(f"L {node.value!r}")
    else:
        out.append(f"S {node.feature} {node.threshold!r}")
        _tree_lines(node.left, out)
        _tree_lines(node.right, out)


def serialize_model(model: Ensemble) -> str:
    hp = model.hyperparams
    lines = [
        MAGIC,
        f"kind={model.kind.value}",
        f"n_features={model.n_features}",
        f"fingerprint={model.fingerprint or 'none'}",
        f"n_estimators={hp.n_estimators}",
        f"learning_rate={hp.learning_rate!r}",
        f"max_depth={'none' if hp.max_depth is None else hp.max_depth}",
        f"min_samples_split={hp.min_samples_split}",
        f"alpha={hp.alpha!r}",
        f"random_seed={hp.random_seed}",
        f"converged={'true' if model.converged else 'false'}",
        f"init={model.init_value!r}",
        "coef="
        + ("none" if model.coef is None else ",".join(repr(c) for c in model.coef.tolist())),
        "stage_weights=" + ",".join(repr(w) for w in model.stage_weights),
        f"trees={len(model.base_models)}",
    ]
    for tree in model.base_models:
        _tree_lines(tree, lines)
    return "\n".join(lines) + "\n"


def save_model(model: Ensemble, path: str | Path) -> None:
    Path(path).write_text(serialize_model(model))


def _take(lines: list[str], cursor: int, key: str) -> tuple[str, int]:
    if cursor >= len(lines):
        raise MalformedModelFile(f"truncated file: missing '{key}'")
    line = lines[cursor]
    prefix = key + "="
    if not line.startswith(prefix):
        raise MalformedModelFile(f"expected '{key}=...', got '{line}'")
    return line[len(prefix):], cursor + 1


def _parse_tree(lines: list[str], cursor: int) -> tuple[TreeNode, int]:
    if cursor >= len(lines):
        raise MalformedModelFile("truncated file inside a tree")
    parts = lines[cursor].split(" ")
    if parts[0] == "L" and len(parts) == 2:
        try:
            return Leaf(float(parts[1])), cursor + 1
        except ValueError:
            raise MalformedModelFile(f"bad leaf line '{lines[cursor]}'") from None
    if parts[0] == "S" and len(parts) == 3:
        try:
            feature = int(parts[1])
            threshold = float(parts[2])
        except ValueError:
            raise MalformedModelFile(f"bad split line '{lines[cursor]}'") from None
        left, cursor = _parse_tree(lines, cursor + 1)
        right, cursor = _parse_tree(lines, cursor)
        return Split(feature, threshold, left, right), cursor
    raise MalformedModelFile(f"unrecognized tree line '{lines[cursor]}'")


def parse_model(text: str) -> Ensemble:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise MalformedModelFile(f"missing '{MAGIC}' magic line")
    cursor = 1
    kind_s, cursor = _take(lines, cursor, "kind")
    try:
        kind = ModelKind(kind_s)
    except ValueError:
        raise MalformedModelFile(f"unknown model kind '{kind_s}'") from None
    n_features_s, cursor = _take(lines, cursor, "n_features")
    fingerprint_s, cursor = _take(lines, cursor, "fingerprint")
    n_estimators_s, cursor = _take(lines, cursor, "n_estimators")
    lr_s, cursor = _take(lines, cursor, "learning_rate")
    max_depth_s, cursor = _take(lines, cursor, "max_depth")
    mss_s, cursor = _take(lines, cursor, "min_samples_split")
    alpha_s, cursor = _take(lines, cursor, "alpha")
    seed_s, cursor = _take(lines, cursor, "random_seed")
    converged_s, cursor = _take(lines, cursor, "converged")
    init_s, cursor = _take(lines, cursor, "init")
    coef_s, cursor = _take(lines, cursor, "coef")
    weights_s, cursor = _take(lines, cursor, "stage_weights")
    trees_s, cursor = _take(lines, cursor, "trees")
    try:
        hp = Hyperparams(
            n_estimators=int(n_estimators_s),
            learning_rate=float(lr_s),
            max_depth=None if max_depth_s == "none" else int(max_depth_s),
            min_samples_split=int(mss_s),
            alpha=float(alpha_s),
            random_seed=int(seed_s),
        )
        n_features = int(n_features_s)
        init = float(init_s)
        coef = (
            None
            if coef_s == "none"
            else np.array([float(c) for c in coef_s.split(",")])
        )
        stage_weights = (
            [] if weights_s == "" else [float(x) for x in weights_s.split(",")]
        )
        n_trees = int(trees_s)
    except ValueError as exc:
        raise MalformedModelFile(str(exc)) from None
    if converged_s not in ("true", "false"):
        raise MalformedModelFile(f"bad converged flag '{converged_s}'")
    trees = []
    for _ in range(n_trees):
        tree, cursor = _parse_tree(lines, cursor)
        trees.append(tree)
    if cursor != len(lines):
        raise MalformedModelFile(f"{len(lines) - cursor} trailing line(s)")
    if coef is not None and coef.shape != (n_features,):
        raise MalformedModelFile(
            f"{coef.shape[0]} coefficients for {n_features} features"
        )
    return Ensemble(
        kind,
        hp,
        n_features,
        base_models=trees,
        stage_weights=stage_weights,
        init_value=init,
        coef=coef,
        converged=converged_s == "true",
        fingerprint=None if fingerprint_s == "none" else fingerprint_s,
    )


def load_model(
    path: str | Path, expected_catalog: tuple[str, ...] | None = None
) -> Ensemble:
    """Load a model file; optionally verify it was trained on this catalog."""
    model = parse_model(Path(path).read_text())
    if expected_catalog is not None:
        expected = catalog_fingerprint(expected_catalog)
        if model.fingerprint != expected:
            raise CatalogFingerprintMismatch(
                f"model fingerprint {model.fingerprint} != catalog {expected}"
            )
    return model
