"""Leave-one-subject-out evaluation, metrics, and the two ablations.

Each LOSO fold trains on every other subject and records the held-out
prediction; the pooled one-per-subject predictions feed a single ROC/AUC
(classification) or MAE/RMSE (regression). AUC is the Mann-Whitney pair
statistic with ties counted 1/2, which equals the trapezoidal area under
the step ROC.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .datamodel import Device, GaitClass, SubjectPair, label_class
from .errors import (
    CatalogMismatch,
    LengthMismatch,
    SingleClass,
    SingleClassAtThreshold,
    TooFewSubjects,
)
from .features import (
    LabeledInstance,
    assemble_feature_vector,
    build_catalog,
    catalog_device,
    catalog_family,
    catalog_slice,
    feature_difference,
)
from .models import (
    Hyperparams,
    ModelKind,
    default_hyperparams,
    kind_task,
    predict,
    train_model,
)
from .signals import PipelineConfig

#: Ablation feature families, in the published table's order.
FEATURE_FAMILIES = (
    ("Histogram", "hist"),
    ("KnownGait", "gait"),
    ("Frequency", "fft"),
    ("Statistics", "stat"),
)

#: Device combinations, in the published figures' order.
DEVICE_MASKS: tuple[tuple[str, tuple[Device, ...]], ...] = (
    ("all", (Device.GLASS, Device.WATCH, Device.BAND, Device.PHONE)),
    ("phone", (Device.PHONE,)),
    ("watch", (Device.WATCH,)),
    ("glass", (Device.GLASS,)),
    ("phone+watch", (Device.PHONE, Device.WATCH)),
    ("phone+glass", (Device.PHONE, Device.GLASS)),
)


@dataclass
class EvalReport:
    """Pooled LOSO metrics; classification-only fields are None for regression."""

    per_fold_predictions: list[tuple[str, float, float]]  # (subject, score, brac)
    auc: float | None = None
    roc: list[tuple[float, float, float]] | None = None  # (fpr, tpr, threshold)
    confusion: tuple[int, int, int, int] | None = None  # (tp, fp, fn, tn)
    fpr_at_tpr1: float | None = None
    mae: float | None = None
    rmse: float | None = None
    config_echo: dict = field(default_factory=dict)


def auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Mann-Whitney AUC: P(score_drunk > score_sober), ties count 1/2."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = scores[labels == 1]
    neg = scores[labels == 0]
    if pos.size == 0 or neg.size == 0:
        raise SingleClass("AUC needs both classes")
    merged = np.concatenate([pos, neg])
    order = np.argsort(merged, kind="mergesort")
    ranks = np.empty(merged.size)
    sorted_vals = merged[order]
    i = 0
    while i < merged.size:
        j = i
        while j + 1 < merged.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0  # midrank, 1-based
        i = j + 1
    u = ranks[: pos.size].sum() - pos.size * (pos.size + 1) / 2.0
    return float(u / (pos.size * neg.size))


def roc_curve(
    scores: np.ndarray, labels: np.ndarray
) -> list[tuple[float, float, float]]:
    """Step ROC over unique cutoffs (predict drunk when score >= cutoff).

    Points are ordered from (0, 0) to (1, 1); the third element is the
    cutoff achieving the point (inf and -inf for the endpoints).
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("ROC needs both classes")
    points = [(0.0, 0.0, float("inf"))]
    for cutoff in np.unique(scores)[::-1]:
        flagged = scores >= cutoff
        tpr = float(np.sum(flagged & (labels == 1))) / n_pos
        fpr = float(np.sum(flagged & (labels == 0))) / n_neg
        points.append((fpr, tpr, float(cutoff)))
    if points[-1][:2] != (1.0, 1.0):
        points.append((1.0, 1.0, float("-inf")))
    return points


def roc_auc_trapezoid(roc: list[tuple[float, float, float]]) -> float:
    fpr = np.array([p[0] for p in roc])
    tpr = np.array([p[1] for p in roc])
    return float(np.trapezoid(tpr, fpr))


def fpr_at_fixed_tpr(
    scores: np.ndarray, labels: np.ndarray, tpr_target: float = 1.0
) -> float:
    """Minimum FPR over all cutoffs whose TPR reaches tpr_target."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("fpr_at_fixed_tpr needs both classes")
    best = 1.0
    cutoffs = np.concatenate([[np.inf], np.unique(scores)])
    for cutoff in cutoffs:
        flagged = scores >= cutoff
        tpr = float(np.sum(flagged & (labels == 1))) / n_pos
        if tpr >= tpr_target:
            fpr = float(np.sum(flagged & (labels == 0))) / n_neg
            best = min(best, fpr)
    return best


def confusion_matrix(
    scores: np.ndarray, labels: np.ndarray, cutoff: float = 0.5
) -> tuple[int, int, int, int]:
    """(tp, fp, fn, tn) counts with drunk predicted when score >= cutoff."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    flagged = scores >= cutoff
    tp = int(np.sum(flagged & (labels == 1)))
    fp = int(np.sum(flagged & (labels == 0)))
    fn = int(np.sum(~flagged & (labels == 1)))
    tn = int(np.sum(~flagged & (labels == 0)))
    return tp, fp, fn, tn


def regression_metrics(
    estimates: np.ndarray, labels: np.ndarray
) -> tuple[float, float]:
    """(MAE, RMSE) of estimates against labels."""
    estimates = np.asarray(estimates, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    if estimates.shape != labels.shape or estimates.size == 0:
        raise LengthMismatch(
            f"{estimates.shape} estimates vs {labels.shape} labels"
        )
    err = estimates - labels
    return float(np.mean(np.abs(err))), float(np.sqrt(np.mean(err**2)))


def loso(
    instances: list[LabeledInstance],
    model_kind: ModelKind,
    task: str | None = None,
    threshold: int | None = None,
    hyperparams: Hyperparams | None = None,
    cutoff: float = 0.5,
    config_echo: dict | None = None,
) -> EvalReport:
    """Leave-one-subject-out over the f-difference instances."""
    n = len(instances)
    if n < 3:
        raise TooFewSubjects(f"LOSO needs >= 3 subjects, got {n}")
    task = task or kind_task(model_kind)
    if task != kind_task(model_kind):
        raise ValueError(f"{model_kind.value} cannot run task '{task}'")
    hyperparams = hyperparams or default_hyperparams(model_kind)
    catalog = instances[0].diff.catalog
    for inst in instances:
        if inst.diff.catalog != catalog:
            raise CatalogMismatch(f"{inst.subject_id}: catalog differs")
    X = np.stack([inst.diff.values for inst in instances])
    brac = np.array([inst.brac for inst in instances])
    if task == "classify":
        if threshold is None:
            raise ValueError("classification LOSO needs a BrAC threshold")
        y = np.array(
            [float(label_class(b, threshold) is GaitClass.DRUNK) for b in brac]
        )
        if y.min() == y.max():
            raise SingleClassAtThreshold(
                f"all subjects on one side of threshold {threshold}"
            )
    else:
        y = brac

    preds = np.empty(n)
    for k in range(n):
        keep = np.arange(n) != k
        model = train_model(model_kind, X[keep], y[keep], hyperparams)
        preds[k] = predict(model, X[k : k + 1])[0]

    order = sorted(range(n), key=lambda i: instances[i].subject_id)
    per_fold = [(instances[i].subject_id, float(preds[i]), float(brac[i])) for i in order]
    echo = dict(config_echo or {})
    echo.setdefault("model", model_kind.value)
    echo.setdefault("task", task)
    if threshold is not None:
        echo.setdefault("threshold", threshold)
    echo.setdefault("n_subjects", n)

    if task == "classify":
        return EvalReport(
            per_fold_predictions=per_fold,
            auc=auc(preds, y),
            roc=roc_curve(preds, y),
            confusion=confusion_matrix(preds, y, cutoff),
            fpr_at_tpr1=fpr_at_fixed_tpr(preds, y, 1.0),
            config_echo=echo,
        )
    mae, rmse = regression_metrics(preds, brac)
    return EvalReport(per_fold_predictions=per_fold, mae=mae, rmse=rmse, config_echo=echo)


# --- ablations ----------------------------------------------------------------


def _slice_instances(
    instances: list[LabeledInstance], names: tuple[str, ...]
) -> list[LabeledInstance]:
    return [
        LabeledInstance(i.subject_id, catalog_slice(i.diff, names), i.brac)
        for i in instances
    ]


def family_partition(
    catalog: tuple[str, ...], family_tag: str
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """(names in the family, names in its complement); a catalog partition."""
    inside = tuple(n for n in catalog if catalog_family(n) == family_tag)
    outside = tuple(n for n in catalog if catalog_family(n) != family_tag)
    return inside, outside


def ablate_feature_sets(
    instances: list[LabeledInstance],
    model_kind: ModelKind,
    threshold: int,
    hyperparams: Hyperparams | None = None,
) -> list[tuple[str, float, float]]:
    """AUC of each family alone and of its complement: rows (family, only, without)."""
    catalog = instances[0].diff.catalog
    rows = []
    for family, tag in FEATURE_FAMILIES:
        inside, outside = family_partition(catalog, tag)
        only = loso(
            _slice_instances(instances, inside), model_kind, "classify", threshold, hyperparams
        ).auc
        without = loso(
            _slice_instances(instances, outside), model_kind, "classify", threshold, hyperparams
        ).auc
        rows.append((family, only, without))
    return rows


def device_partition(
    catalog: tuple[str, ...], devices: tuple[Device, ...]
) -> tuple[str, ...]:
    wanted = {d.value for d in devices}
    return tuple(n for n in catalog if catalog_device(n) in wanted)


def ablate_devices(
    pairs: list[SubjectPair],
    model_kind: ModelKind,
    task: str | None = None,
    threshold: int | None = None,
    hyperparams: Hyperparams | None = None,
    config: PipelineConfig = PipelineConfig(),
) -> list[tuple[str, EvalReport]]:
    """One LOSO report per device combination.

    Each subject is assembled once with every device it wore; per-mask
    vectors are catalog slices of that assembly (identical to re-assembling
    with the mask, by catalog construction). Subjects lacking a device in a
    mask are excluded from that mask's run.
    """
    full: dict[str, tuple[frozenset[Device], LabeledInstance]] = {}
    for pair in pairs:
        devices = pair.before.devices()
        diff = feature_difference(
            assemble_feature_vector(pair.before, devices, config),
            assemble_feature_vector(pair.after, devices, config),
        )
        full[pair.subject_id] = (
            devices,
            LabeledInstance(pair.subject_id, diff, pair.brac),
        )
    out = []
    for mask_name, mask_devices in DEVICE_MASKS:
        names = build_catalog(frozenset(mask_devices))
        eligible = [
            _slice_instances([inst], names)[0]
            for devices, inst in full.values()
            if set(mask_devices) <= devices
        ]
        report = loso(
            eligible,
            model_kind,
            task,
            threshold,
            hyperparams,
            config_echo={"devices": mask_name},
        )
        out.append((mask_name, report))
    return out


def ablate_devices_matrix(
    instances: list[LabeledInstance],
    model_kind: ModelKind,
    task: str | None = None,
    threshold: int | None = None,
    hyperparams: Hyperparams | None = None,
) -> list[tuple[str, EvalReport]]:
    """Device ablation by slicing an already-extracted feature matrix."""
    out = []
    for mask_name, mask_devices in DEVICE_MASKS:
        names = device_partition(instances[0].diff.catalog, mask_devices)
        sliced = _slice_instances(instances, names)
        report = loso(
            sliced, model_kind, task, threshold, hyperparams,
            config_echo={"devices": mask_name},
        )
        out.append((mask_name, report))
    return out


# --- plot-ready CSV outputs -----------------------------------------------------


def write_report_csv(report: EvalReport, path: str | Path) -> None:
    """Metrics as key,value rows (regression reports carry mae/rmse only)."""
    lines = ["key,value"]
    lines.append(f"n_subjects,{len(report.per_fold_predictions)}")
    if report.auc is not None:
        tp, fp, fn, tn = report.confusion
        lines.append(f"auc,{report.auc!r}")
        lines.append(f"fpr_at_tpr1,{report.fpr_at_tpr1!r}")
        lines.extend([f"tp,{tp}", f"fp,{fp}", f"fn,{fn}", f"tn,{tn}"])
    else:
        lines.append(f"mae,{report.mae!r}")
        lines.append(f"rmse,{report.rmse!r}")
    for key in sorted(report.config_echo):
        lines.append(f"config_{key},{report.config_echo[key]}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_roc_csv(report: EvalReport, path: str | Path) -> None:
    lines = ["fpr,tpr,threshold"]
    for fpr, tpr, cutoff in report.roc or []:
        lines.append(f"{fpr!r},{tpr!r},{cutoff!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_predictions_csv(report: EvalReport, path: str | Path) -> None:
    lines = ["subject,score,brac"]
    for subject, score, brac in report.per_fold_predictions:
        lines.append(f"{subject},{score!r},{brac!r}")
    Path(path).write_text("\n".join(lines) + "\n")
