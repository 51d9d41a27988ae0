"""Command-line entry point: simulate, extract, train, predict, evaluate, ablate.

Every command is deterministic given its flags and seed. Errors print one
machine-readable line `ERROR <code>: <message>` on stderr and exit 1;
usage mistakes exit 2 via argparse.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .datamodel import (
    BRAC_THRESHOLDS,
    Device,
    GaitClass,
    Session,
    SubjectPair,
    label_class,
    parse_labels,
    parse_recording,
)
from .errors import GaitBracError, MissingLabel, MissingSession
from .evaluation import (
    ablate_devices_matrix,
    ablate_feature_sets,
    loso,
    write_predictions_csv,
    write_report_csv,
    write_roc_csv,
)
from .features import (
    LabeledInstance,
    feature_difference,
    assemble_feature_vector,
    load_matrix,
    save_matrix,
)
from .models import (
    ModelKind,
    catalog_fingerprint,
    default_hyperparams,
    kind_task,
    load_model,
    predict,
    save_model,
    train_model,
)
from .signals import PipelineConfig
from .synth import generate_dataset, write_dataset

_DEVICE_BY_TOKEN = {d.value.lower(): d for d in Device}


def _parse_device_mask(spec: str) -> frozenset[Device]:
    tokens = [t.strip().lower() for t in spec.replace("+", ",").split(",") if t.strip()]
    unknown = [t for t in tokens if t not in _DEVICE_BY_TOKEN]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown device(s): {','.join(unknown)}")
    return frozenset(_DEVICE_BY_TOKEN[t] for t in tokens)


def _pipeline_config(args) -> PipelineConfig:
    return PipelineConfig(
        target_hz=args.target_hz,
        sma_window=args.sma_window,
        window_start_s=args.window_start,
        window_end_s=args.window_end,
    )


def _hyperparams(kind: ModelKind, args):
    return default_hyperparams(kind).override(
        n_estimators=args.n_estimators,
        learning_rate=args.learning_rate,
        max_depth=args.max_depth,
        min_samples_split=args.min_samples_split,
        alpha=args.alpha,
        random_seed=args.seed,
    )


def cmd_simulate(args) -> int:
    pairs = generate_dataset(args.subjects, master_seed=args.seed)
    write_dataset(pairs, args.out)
    print(f"wrote {2 * len(pairs)} recordings + labels.csv to {args.out}")
    return 0


def _collect_pairs(recordings_dir: Path, labels_path: Path):
    labels = parse_labels(labels_path)
    files = sorted(
        p for p in recordings_dir.glob("*.csv") if p.name != "labels.csv"
    )
    if not files:
        raise MissingSession(f"empty manifest: no recording CSVs in {recordings_dir}")
    by_subject: dict[str, dict[Session, object]] = {}
    for path in files:
        rec = parse_recording(path)
        by_subject.setdefault(rec.subject_id, {})[rec.session] = rec
    pairs = []
    for sid in sorted(by_subject):
        sessions = by_subject[sid]
        if Session.BEFORE not in sessions or Session.AFTER not in sessions:
            have = ",".join(s.value for s in sessions) or "none"
            raise MissingSession(f"subject {sid}: have {have}, need Before and After")
        if sid not in labels:
            raise MissingLabel(f"subject {sid} has recordings but no BrAC label")
        pairs.append(
            SubjectPair(sid, sessions[Session.BEFORE], sessions[Session.AFTER], labels[sid])
        )
    return pairs


def cmd_extract(args) -> int:
    config = _pipeline_config(args)
    mask = args.devices
    instances = []
    for pair in _collect_pairs(Path(args.recordings), Path(args.labels)):
        diff = feature_difference(
            assemble_feature_vector(pair.before, mask, config),
            assemble_feature_vector(pair.after, mask, config),
        )
        instances.append(LabeledInstance(pair.subject_id, diff, pair.brac))
    save_matrix(instances, args.out)
    print(f"catalog length: {len(instances[0].diff.catalog)}")
    print(f"subjects: {len(instances)}")
    return 0


def cmd_train(args) -> int:
    instances = load_matrix(args.matrix)
    kind = ModelKind(args.model)
    X = np.stack([i.diff.values for i in instances])
    brac = np.array([i.brac for i in instances])
    if kind_task(kind) == "classify":
        if args.threshold is None:
            raise MissingLabel("classification training needs --threshold")
        y = np.array(
            [float(label_class(b, args.threshold) is GaitClass.DRUNK) for b in brac]
        )
    else:
        y = brac
    model = train_model(
        kind,
        X,
        y,
        _hyperparams(kind, args),
        fingerprint=catalog_fingerprint(instances[0].diff.catalog),
    )
    save_model(model, args.out)
    print(f"trained {kind.value} on {len(instances)} subjects -> {args.out}")
    return 0


def cmd_predict(args) -> int:
    instances = load_matrix(args.matrix)
    model = load_model(args.model_file, expected_catalog=instances[0].diff.catalog)
    X = np.stack([i.diff.values for i in instances])
    scores = predict(model, X)
    lines = ["subject,score,brac"]
    for inst, score in zip(instances, scores.tolist()):
        lines.append(f"{inst.subject_id},{score!r},{inst.brac!r}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {len(instances)} predictions to {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    instances = load_matrix(args.matrix)
    kind = ModelKind(args.model)
    task = args.task or kind_task(kind)
    report = loso(
        instances,
        kind,
        task,
        args.threshold,
        _hyperparams(kind, args),
        cutoff=args.cutoff,
        config_echo={"seed": args.seed},
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_report_csv(report, out / "report.csv")
    write_predictions_csv(report, out / "predictions.csv")
    if report.roc is not None:
        write_roc_csv(report, out / "roc.csv")
        print(f"auc: {report.auc:.4f}  fpr@tpr=1: {report.fpr_at_tpr1:.4f}")
    else:
        print(f"mae: {report.mae:.2f}  rmse: {report.rmse:.2f}")
    return 0


def cmd_ablate(args) -> int:
    instances = load_matrix(args.matrix)
    kind = ModelKind(args.model)
    hp = _hyperparams(kind, args)
    lines = []
    if args.kind == "features":
        rows = ablate_feature_sets(instances, kind, args.threshold, hp)
        lines.append("family,auc_only,auc_without")
        for family, only, without in rows:
            lines.append(f"{family},{only!r},{without!r}")
    else:
        task = args.task or kind_task(kind)
        reports = ablate_devices_matrix(instances, kind, task, args.threshold, hp)
        if task == "classify":
            lines.append("mask,auc,fpr_at_tpr1")
            for mask, rep in reports:
                lines.append(f"{mask},{rep.auc!r},{rep.fpr_at_tpr1!r}")
        else:
            lines.append("mask,mae,rmse")
            for mask, rep in reports:
                lines.append(f"{mask},{rep.mae!r},{rep.rmse!r}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines) - 1} ablation rows to {args.out}")
    return 0


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--model",
        required=True,
        choices=[k.value for k in ModelKind],
        help="model kind (dt/adaboost/gbc classify; rt/abr/gbr/lasso regress)",
    )
    p.add_argument("--threshold", type=int, choices=BRAC_THRESHOLDS, default=None)
    p.add_argument("--n-estimators", type=int, default=None)
    p.add_argument("--learning-rate", type=float, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--min-samples-split", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--seed", type=int, default=42)


def _add_signal_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--target-hz", type=float, default=50.0)
    p.add_argument("--sma-window", type=int, default=5)
    p.add_argument("--window-start", type=float, default=6.0)
    p.add_argument("--window-end", type=float, default=14.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaitbrac",
        description="Gait-based intoxication screening pipeline (simulate, "
        "extract, train, predict, evaluate, ablate).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic recording set")
    p.add_argument("-n", "--subjects", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("extract", help="recordings + labels -> feature matrix CSV")
    p.add_argument("--recordings", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--devices",
        type=_parse_device_mask,
        default=frozenset(Device),
        help="comma-separated device mask, e.g. 'phone,watch' (default: all four)",
    )
    p.add_argument("--seed", type=int, default=42)
    _add_signal_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="fit one model on the full matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", required=True)
    _add_model_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="score a matrix with a saved model")
    p.add_argument("--matrix", required=True)
    p.add_argument("--model-file", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="leave-one-subject-out evaluation")
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--task", choices=["classify", "regress"], default=None)
    p.add_argument("--cutoff", type=float, default=0.5)
    _add_model_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ablate", help="feature-family or device-mask ablation")
    p.add_argument("--matrix", required=True)
    p.add_argument("--kind", required=True, choices=["features", "devices"])
    p.add_argument("--out", required=True)
    p.add_argument("--task", choices=["classify", "regress"], default=None)
    _add_model_flags(p)
    p.set_defaults(func=cmd_ablate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.subjects < 3:
        parser.error("simulate needs at least 3 subjects")
    if args.command in ("evaluate", "ablate", "train"):
        kind = ModelKind(args.model)
        task = getattr(args, "task", None) or kind_task(kind)
        if task != kind_task(kind):
            parser.error(f"model '{kind.value}' cannot run task '{task}'")
        if task == "classify" and args.threshold is None:
            parser.error("classification needs --threshold {220,240,250,350}")
    try:
        return args.func(args)
    except GaitBracError as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
