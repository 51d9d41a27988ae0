"""
Leave-one-subject-out evaluation
================================

Thirty synthetic subjects, one f-difference instance each. Every fold
trains on 29 subjects and scores the held-out one; the pooled predictions
give a single ROC/AUC per classifier and MAE/RMSE per regressor, mirroring
the published evaluation battery.
"""

import numpy as np

import gaitbrac as gb
from gaitbrac.models import ModelKind

pairs = gb.generate_dataset(30, master_seed=42)
instances = [
    gb.LabeledInstance(
        p.subject_id,
        gb.feature_difference(
            gb.assemble_feature_vector(p.before), gb.assemble_feature_vector(p.after)
        ),
        p.brac,
    )
    for p in pairs
]
print(f"{len(instances)} instances x {len(instances[0].diff)} features")

print("\nclassification at BrAC threshold 240 (drunk is the positive class):")
print(f"{'model':10s} {'AUC':>6s} {'FPR@TPR=1':>10s}")
for kind in (ModelKind.GB_CLF, ModelKind.ADABOOST_CLF, ModelKind.DT):
    rep = gb.loso(instances, kind, "classify", threshold=240)
    print(f"{kind.value:10s} {rep.auc:6.3f} {rep.fpr_at_tpr1:10.3f}")

print("\nclassification by threshold (gradient boosting):")
for threshold in (220, 240, 250, 350):
    rep = gb.loso(instances, ModelKind.GB_CLF, "classify", threshold=threshold)
    print(f"  threshold {threshold}: auc={rep.auc:.3f} fpr@tpr1={rep.fpr_at_tpr1:.3f}")

print("\nregression of the BrAC value:")
bracs = np.array([i.brac for i in instances])
span = bracs.max() - bracs.min()
print(f"{'model':8s} {'MAE':>7s} {'RMSE':>7s} {'MAE/range':>10s}")
for kind in (ModelKind.GB_REG, ModelKind.RT, ModelKind.ADABOOST_REG, ModelKind.LASSO):
    rep = gb.loso(instances, kind, "regress")
    print(f"{kind.value:8s} {rep.mae:7.1f} {rep.rmse:7.1f} {rep.mae / span:10.1%}")

rep = gb.loso(instances, ModelKind.GB_CLF, "classify", threshold=240)
tp, fp, fn, tn = rep.confusion
print(f"\nconfusion at cutoff 0.5: tp={tp} fp={fp} fn={fn} tn={tn}")
print("first ROC points (fpr, tpr, cutoff):")
for point in rep.roc[:4]:
    print(f"  ({point[0]:.3f}, {point[1]:.3f}, {point[2]:.3f})")
