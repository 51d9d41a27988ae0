"""
Feature-family and device ablations
===================================

Which of the four feature families carries the signal, and which device
combinations suffice? Each ablation is a full LOSO run on a catalog slice:
one family alone, everything but that family, or one device subset.
"""

import gaitbrac as gb
from gaitbrac.models import Hyperparams, ModelKind

hp = Hyperparams(n_estimators=60, learning_rate=0.1, max_depth=2)

pairs = gb.generate_dataset(20, master_seed=42)
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

print("feature families at threshold 240 (gradient boosting):")
print(f"{'family':12s} {'only this set':>14s} {'all but this set':>17s}")
for family, only, without in gb.ablate_feature_sets(instances, ModelKind.GB_CLF, 240, hp):
    print(f"{family:12s} {only:14.3f} {without:17.3f}")

print("\ndevice combinations at threshold 240:")
print(f"{'mask':12s} {'AUC':>6s} {'subjects':>9s}")
for mask, report in gb.ablate_devices(pairs, ModelKind.GB_CLF, "classify", 240, hp):
    print(f"{mask:12s} {report.auc:6.3f} {len(report.per_fold_predictions):9d}")

print("\ndevice combinations for regression (MAE):")
for mask, report in gb.ablate_devices(pairs, ModelKind.GB_REG, "regress", hyperparams=hp):
    print(f"{mask:12s} mae={report.mae:6.1f} rmse={report.rmse:6.1f}")
