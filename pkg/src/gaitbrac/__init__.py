"""Gait-based breath-alcohol screening from wearable IMU streams.

Multi-device recordings are windowed, resampled, and SMA-smoothed; four
feature families are extracted per signal and concatenated in a canonical
order; the after-minus-before difference vector of each subject feeds
from-scratch learners (CART, AdaBoost, gradient boosting, Lasso) evaluated
leave-one-subject-out. A parametric synthetic-gait generator stands in for
field data at desk scale.
"""

from .datamodel import (
    BRAC_THRESHOLDS,
    DEVICE_CATALOG,
    DEVICE_ORDER,
    SENSOR_ORDER,
    Device,
    DeviceSpec,
    GaitClass,
    GaitRecording,
    SensorKind,
    SensorStream,
    Session,
    SubjectPair,
    label_class,
    parse_labels,
    parse_recording,
    serialize_recording,
    write_labels,
    write_recording,
)
from .errors import GaitBracError
from .evaluation import (
    DEVICE_MASKS,
    FEATURE_FAMILIES,
    EvalReport,
    ablate_devices,
    ablate_devices_matrix,
    ablate_feature_sets,
    auc,
    confusion_matrix,
    fpr_at_fixed_tpr,
    loso,
    regression_metrics,
    roc_auc_trapezoid,
    roc_curve,
)
from .features import (
    FeatureVector,
    LabeledInstance,
    assemble_feature_vector,
    build_catalog,
    catalog_slice,
    feature_difference,
    fft_features,
    gait_features,
    histogram_features,
    load_matrix,
    save_matrix,
    stat_features,
)
from .models import (
    Ensemble,
    Hyperparams,
    ModelKind,
    catalog_fingerprint,
    default_hyperparams,
    load_model,
    predict,
    save_model,
    train_model,
)
from .signals import (
    AxisSignal,
    PipelineConfig,
    extract_window,
    preprocess_stream,
    resample,
    sma_filter,
)
from .synth import (
    EffectModel,
    SubjectProfile,
    generate_dataset,
    generate_pair,
    write_dataset,
)

__version__ = "0.1.0"
