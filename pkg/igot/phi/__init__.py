from .annotations import AnnotatedWord, load_annotations, write_annotations
from .exceptions import AnnotationError, PhiModelFormatError, ShapeMismatchError
from .features import FEATURE_NAMES, FeatureModel, featurize
from .model import (FEATURE_SPEC_VERSION, PhiModel, PhiTrainConfig, annotated_batch, fit_phi, phi_gradients,
                    phi_loss, phi_predict, phi_score, train_phi)
from .optim import AdamState, adam_step
from .select import score_percentile, score_table, select_heuristic
