from .exceptions import CorpusTooSmallError
from .model import LmModel, clm_loss, context_matrix, dap_loss, lm_gradients, logits, token_nll
from .training import (ComparisonStats, LmTrainConfig, MaskMode, TrainReport, compare_runs, encode_corpus,
                       make_windows, moving_average, timing_summary, train_lm)
