from .embedding import EmbeddingInitPlan, apply_embedding_plan, embedding_init_plan
from .exceptions import EmbeddingPlanError
from .extension import extend_vocab, plan_extension
from .savings import DocumentSavings, SavingsStats, percent_saved, savings_report
from .selection import Selection, SelectionFormatError, SelectionKind
