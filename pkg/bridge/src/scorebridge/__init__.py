"""Checkpoint-to-score-file bridge for causal language models.

Given a directory of saved checkpoints, a contexts sidecar, and a word
list, this package scores every (word, context, checkpoint) triple by the
chain rule over subword tokens and writes the score-record file the
analysis side consumes.  The two packages share nothing but that file
format.
"""

from .errors import BridgeError, FormatError, JobError
from .export import ExportReport, export_scores
from .job import BridgeJob, discover_checkpoints
from .schema import context_id, validate_file
from .scoring import CheckpointScorer, select_variant

__all__ = [
    "BridgeError",
    "BridgeJob",
    "CheckpointScorer",
    "ExportReport",
    "FormatError",
    "JobError",
    "context_id",
    "discover_checkpoints",
    "export_scores",
    "select_variant",
    "validate_file",
]

__version__ = "0.1.0"
