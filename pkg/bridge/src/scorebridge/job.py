"""Job description and checkpoint discovery."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import JobError

_STEP_SUFFIX = re.compile(r"(\d+)$")


@dataclass(frozen=True)
class BridgeJob:
    """Everything one export run needs.

    ``checkpoints`` is a directory whose subdirectories are saved model
    checkpoints named with a trailing step number (``step_1000``, ``ckpt-20``).
    ``reference`` is a single saved model used for ``log_r``.  At least one of
    the two must be given; with only a reference the export emits
    reference-only records at step zero.
    """

    contexts: Path
    words: Path
    output: Path
    checkpoints: Path | None = None
    reference: Path | None = None
    batch_size: int = 16
    device: str = "cpu"
    seed: int = 0

    def __post_init__(self):
        if self.checkpoints is None and self.reference is None:
            raise JobError("need a checkpoint directory, a reference model, or both")
        if self.batch_size < 1:
            raise JobError("batch_size must be at least 1")
        for name in ("contexts", "words"):
            path = getattr(self, name)
            if not Path(path).is_file():
                raise JobError(f"{name} file not found: {path}")


def discover_checkpoints(root) -> list[tuple[int, Path]]:
    """Find checkpoint subdirectories and order them by training step.

    The step is the trailing integer in the directory name; other
    subdirectories (logs, tensorboard runs) are ignored.  Steps must be
    unique so the output carries a strictly increasing step axis.
    """
    root = Path(root)
    if not root.is_dir():
        raise JobError(f"checkpoint directory not found: {root}")
    found: dict[int, Path] = {}
    for entry in sorted(root.iterdir()):
        if not entry.is_dir():
            continue
        match = _STEP_SUFFIX.search(entry.name)
        if match is None:
            continue
        step = int(match.group(1))
        if step in found:
            raise JobError(
                f"checkpoints {found[step].name} and {entry.name} share step {step}"
            )
        found[step] = entry
    if not found:
        raise JobError(f"no checkpoint subdirectories under {root}")
    return sorted(found.items())


def read_words(path) -> list[str]:
    """One word per line, file order kept, blanks skipped."""
    words = []
    seen = set()
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            word = raw.strip()
            if not word:
                continue
            if word in seen:
                raise JobError(f"duplicate word {word!r} in {path}")
            seen.add(word)
            words.append(word)
    if not words:
        raise JobError(f"no words in {path}")
    return words
