"""Drive the scorers over a job and write the score file."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BridgeError
from .job import BridgeJob, discover_checkpoints, read_words
from .schema import read_contexts, record_line
from .scoring import CheckpointScorer, select_variant

log = logging.getLogger(__name__)


@dataclass
class ExportReport:
    records: int = 0
    steps_done: list[int] = field(default_factory=list)
    failures: list[tuple[int, str]] = field(default_factory=list)
    variants: dict[str, list[str]] = field(default_factory=dict)


def _context_text(tokens: list[str]) -> str:
    # sidecar contexts are whitespace-tokenized; joining restores the text
    # the subword tokenizer should see
    return " ".join(tokens)


def _score_all(scorer, words, texts, batch_size):
    """Score every (word, context) pair, returning {(word, cid): (lq, lqc)}."""
    pairs = [(word, cid, text) for word in words for cid, text in texts]
    out = {}
    for start in range(0, len(pairs), batch_size):
        chunk = pairs[start : start + batch_size]
        scored = scorer.score_batch([(text, word) for word, _, text in chunk])
        for (word, cid, _), (lq, lqc) in zip(chunk, scored):
            out[(word, cid)] = (lq, lqc)
    return out


def export_scores(job: BridgeJob) -> ExportReport:
    """Run one export job and write its score file.

    Checkpoints are scored in step order.  A checkpoint that fails to load
    or score is reported and skipped; the ones around it still produce
    records and the output stays valid line by line.  A failing reference
    model is fatal instead, because every record would be missing ``log_r``.
    """
    contexts = read_contexts(job.contexts)
    texts = [(cid, _context_text(tokens)) for cid, tokens in contexts]
    words = read_words(job.words)
    report = ExportReport()

    for word in words:
        used = sorted({select_variant(word, text) for _, text in texts})
        report.variants[word] = used
        log.info("word %r scored as %s", word, " / ".join(repr(v) for v in used))

    checkpoints = []
    if job.checkpoints is not None:
        checkpoints = discover_checkpoints(job.checkpoints)

    reference = None
    if job.reference is not None:
        try:
            scorer = CheckpointScorer(job.reference, job.device)
            reference = _score_all(scorer, words, texts, job.batch_size)
        except Exception as exc:
            raise BridgeError(f"reference model failed: {exc}") from exc

    meta = f"bridge export: {len(words)} words x {len(texts)} contexts"
    if checkpoints:
        meta += f", {len(checkpoints)} checkpoints from {Path(job.checkpoints).name}"
    if job.reference is not None:
        meta += f", reference {Path(job.reference).name}"

    output = Path(job.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w", encoding="utf-8") as handle:
        handle.write(json.dumps({"_meta": meta}) + "\n")

        if not checkpoints:
            # reference-only job: log_r at a single nominal step
            for word in words:
                for cid, _ in texts:
                    lr = reference[(word, cid)][0]
                    handle.write(
                        record_line(word, cid, 0, job.seed, {"log_r": lr}) + "\n"
                    )
                    report.records += 1
            return report

        for step, path in checkpoints:
            try:
                scorer = CheckpointScorer(path, job.device)
                scored = _score_all(scorer, words, texts, job.batch_size)
            except Exception as exc:
                # one broken checkpoint must not sink the sweep
                report.failures.append((step, f"{type(exc).__name__}: {exc}"))
                log.warning("checkpoint %s failed: %s", path.name, exc)
                continue
            for word in words:
                for cid, _ in texts:
                    lq, lqc = scored[(word, cid)]
                    logs = {"log_q": lq, "log_q_c": lqc}
                    if reference is not None:
                        logs["log_r"] = reference[(word, cid)][0]
                    handle.write(
                        record_line(word, cid, step, job.seed, logs) + "\n"
                    )
                    report.records += 1
            report.steps_done.append(step)

    if not report.steps_done:
        raise BridgeError(
            "every checkpoint failed: "
            + "; ".join(f"step {s}: {m}" for s, m in report.failures)
        )
    return report
