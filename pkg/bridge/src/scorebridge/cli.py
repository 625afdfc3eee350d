"""Command line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import BridgeError
from .export import export_scores
from .job import BridgeJob


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordsig-bridge",
        description="Score words in contexts across model checkpoints "
        "and write a score-record file.",
    )
    parser.add_argument("--contexts", type=Path, required=True,
                        help="contexts sidecar (JSONL with context_id and tokens)")
    parser.add_argument("--words", type=Path, required=True,
                        help="word list, one per line")
    parser.add_argument("--output", type=Path, required=True,
                        help="score file to write")
    parser.add_argument("--checkpoints", type=Path, default=None,
                        help="directory of checkpoint subdirectories "
                        "named with trailing step numbers")
    parser.add_argument("--reference", type=Path, default=None,
                        help="saved model scored once for log_r")
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed label stamped into every record")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log per-word token variants and progress")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        job = BridgeJob(
            contexts=args.contexts,
            words=args.words,
            output=args.output,
            checkpoints=args.checkpoints,
            reference=args.reference,
            batch_size=args.batch_size,
            device=args.device,
            seed=args.seed,
        )
        report = export_scores(job)
    except BridgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    print(f"wrote {report.records} records to {args.output}")
    if report.failures:
        for step, message in report.failures:
            print(f"checkpoint at step {step} skipped: {message}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
