"""Compare the compiled count-table kernel against the pure-Python fallback.

Trains each implementation on the same synthetic position stream, then times
counting and smoothed log-probability queries. Run from the repository root:

    python benchmarks/bench_kernels.py --tokens 200000 --queries 50000
"""

import argparse
import math
import time

import numpy as np

from wordsig.kernels import available_impls, make_kernel


def synthetic_stream(n_tokens: int, vocab_size: int, seed: int):
    """Zipfian ids chopped into geometric-length utterances, laid out the way
    the n-gram backend feeds its kernel."""
    rng = np.random.default_rng(seed)
    ranks = np.arange(1, vocab_size + 1, dtype=float)
    weights = 1.0 / ranks
    weights /= weights.sum()
    flat = rng.choice(vocab_size, size=n_tokens, p=weights).astype(np.int64)
    tok_idx = np.arange(n_tokens, dtype=np.int64)
    ctx_start = np.empty(n_tokens, dtype=np.int64)
    pos = 0
    while pos < n_tokens:
        length = min(1 + rng.geometric(0.12), n_tokens - pos)
        ctx_start[pos : pos + length] = pos
        pos += length
    return flat, tok_idx, ctx_start


def run_one(impl, args, flat, tok_idx, ctx_start, queries):
    kernel = make_kernel(args.order, args.vocab, impl=impl)
    t0 = time.perf_counter()
    kernel.consume(flat, tok_idx, ctx_start, 0, len(flat))
    train_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    checksum = 0.0
    for ctx, target in queries:
        checksum += kernel.log_prob(ctx, target, args.mode, args.k)
    query_s = time.perf_counter() - t0
    return train_s, query_s, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tokens", type=int, default=200_000)
    parser.add_argument("--vocab", type=int, default=2_000)
    parser.add_argument("--order", type=int, default=3)
    parser.add_argument("--queries", type=int, default=50_000)
    parser.add_argument("--mode", default="interpolated_add_k")
    parser.add_argument("--k", type=float, default=0.5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    impls = available_impls()
    if impls == ("pure",):
        print("compiled extension not built; timing the fallback only")

    flat, tok_idx, ctx_start = synthetic_stream(args.tokens, args.vocab, args.seed)
    rng = np.random.default_rng(args.seed + 1)
    queries = []
    for _ in range(args.queries):
        i = int(rng.integers(args.order - 1, args.tokens))
        ctx = tuple(int(x) for x in flat[i - args.order + 1 : i])
        queries.append((ctx, int(flat[i])))

    results = {}
    for impl in impls:
        results[impl] = run_one(impl, args, flat, tok_idx, ctx_start, queries)
        train_s, query_s, _ = results[impl]
        print(
            f"{impl:5s}  train {train_s:8.3f} s  "
            f"({args.tokens / train_s / 1e3:8.1f} k pos/s)   "
            f"query {query_s:8.3f} s  ({args.queries / query_s / 1e3:8.1f} k/s)"
        )

    if len(results) == 2:
        gap = abs(results["fast"][2] - results["pure"][2])
        if not math.isclose(results["fast"][2], results["pure"][2], rel_tol=1e-9):
            raise SystemExit(f"implementations disagree: checksum gap {gap}")
        print(
            f"agreement ok (checksum gap {gap:.2e}); speedup "
            f"x{results['pure'][0] / results['fast'][0]:.1f} train, "
            f"x{results['pure'][1] / results['fast'][1]:.1f} query"
        )


if __name__ == "__main__":
    main()
