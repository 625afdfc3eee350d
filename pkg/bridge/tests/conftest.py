"""Session fixtures: a tiny model family to score against.

Trains a byte-level BPE tokenizer on a synthetic corpus, then saves two
randomly initialized checkpoints under step-numbered directories plus a
separate reference model.  Random weights are fine here; the tests check
scoring arithmetic and file contracts, not language quality.
"""

import json
import types

import pytest
import torch
from tokenizers import ByteLevelBPETokenizer
from transformers import GPT2Config, GPT2LMHeadModel, PreTrainedTokenizerFast

from scorebridge.schema import context_id

BOS = "<|endoftext|>"

NOUNS = ["panther", "gazelle", "wombat", "lantern", "meadow", "thicket"]
VERBS = ["watches", "crosses", "carries", "follows"]

CONTEXT_TOKENS = [
    [],
    ["the", "small"],
    ["we", "saw", "a"],
    ["near", "the", "old", "meadow"],
]

# last word never appears in the corpus; byte-level BPE must still encode it
WORDS = ["panther", "gazelle", "wombat", "lantern", "zymurgy"]


def corpus_lines():
    lines = []
    for i, noun in enumerate(NOUNS):
        for j, verb in enumerate(VERBS):
            other = NOUNS[(i + j + 1) % len(NOUNS)]
            lines.append(f"the {noun} {verb} the {other}")
            lines.append(f"a {noun} near the {other} {verb} us")
    return lines


def _save_model(tokenizer, seed, out_dir):
    torch.manual_seed(seed)
    config = GPT2Config(
        vocab_size=len(tokenizer),
        n_positions=64,
        n_embd=32,
        n_layer=2,
        n_head=2,
        bos_token_id=tokenizer.bos_token_id,
        eos_token_id=tokenizer.eos_token_id,
    )
    model = GPT2LMHeadModel(config)
    model.eval()
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)


@pytest.fixture(scope="session")
def family(tmp_path_factory):
    root = tmp_path_factory.mktemp("family")
    corpus = root / "corpus.txt"
    corpus.write_text("\n".join(corpus_lines()) + "\n", encoding="utf-8")

    trainer = ByteLevelBPETokenizer()
    trainer.train([str(corpus)], vocab_size=300, min_frequency=1, special_tokens=[BOS])
    tok_file = root / "tokenizer.json"
    trainer.save(str(tok_file))
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_file=str(tok_file), bos_token=BOS, eos_token=BOS
    )

    ckpts = root / "ckpts"
    _save_model(tokenizer, 11, ckpts / "step_100")
    _save_model(tokenizer, 29, ckpts / "step_200")
    (ckpts / "logs").mkdir()  # non-checkpoint clutter, discovery must skip it
    reference = root / "reference"
    _save_model(tokenizer, 47, reference)

    contexts = root / "contexts.jsonl"
    with open(contexts, "w", encoding="utf-8") as handle:
        for tokens in CONTEXT_TOKENS:
            row = {"context_id": context_id(tokens), "tokens": tokens}
            handle.write(json.dumps(row) + "\n")
    words = root / "words.txt"
    words.write_text("\n".join(WORDS) + "\n", encoding="utf-8")

    return types.SimpleNamespace(
        root=root,
        ckpts=ckpts,
        reference=reference,
        contexts=contexts,
        words=words,
        context_tokens=CONTEXT_TOKENS,
        word_list=WORDS,
        tokenizer=tokenizer,
    )
