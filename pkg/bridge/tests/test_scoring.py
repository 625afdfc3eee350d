"""Batched chain-rule scoring against a stepwise forward-pass oracle."""

import pytest
import torch

from scorebridge.scoring import CheckpointScorer, select_variant


def test_variant_bare_for_empty_context():
    assert select_variant("cat", "") == "cat"


def test_variant_bare_after_whitespace():
    assert select_variant("cat", "we saw ") == "cat"


def test_variant_spaced_mid_line():
    assert select_variant("cat", "we saw a") == " cat"


def test_variant_spaced_after_punctuation():
    assert select_variant("cat", "well,") == " cat"


@pytest.fixture(scope="module")
def scorer(family):
    return CheckpointScorer(family.ckpts / "step_100")


PAIRS = [
    ("", "panther"),
    ("the small", "gazelle"),
    ("we saw a", "wombat"),
    ("near the old meadow", "lantern"),
    ("the small", "zymurgy"),
]


def stepwise_word_logprob(scorer, context_text, word):
    """Independent oracle: one forward pass per subtoken, no batching."""
    prefix = [scorer.bos_id]
    if context_text:
        prefix += scorer.tokenizer.encode(context_text, add_special_tokens=False)
    variant = select_variant(word, context_text)
    total = 0.0
    for tid in scorer.tokenizer.encode(variant, add_special_tokens=False):
        with torch.no_grad():
            logits = scorer.model(torch.tensor([prefix])).logits[0, -1]
        total += torch.log_softmax(logits.float(), dim=-1)[tid].item()
        prefix.append(tid)
    return total


def stepwise_context_logprob(scorer, context_text):
    ids = [scorer.bos_id] + scorer.tokenizer.encode(context_text, add_special_tokens=False)
    total = 0.0
    for j in range(1, len(ids)):
        with torch.no_grad():
            logits = scorer.model(torch.tensor([ids[:j]])).logits[0, -1]
        total += torch.log_softmax(logits.float(), dim=-1)[ids[j]].item()
    return total


def test_batched_scores_match_stepwise_oracle(scorer):
    got = scorer.score_batch(list(PAIRS))
    lengths = [len(scorer.encode_variant(w, c)) for c, w in PAIRS]
    # a single-subtoken word would not exercise the chain at all
    assert max(lengths) >= 2
    for (ctx, word), (lq, lqc) in zip(PAIRS, got):
        assert lq == pytest.approx(stepwise_word_logprob(scorer, ctx, word), abs=1e-4)
        want_lqc = stepwise_context_logprob(scorer, ctx) if ctx else 0.0
        assert lqc == pytest.approx(want_lqc, abs=1e-4)


def test_empty_context_chain_is_exactly_zero(scorer):
    [(_, lqc)] = scorer.score_batch([("", "panther")])
    assert lqc == 0.0


def test_scores_are_nonpositive(scorer):
    for lq, lqc in scorer.score_batch(list(PAIRS)):
        assert lq <= 0.0
        assert lqc <= 0.0


def test_unknown_word_still_encodes(scorer):
    # byte-level vocabulary: no unknown-token holes
    assert scorer.encode_variant("zymurgy", "we saw a")
