"""Chain-rule scoring of (word, context) pairs against one saved model."""

from __future__ import annotations

import logging

import torch
from transformers import AutoModelForCausalLM, AutoTokenizer

from .errors import BridgeError

log = logging.getLogger(__name__)


def select_variant(word: str, context_text: str) -> str:
    """Pick the token-level form of a word for a given context.

    Subword vocabularies encode "cat" and " cat" differently.  When the
    context ends mid-line the word continues it and needs the leading space;
    an empty context or one ending in whitespace takes the bare form.
    """
    if context_text and not context_text[-1].isspace():
        return " " + word
    return word


class CheckpointScorer:
    """Scores text pairs with one causal LM checkpoint.

    ``log_q`` for a pair is the sum of the model's log-probabilities of the
    word's subtokens, each conditioned on the context plus the subtokens
    before it.  ``log_q_c`` is the same chain over the context's own tokens,
    so an empty context scores exactly zero.  Sequences start from the
    model's BOS token so the first real token is scored too.
    """

    def __init__(self, path, device: str = "cpu"):
        self.tokenizer = AutoTokenizer.from_pretrained(path)
        self.model = AutoModelForCausalLM.from_pretrained(path).to(device)
        self.model.eval()
        bos = self.tokenizer.bos_token_id
        if bos is None:
            bos = self.tokenizer.eos_token_id
        if bos is None:
            raise BridgeError(f"{path}: tokenizer has neither BOS nor EOS")
        self.bos_id = int(bos)
        self.device = device

    def _encode(self, text: str) -> list[int]:
        if not text:
            return []
        return self.tokenizer.encode(text, add_special_tokens=False)

    def encode_variant(self, word: str, context_text: str) -> list[int]:
        ids = self._encode(select_variant(word, context_text))
        if not ids:
            raise BridgeError(f"word {word!r} encodes to no tokens")
        return ids

    @torch.no_grad()
    def score_batch(self, pairs: list[tuple[str, str]]) -> list[tuple[float, float]]:
        """Return (log_q, log_q_c) for each (context_text, word) pair."""
        rows = []
        for context_text, word in pairs:
            ctx_ids = [self.bos_id] + self._encode(context_text)
            word_ids = self.encode_variant(word, context_text)
            rows.append((ctx_ids, word_ids))

        lengths = [len(c) + len(w) for c, w in rows]
        width = max(lengths)
        # right padding: real tokens keep positions 0..n-1, causal attention
        # never looks forward, so the pad value itself is inert
        input_ids = torch.full((len(rows), width), self.bos_id, dtype=torch.long)
        mask = torch.zeros((len(rows), width), dtype=torch.long)
        for i, (ctx_ids, word_ids) in enumerate(rows):
            seq = ctx_ids + word_ids
            input_ids[i, : len(seq)] = torch.tensor(seq, dtype=torch.long)
            mask[i, : len(seq)] = 1

        logits = self.model(
            input_ids.to(self.device), attention_mask=mask.to(self.device)
        ).logits
        logp = torch.log_softmax(logits.float(), dim=-1).cpu()

        out = []
        for i, (ctx_ids, word_ids) in enumerate(rows):
            log_q_c = 0.0
            for j in range(1, len(ctx_ids)):
                log_q_c += logp[i, j - 1, ctx_ids[j]].item()
            log_q = 0.0
            offset = len(ctx_ids)
            for k, token in enumerate(word_ids):
                log_q += logp[i, offset + k - 1, token].item()
            # log_softmax can round a maximal entry to a hair above zero;
            # the output contract is absolute, so clamp
            out.append((min(log_q, 0.0), min(log_q_c, 0.0)))
        return out
