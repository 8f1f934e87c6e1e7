"""Small corpus builders shared across test modules."""

from __future__ import annotations

import random

from mteval import EvalPair, ParallelCorpus, tokenize


def pair_of(hyp: str, *refs: str) -> EvalPair:
    return EvalPair(
        hypothesis=tokenize(hyp), references=tuple(tokenize(r) for r in refs)
    )


def corpus_of(*rows: tuple) -> ParallelCorpus:
    """Each row is (hypothesis, ref1[, ref2, ...]) as plain strings."""
    pairs = tuple(pair_of(*row) for row in rows)
    return ParallelCorpus(pairs=pairs, ref_count=len(pairs[0].references))


def random_sentence(rng: random.Random, vocab: list[str], max_len: int, min_len: int = 0) -> str:
    return " ".join(rng.choice(vocab) for _ in range(rng.randint(min_len, max_len)))


def random_corpus(
    rng: random.Random,
    vocab: list[str],
    max_pairs: int,
    max_len: int,
    min_len: int = 1,
) -> ParallelCorpus:
    rows = [
        (
            random_sentence(rng, vocab, max_len, min_len),
            random_sentence(rng, vocab, max_len, min_len),
        )
        for _ in range(rng.randint(1, max_pairs))
    ]
    return corpus_of(*rows)
