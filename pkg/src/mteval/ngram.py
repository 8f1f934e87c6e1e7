"""N-gram extraction, reference-clipped counting, and modified precision.

Shared machinery for the n-gram based metrics. All functions are pure
and safe for per-sentence data parallelism.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .corpus import EvalPair
from .errors import OrderMismatchError

NGram = tuple[str, ...]


@dataclass
class NGramCounts:
    order: int
    counts: Counter = field(default_factory=Counter)


def extract_ngrams(tokens: Sequence[str], n: int) -> NGramCounts:
    """Count every contiguous window of length ``n`` with multiplicity."""
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    counts = Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return NGramCounts(order=n, counts=counts)


def max_counts(counts_list: Sequence[NGramCounts]) -> Counter:
    """Elementwise maximum over several count tables of the same order."""
    merged: Counter = Counter()
    for nc in counts_list:
        for gram, count in nc.counts.items():
            if count > merged[gram]:
                merged[gram] = count
    return merged


def clipped_match_count(
    hyp_counts: NGramCounts, ref_counts_list: Sequence[NGramCounts]
) -> int:
    """Sum of hypothesis n-gram counts clipped at the best reference count.

    Each hypothesis n-gram contributes min(hypothesis count, max count
    over the references), which prevents credit inflation by repetition.
    """
    for rc in ref_counts_list:
        if rc.order != hyp_counts.order:
            raise OrderMismatchError(
                f"cannot clip order-{hyp_counts.order} counts against order-{rc.order} counts"
            )
    best = max_counts(ref_counts_list)
    return sum(min(count, best[gram]) for gram, count in hyp_counts.counts.items())


def modified_precision(pair: EvalPair, n: int) -> float:
    """Clipped matches divided by total hypothesis n-grams of order ``n``.

    Zero when the hypothesis has no n-grams of that order.
    """
    hyp_counts = extract_ngrams(pair.hypothesis, n)
    total = sum(hyp_counts.counts.values())
    if total == 0:
        return 0.0
    refs = [extract_ngrams(ref, n) for ref in pair.references]
    return clipped_match_count(hyp_counts, refs) / total
