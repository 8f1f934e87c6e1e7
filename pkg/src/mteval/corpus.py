"""Corpus loading, tokenization, and derived lexical resources.

Hypothesis and reference files are UTF-8 plain text, one sentence per
line (LF or CRLF). A synonym lexicon file holds one synonym set per
line, comma separated; blank lines and lines starting with ``#`` are
skipped. All loaded objects are immutable and safe to share between
concurrent scorers.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPercentError, LineCountMismatchError, MalformedLineError

TokenSeq = tuple[str, ...]
"""An ordered sequence of normalized tokens for one sentence."""


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = False
    split_punctuation: bool = False


def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(raw_line: str, cfg: TokenizerConfig = TokenizerConfig()) -> TokenSeq:
    """Split a line of text into tokens.

    Tokens are whitespace delimited. With ``split_punctuation`` every
    punctuation character becomes a token of its own; with ``lowercase``
    the line is case-folded first. Deterministic, and idempotent on its
    own space-joined output.
    """
    if cfg.lowercase:
        raw_line = raw_line.casefold()
    chunks = raw_line.split()
    if not cfg.split_punctuation:
        return tuple(chunks)
    tokens: list[str] = []
    for chunk in chunks:
        run: list[str] = []
        for ch in chunk:
            if _is_punctuation(ch):
                if run:
                    tokens.append("".join(run))
                    run = []
                tokens.append(ch)
            else:
                run.append(ch)
        if run:
            tokens.append("".join(run))
    return tuple(tokens)


@dataclass(frozen=True)
class EvalPair:
    """One hypothesis sentence with its aligned reference sentences."""

    hypothesis: TokenSeq
    references: tuple[TokenSeq, ...]

    def __post_init__(self) -> None:
        if not self.references:
            raise ValueError("an evaluation pair needs at least one reference")


@dataclass(frozen=True)
class ParallelCorpus:
    """Line-aligned hypothesis/reference pairs with a uniform reference count."""

    pairs: tuple[EvalPair, ...]
    ref_count: int

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def all_references(self) -> list[TokenSeq]:
        return [ref for pair in self.pairs for ref in pair.references]

    def hypothesis_token_count(self) -> int:
        return sum(len(pair.hypothesis) for pair in self.pairs)

    def reference_token_count(self) -> int:
        return sum(len(ref) for ref in self.all_references())


def _read_lines(path: str | Path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def load_parallel_corpus(
    hyp_path: str | Path,
    ref_paths: Sequence[str | Path],
    cfg: TokenizerConfig = TokenizerConfig(),
) -> ParallelCorpus:
    """Build a corpus from one hypothesis file and one or more reference files.

    Line i of every reference file is paired with line i of the
    hypothesis file. Raises :class:`LineCountMismatchError` when any file
    disagrees on line count; I/O and decoding errors propagate.
    """
    if not ref_paths:
        raise ValueError("at least one reference file is required")
    hyp_lines = _read_lines(hyp_path)
    ref_lines = [_read_lines(p) for p in ref_paths]
    for path, lines in zip(ref_paths, ref_lines):
        if len(lines) != len(hyp_lines):
            raise LineCountMismatchError(
                f"{path}: {len(lines)} lines, expected {len(hyp_lines)} (from {hyp_path})"
            )
    pairs = tuple(
        EvalPair(
            hypothesis=tokenize(line, cfg),
            references=tuple(tokenize(lines[i], cfg) for lines in ref_lines),
        )
        for i, line in enumerate(hyp_lines)
    )
    return ParallelCorpus(pairs=pairs, ref_count=len(ref_paths))


@dataclass(frozen=True)
class SynonymLexicon:
    """Word to synonym-set mapping, symmetric and irreflexive."""

    entries: Mapping[str, frozenset[str]]

    def synonyms(self, word: str) -> frozenset[str]:
        return self.entries.get(word, frozenset())

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def empty(cls) -> "SynonymLexicon":
        return cls(entries={})


def load_synonym_lexicon(
    path: str | Path, cfg: TokenizerConfig = TokenizerConfig()
) -> SynonymLexicon:
    """Load a synonym lexicon, applying the symmetric closure per line.

    Every word on a line becomes a synonym of every other word on that
    line; sets merge per headword across lines, with no transitive
    closure between lines. Fields pass through the same tokenizer
    normalization as corpus text. A non-blank, non-comment line with
    fewer than two words, or a field that does not normalize to exactly
    one word, raises :class:`MalformedLineError`.
    """
    entries: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words: list[str] = []
            for field in line.split(","):
                tokens = tokenize(field, cfg)
                if len(tokens) != 1:
                    raise MalformedLineError(
                        f"{path}:{lineno}: field {field.strip()!r} is not a single word"
                    )
                words.append(tokens[0])
            if len(set(words)) < 2:
                raise MalformedLineError(
                    f"{path}:{lineno}: a synonym set needs at least two distinct words"
                )
            for word in words:
                group = entries.setdefault(word, set())
                group.update(w for w in words if w != word)
    return SynonymLexicon(entries={w: frozenset(s) for w, s in entries.items()})


@dataclass(frozen=True)
class RareWordSet:
    """The lowest-frequency tail of the distinct reference vocabulary."""

    words: frozenset[str]
    source_vocab_size: int
    percent: float

    def __contains__(self, word: str) -> bool:
        return word in self.words

    @classmethod
    def empty(cls) -> "RareWordSet":
        return cls(words=frozenset(), source_vocab_size=0, percent=1.0)


def build_rare_word_set(references: Iterable[TokenSeq], percent: float) -> RareWordSet:
    """Select the rarest ``percent`` of the distinct reference vocabulary.

    Distinct words are ordered by frequency descending with ties broken
    lexicographically ascending; the final ``ceil(percent * vocab)``
    entries of that ordering form the set.
    """
    if not 0.0 < percent <= 1.0:
        raise InvalidPercentError(f"percent must be in (0, 1], got {percent}")
    freq: Counter[str] = Counter()
    for ref in references:
        freq.update(ref)
    vocab = sorted(freq, key=lambda w: (-freq[w], w))
    take = math.ceil(percent * len(vocab))
    tail = vocab[len(vocab) - take :]
    return RareWordSet(
        words=frozenset(tail), source_vocab_size=len(vocab), percent=percent
    )
