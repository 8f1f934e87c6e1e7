#!/usr/bin/env python3
"""Reproduce the metric correlation study from the bundled score tables.

Loads the two per-direction score tables shipped under tests/data,
merges them, and prints Pearson and Spearman matrices plus the lambda
association of EBLEU with every other metric. The EBLEU pairings are
compared against the published coefficients with their deltas.

Run from the repository root:

    python scripts/run_correlation_study.py
"""

from pathlib import Path

from mteval import (
    correlation_matrix,
    discretize,
    goodman_kruskal_lambda,
    pearson,
    spearman,
)
from mteval.cli import read_score_table
from mteval.stats import ContingencyTable, ScoreTable

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

PUBLISHED_PEARSON_PL_EN = {
    "BLEU": 0.9732,
    "NIST": 0.9675,
    "TER": -0.9746,
    "METEOR": 0.8981,
    "RIBES": 0.7570,
}
PUBLISHED_PEARSON_MERGED = {
    "BLEU": 0.9657,
    "NIST": 0.9762,
    "TER": -0.9666,
    "METEOR": 0.9615,
    "RIBES": 0.8105,
}
PUBLISHED_SPEARMAN_MERGED = {
    "BLEU": 0.950,
    "NIST": 0.943,
    "TER": -0.954,
    "METEOR": 0.895,
    "RIBES": 0.655,
}


def print_matrix(title: str, table: ScoreTable, kind: str) -> None:
    print(f"\n{title}")
    matrix = correlation_matrix(table, kind)
    names = table.metric_names
    print("\t" + "\t".join(names))
    for name, row in zip(names, matrix):
        print(name + "\t" + "\t".join(f"{cell.coefficient:+.4f}" for cell in row))


def compare(header: str, got: dict[str, float], published: dict[str, float]) -> None:
    print(f"\n{header}")
    print(f"{'metric':8s} {'computed':>9s} {'published':>9s} {'delta':>7s}")
    for metric, reference in published.items():
        value = got[metric]
        print(f"{metric:8s} {value:+9.4f} {reference:+9.4f} {abs(value - reference):7.4f}")


def main() -> None:
    pl_en = read_score_table(DATA / "pl_en_scores.tsv")
    en_pl = read_score_table(DATA / "en_pl_scores.tsv")
    merged = ScoreTable(
        metric_names=pl_en.metric_names, rows=pl_en.rows + en_pl.rows
    )

    print(f"loaded {len(pl_en.rows)} + {len(en_pl.rows)} runs, "
          f"{len(merged.metric_names)} metrics")

    print_matrix("Pearson, Polish to English runs", pl_en, "pearson")
    ebleu = pl_en.column("EBLEU")
    compare(
        "EBLEU pairings vs published per-direction coefficients",
        {m: pearson(ebleu, pl_en.column(m)).coefficient for m in PUBLISHED_PEARSON_PL_EN},
        PUBLISHED_PEARSON_PL_EN,
    )

    print_matrix("Pearson, both directions merged", merged, "pearson")
    ebleu = merged.column("EBLEU")
    compare(
        "EBLEU pairings vs published merged coefficients\n"
        "(the published RIBES cell is not derivable from these tables)",
        {m: pearson(ebleu, merged.column(m)).coefficient for m in PUBLISHED_PEARSON_MERGED},
        PUBLISHED_PEARSON_MERGED,
    )

    print_matrix("Spearman, both directions merged", merged, "spearman")
    spearman_got = {}
    print("\ntwo-tailed significance of the EBLEU pairings")
    for metric in PUBLISHED_SPEARMAN_MERGED:
        result = spearman(ebleu, merged.column(metric))
        spearman_got[metric] = result.coefficient
        print(f"  EBLEU x {metric:8s} p = {result.two_tailed_p:.2e} (n = {result.n})")
    compare(
        "EBLEU pairings vs published merged rank coefficients",
        spearman_got,
        PUBLISHED_SPEARMAN_MERGED,
    )

    bins = 4
    print(f"\nlambda association, EBLEU as the predicted variable ({bins} bins)")
    ebleu_cats = discretize(ebleu, bins)
    for metric in ("BLEU", "NIST", "TER", "METEOR", "RIBES"):
        cats = discretize(merged.column(metric), bins)
        lam, var = goodman_kruskal_lambda(
            ContingencyTable.from_categories(cats, ebleu_cats, bins)
        )
        print(f"  lambda(EBLEU | {metric:8s}) = {lam:.3f} (var {var:.4f})")


if __name__ == "__main__":
    main()
