"""Global ranking of solutions from a pairwise win-loss tournament.

Pipeline: close the win-loss digraph under transitivity (Floyd-Warshall),
count each item's Borda score (closure out-degree), break Borda ties with
soft pairwise probabilities, convert the strict ranking to quantile scores
in [0, 1], and blend with a tree-local win rate.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .errors import MissingPair

PairProbs = Mapping[tuple[int, int], float]


def pair_prob(probs: PairProbs, i: int, j: int) -> float:
    """P(item i beats item j), derived from the canonical (low, high) record."""
    if i == j:
        raise MissingPair(f"self-pair ({i}, {j}) has no preference")
    key = (i, j) if i < j else (j, i)
    if key not in probs:
        raise MissingPair(f"no preference record for pair {key}")
    p = probs[key]
    return p if i < j else 1.0 - p


def transitive_closure(m: np.ndarray) -> np.ndarray:
    """Reachability closure of the win digraph; diagonal forced to zero."""
    c = m.astype(bool).copy()
    n = c.shape[0]
    for k in range(n):
        c |= np.outer(c[:, k], c[k, :])
    np.fill_diagonal(c, False)
    return c.astype(np.uint8)


def borda_counts(c: np.ndarray) -> np.ndarray:
    """Out-degree of each node in the closed digraph (number it defeats)."""
    return c.sum(axis=1).astype(np.int64)


def soft_rerank(counts: np.ndarray, probs: PairProbs) -> np.ndarray:
    """Strict ranks 1..n: Borda count descending, ties softened pairwise.

    Within a tied group each item is ordered by how many group members it
    beats at the 0.5 probability threshold; residual ties (exact 0.5
    probabilities or cyclic soft preferences) fall back to ascending id.
    """
    n = len(counts)
    order: list[int] = []
    for count in sorted(set(counts.tolist()), reverse=True):
        group = [i for i in range(n) if counts[i] == count]
        if len(group) > 1:
            wins = {
                i: sum(1 for j in group if j != i and pair_prob(probs, i, j) > 0.5)
                for i in group
            }
            group.sort(key=lambda i: (-wins[i], i))
        order.extend(group)
    ranks = np.empty(n, dtype=np.int64)
    for position, item in enumerate(order):
        ranks[item] = position + 1
    return ranks


def global_quantiles(ranks: np.ndarray, n: int) -> np.ndarray:
    """Quantile score 1 - (rank-1)/(n-1); a single item scores 1.0."""
    ranks = np.asarray(ranks, dtype=np.float64)
    if n == 1:
        return np.ones(1)
    return 1.0 - (ranks - 1.0) / (n - 1.0)


def local_win_rate(c: np.ndarray, children: list[int], v: int) -> float:
    """Fraction of v's children that defeat v in the closure; 0.5 if childless."""
    if not children:
        return 0.5
    return float(sum(int(c[u, v]) for u in children)) / len(children)


def combined_q(q_local, q_global, alpha: float):
    """Convex blend alpha*local + (1-alpha)*global; stays in [0, 1]."""
    return alpha * np.asarray(q_local) + (1.0 - alpha) * np.asarray(q_global)


def rank_items(m: np.ndarray, probs: PairProbs) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closure, Borda counts, and strict ranks for a win-loss matrix."""
    c = transitive_closure(m)
    counts = borda_counts(c)
    ranks = soft_rerank(counts, probs)
    return c, counts, ranks


def format_debug(m: np.ndarray, c: np.ndarray, counts: np.ndarray, ranks: np.ndarray) -> str:
    """Text dump of the ranking internals for flag-gated debugging."""
    def grid(a: np.ndarray) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in a)

    return (
        "win matrix:\n" + grid(m)
        + "\nclosure:\n" + grid(c)
        + "\nborda: " + " ".join(str(int(x)) for x in counts)
        + "\nranks: " + " ".join(str(int(x)) for x in ranks)
        + "\n"
    )
