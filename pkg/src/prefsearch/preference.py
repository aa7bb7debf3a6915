"""Pairwise preference client: judge score conversion, caching, win matrix.

Each unordered solution pair is judged exactly once, in canonical order
(the lower solution_id presented as "First Answer"); the reverse direction
is always the derived complement 1 - p. This halves judge cost and makes
the win-loss matrix antisymmetric by construction.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from .errors import InvalidInput, MissingPair
from .solutions import Problem, Solution


@dataclass(frozen=True)
class JudgeScores:
    """Log-scale evidence for the judge's "Yes" and "No" verdict tokens.

    hard_decision marks records built from the text-match fallback used
    when a backend cannot return per-token scores.
    """

    score_yes: float
    score_no: float
    hard_decision: bool = False


@dataclass(frozen=True)
class PreferenceRecord:
    """Cached judged pair, stored once per unordered pair with i < j."""

    i: int
    j: int
    prob_i_over_j: float
    raw: JudgeScores

    def prob_of(self, solution_id: int) -> float:
        """P(solution_id beats the other member of the pair)."""
        if solution_id == self.i:
            return self.prob_i_over_j
        if solution_id == self.j:
            return 1.0 - self.prob_i_over_j
        raise KeyError(f"solution {solution_id} not in pair ({self.i}, {self.j})")


def prob_prefer(scores: JudgeScores) -> float:
    """Two-way softmax e^yes / (e^yes + e^no) in a stable, complement-exact form.

    Computed through the larger score so the two orientations share the
    same intermediate value; prob_prefer(a, b) + prob_prefer(b, a) == 1.0
    exactly in floating point.
    """
    y, n = scores.score_yes, scores.score_no
    if not (math.isfinite(y) and math.isfinite(n)):
        raise InvalidInput("judge scores must be finite")
    if y >= n:
        return 1.0 / (1.0 + math.exp(n - y))
    return 1.0 - 1.0 / (1.0 + math.exp(y - n))


class JudgePort(Protocol):
    """Scores whether `first` is a better answer than `second`."""

    def judge(self, problem: Problem, first: Solution, second: Solution) -> JudgeScores:
        ...


class PreferenceCache:
    """Thread-safe per-problem store of judged pairs.

    Concurrent queries for the same pair collapse into one backend call;
    later requesters wait for the in-flight result.
    """

    def __init__(self):
        self._records: dict[tuple[int, int], PreferenceRecord] = {}
        self._inflight: dict[tuple[int, int], threading.Event] = {}
        self._lock = threading.Lock()
        self.backend_calls = 0

    def query_pair(
        self, problem: Problem, a: Solution, b: Solution, judge_port: JudgePort
    ) -> PreferenceRecord:
        """The canonical record for the unordered pair {a, b}.

        The judge sees the lower solution_id as "First Answer"; use
        record.prob_of(id) for a directional probability.
        """
        if a.solution_id == b.solution_id:
            raise InvalidInput("cannot judge a solution against itself")
        first, second = (a, b) if a.solution_id < b.solution_id else (b, a)
        key = (first.solution_id, second.solution_id)

        while True:
            with self._lock:
                record = self._records.get(key)
                if record is not None:
                    return record
                event = self._inflight.get(key)
                if event is None:
                    event = threading.Event()
                    self._inflight[key] = event
                    break
            event.wait()

        try:
            raw = judge_port.judge(problem, first, second)
            record = PreferenceRecord(key[0], key[1], prob_prefer(raw), raw)
            with self._lock:
                self._records[key] = record
                self.backend_calls += 1
        finally:
            with self._lock:
                self._inflight.pop(key, None)
            event.set()
        return record

    def prob(self, i: int, j: int) -> float:
        """P(solution i beats solution j) from the cached record."""
        key = (i, j) if i < j else (j, i)
        with self._lock:
            record = self._records.get(key)
        if record is None:
            raise MissingPair(f"no cached preference for pair {key}")
        return record.prob_of(i)

    def has(self, i: int, j: int) -> bool:
        key = (i, j) if i < j else (j, i)
        with self._lock:
            return key in self._records

    def records(self) -> list[PreferenceRecord]:
        with self._lock:
            return [self._records[k] for k in sorted(self._records)]

    def to_payload(self) -> list[dict]:
        return [
            {
                "i": r.i,
                "j": r.j,
                "prob": r.prob_i_over_j,
                "raw": {
                    "score_yes": r.raw.score_yes,
                    "score_no": r.raw.score_no,
                    "hard_decision": r.raw.hard_decision,
                },
            }
            for r in self.records()
        ]

    @classmethod
    def from_payload(cls, payload: list[dict]) -> "PreferenceCache":
        cache = cls()
        for row in payload:
            raw = JudgeScores(**row["raw"])
            cache._records[(row["i"], row["j"])] = PreferenceRecord(
                row["i"], row["j"], row["prob"], raw
            )
        return cache


def build_win_matrix(pair_probs, n: int) -> np.ndarray:
    """Binary antisymmetric matrix: entry [i, j] = 1 iff i beats j.

    The canonical (lower-index) record decides each pair at the >= 0.5
    threshold, so an exact 0.5 resolves toward the lower index and
    m[i][j] + m[j][i] == 1 always holds off the diagonal.
    """
    m = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in pair_probs:
                raise MissingPair(f"no preference for pair ({i}, {j})")
            if pair_probs[(i, j)] >= 0.5:
                m[i, j] = 1
            else:
                m[j, i] = 1
    return m
