"""Evaluation metrics: pass@k, reward-ranked rm@k, and plurality major@k.

All three operate on per-problem sample lists; "top k" always means the k
samples with the highest reward, ties broken toward the lower solution_id.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .grading import GradedSample


def pass_at_k(n: int, c: int, k: int) -> float:
    """Unbiased estimator 1 - C(n-c, k)/C(n, k) of drawing >=1 correct in k.

    Uses the incremental product form, so large n never overflows.
    """
    if not 0 <= c <= n:
        raise ValueError("need 0 <= c <= n")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if c == 0:
        return 0.0
    if n - c < k:
        return 1.0
    product = 1.0
    for i in range(k):
        product *= (n - c - i) / (n - i)
    return 1.0 - product


def top_k_by_reward(samples: list[GradedSample], k: int) -> list[GradedSample]:
    """The k highest-reward samples; reward ties prefer lower solution_id."""
    if k > len(samples):
        raise ValueError("k exceeds sample count")
    ordered = sorted(samples, key=lambda s: (-s.reward, s.solution_id))
    return ordered[:k]


def rm_at_k(samples: list[GradedSample], k: int) -> bool:
    """True iff any of the top-k samples by reward is correct."""
    return any(s.correct for s in top_k_by_reward(samples, k))


def major_at_k(samples: list[GradedSample], k: int) -> bool:
    """Plurality vote over the top-k samples' extracted labels.

    Samples without a label form no group. Group-size ties go to the
    group with the higher maximum reward, then to the lower solution_id.
    Returns whether the winning label grades correct.
    """
    top = top_k_by_reward(samples, k)
    groups: dict[str, list[GradedSample]] = {}
    for s in top:
        if s.extracted_label is None:
            continue
        groups.setdefault(s.extracted_label, []).append(s)
    if not groups:
        return False
    ranked = sorted(
        groups.values(),
        key=lambda g: (
            -len(g),
            -max(s.reward for s in g),
            min(s.solution_id for s in g),
        ),
    )
    return ranked[0][0].correct


@dataclass
class ProblemMetrics:
    problem_id: str
    n: int
    c: int
    metrics: dict[str, float]
    warnings: list[str] = field(default_factory=list)


@dataclass
class MetricReport:
    per_problem: list[ProblemMetrics]
    aggregate: dict[str, float]


def build_report(
    samples_by_problem: dict[str, list[GradedSample]], k_list: list[int]
) -> MetricReport:
    """Compute pass@k / rm@k / major@k per problem and their means.

    A k larger than a problem's sample count is skipped for that problem
    with a warning; the aggregate for that metric averages the problems
    that support it.
    """
    per_problem = []
    for pid, samples in samples_by_problem.items():
        n = len(samples)
        c = sum(1 for s in samples if s.correct)
        metrics: dict[str, float] = {}
        warnings = []
        for k in k_list:
            if k > n:
                warnings.append(f"k={k} exceeds n={n}; metric omitted")
                continue
            metrics[f"pass@{k}"] = pass_at_k(n, c, k)
            metrics[f"rm@{k}"] = float(rm_at_k(samples, k))
            metrics[f"major@{k}"] = float(major_at_k(samples, k))
        per_problem.append(ProblemMetrics(pid, n, c, metrics, warnings))

    aggregate: dict[str, float] = {}
    keys = sorted({key for pm in per_problem for key in pm.metrics})
    for key in keys:
        values = [pm.metrics[key] for pm in per_problem if key in pm.metrics]
        if values:
            aggregate[key] = sum(values) / len(values)
    return MetricReport(per_problem, aggregate)


def _metric_columns(report: MetricReport) -> list[str]:
    return sorted(
        {key for pm in report.per_problem for key in pm.metrics},
        key=lambda key: (key.split("@")[0], int(key.split("@")[1])),
    )


def report_to_csv(report: MetricReport) -> str:
    columns = _metric_columns(report)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["problem_id", "n", "c", *columns])
    for pm in report.per_problem:
        writer.writerow(
            [pm.problem_id, pm.n, pm.c]
            + [f"{pm.metrics[c]:.6f}" if c in pm.metrics else "" for c in columns]
        )
    writer.writerow(
        ["ALL", "", ""]
        + [f"{report.aggregate[c]:.6f}" if c in report.aggregate else "" for c in columns]
    )
    return buf.getvalue()


def report_to_jsonl(report: MetricReport) -> str:
    lines = []
    for pm in report.per_problem:
        lines.append(
            json.dumps(
                {"id": pm.problem_id, "n": pm.n, "c": pm.c, "metrics": pm.metrics},
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def report_to_table(report: MetricReport) -> str:
    columns = _metric_columns(report)
    header = ["problem", "n", "c", *columns]
    rows = [header]
    for pm in report.per_problem:
        rows.append(
            [pm.problem_id, str(pm.n), str(pm.c)]
            + [f"{pm.metrics[c]:.4f}" if c in pm.metrics else "-" for c in columns]
        )
    rows.append(
        ["ALL", "", ""]
        + [f"{report.aggregate[c]:.4f}" if c in report.aggregate else "-" for c in columns]
    )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    out = []
    for idx, row in enumerate(rows):
        out.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def write_report(report: MetricReport, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.csv").write_text(report_to_csv(report), encoding="utf-8")
    (out / "report.jsonl").write_text(report_to_jsonl(report), encoding="utf-8")
    (out / "report.txt").write_text(report_to_table(report), encoding="utf-8")
