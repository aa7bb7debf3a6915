"""Answer-label extraction and correctness grading.

A graded answer passes if its extracted label matches the ground truth
either literally (after whitespace trim), numerically (both parse as
numbers whose difference is below 1e-6), or via an optional pluggable
equivalence hook for symbolic comparison.
"""

from __future__ import annotations

import shlex
import subprocess
from dataclasses import dataclass
from typing import Callable

NUMERIC_TOLERANCE = 1e-6

EquivalenceHook = Callable[[str, str], bool]


@dataclass(frozen=True)
class GradedSample:
    """One scored solution: its label, search reward, and correctness."""

    solution_id: int
    extracted_label: str | None
    reward: float
    correct: bool


def extract_label(text: str) -> str | None:
    r"""Return the contents of the last balanced ``\boxed{...}`` group.

    Brace matching is nesting-aware, so ``\boxed{\frac{1}{2}}`` yields
    ``\frac{1}{2}``. Unbalanced or absent boxes yield None, never an error.
    """
    if not text:
        return None
    marker = "\\boxed"
    starts = []
    pos = text.find(marker)
    while pos != -1:
        starts.append(pos)
        pos = text.find(marker, pos + 1)
    for start in reversed(starts):
        i = start + len(marker)
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text) or text[i] != "{":
            continue
        depth = 1
        i += 1
        begin = i
        while i < len(text):
            ch = text[i]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    return text[begin:i].strip()
            i += 1
        # unbalanced; try an earlier box
    return None


def parse_number(s: str) -> float | None:
    """Parse integers, decimals, scientific notation, and simple a/b fractions."""
    s = s.strip()
    if not s:
        return None
    try:
        return float(s)
    except ValueError:
        pass
    if s.count("/") == 1:
        num, _, den = s.partition("/")
        try:
            numerator = float(num.strip())
            denominator = float(den.strip())
        except ValueError:
            return None
        if denominator == 0:
            return None
        return numerator / denominator
    return None


def grade(
    label: str | None,
    ground_truth: str,
    equivalence_hook: EquivalenceHook | None = None,
) -> bool:
    """Score a label against the ground truth.

    Extraction failures (label None) grade as incorrect. The optional
    hook is consulted last and may implement symbolic equivalence.
    """
    if not ground_truth or not ground_truth.strip():
        raise ValueError("ground_truth must be non-empty")
    if label is None:
        return False
    a, b = label.strip(), ground_truth.strip()
    if a == b:
        return True
    fa, fb = parse_number(a), parse_number(b)
    if fa is not None and fb is not None and abs(fa - fb) < NUMERIC_TOLERANCE:
        return True
    if equivalence_hook is not None:
        return bool(equivalence_hook(a, b))
    return False


def command_equivalence_hook(command: str, timeout: float = 10.0) -> EquivalenceHook:
    """Wrap an external command as an equivalence hook.

    The command is invoked as ``<command> <label> <truth>``; exit status 0
    means equivalent. Any failure (nonzero exit, timeout, missing binary)
    counts as not equivalent.
    """
    argv_base = shlex.split(command)

    def hook(label: str, truth: str) -> bool:
        try:
            proc = subprocess.run(
                argv_base + [label, truth],
                capture_output=True,
                timeout=timeout,
                check=False,
            )
        except (OSError, subprocess.TimeoutExpired):
            return False
        return proc.returncode == 0

    return hook
