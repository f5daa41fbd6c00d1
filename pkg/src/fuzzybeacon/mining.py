"""Offline rule mining: fuzzy C-means over status records, projected to rules.

A dataset row is ``(speed, sender_gain, receiver_gain, idle_time)`` in raw
universe units. Clustering finds soft prototypes; each prototype then maps to
the rule whose terms have maximal membership at the prototype's coordinates.
The shipped rule base is authoritative -- this tool proposes candidates for
review, it does not feed the simulator directly.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .fis import FisDefinition, Rule


class EmptyDataset(ValueError):
    """Raised for datasets with no rows or fewer rows than clusters."""


@dataclass(frozen=True)
class FcmResult:
    """Final clustering state of one seeded run."""

    centers: np.ndarray          # (k, d)
    memberships: np.ndarray      # (n, k), rows sum to 1
    objective: float
    iterations: int
    objective_history: tuple[float, ...]


def _memberships(dist_sq: np.ndarray, m: float) -> np.ndarray:
    """Membership matrix from squared point-center distances.

    Points that coincide with one or more centers get their membership split
    over the zero-distance centers (1 for a single match), the standard
    degenerate-cluster convention.
    """
    n, k = dist_sq.shape
    zero_rows = dist_sq.min(axis=1) == 0.0
    power = -1.0 / (m - 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.where(dist_sq > 0.0, dist_sq, np.inf) ** power
        u = weights / weights.sum(axis=1, keepdims=True)
    if zero_rows.any():
        hits = dist_sq[zero_rows] == 0.0
        u[zero_rows] = hits / hits.sum(axis=1, keepdims=True)
    return u


def fcm_cluster(
    data: Sequence[Sequence[float]] | np.ndarray,
    k: int,
    m: float = 2.0,
    tol: float = 1e-6,
    max_iter: int = 300,
    seed: int = 0,
) -> FcmResult:
    """Alternating-optimization fuzzy C-means, deterministic under ``seed``.

    Iterates membership updates (exponent ``2/(m-1)``) and weighted-mean
    center updates until the largest center movement drops below ``tol`` or
    ``max_iter`` is reached.
    """
    X = np.asarray(data, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyDataset("dataset must be a non-empty 2-D array of rows")
    if not np.isfinite(X).all():
        raise ValueError("dataset contains non-finite values")
    if k < 1:
        raise ValueError("k must be at least 1")
    if X.shape[0] < k:
        raise EmptyDataset(f"need at least k={k} rows, got {X.shape[0]}")
    if m <= 1.0:
        raise ValueError("fuzzifier m must exceed 1")
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    rng = random.Random(seed)
    centers = X[rng.sample(range(X.shape[0]), k)].copy()

    history: list[float] = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        dist_sq = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        u = _memberships(dist_sq, m)
        um = u ** m
        new_centers = (um.T @ X) / um.sum(axis=0)[:, None]
        new_dist_sq = ((X[:, None, :] - new_centers[None, :, :]) ** 2).sum(axis=2)
        history.append(float((um * new_dist_sq).sum()))
        movement = float(np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max())
        centers = new_centers
        if movement < tol:
            break

    dist_sq = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    u = _memberships(dist_sq, m)
    return FcmResult(
        centers=centers,
        memberships=u,
        objective=history[-1],
        iterations=iterations,
        objective_history=tuple(history),
    )


def extract_rules(result: FcmResult, fis: FisDefinition) -> list[Rule]:
    """Project cluster centers onto the rule vocabulary.

    Each center maps to the antecedent/consequent terms with maximal
    membership at its coordinates (ties toward the lower term). Centers with
    identical antecedents merge; the merged consequent is the majority vote,
    ties again toward the lower term. The output order is canonical (sorted
    by antecedent term indices), so it is invariant under center permutation.
    """
    dims = len(fis.inputs) + 1
    if result.centers.shape[1] != dims:
        raise ValueError(
            f"centers have {result.centers.shape[1]} coordinates, expected {dims} "
            f"({len(fis.inputs)} inputs + 1 output)"
        )
    votes: dict[tuple[str, ...], dict[str, int]] = {}
    for center in result.centers:
        antecedent = tuple(
            var.argmax_label(var.clamp(float(x)), prefer_high=False)
            for var, x in zip(fis.inputs, center[:-1])
        )
        consequent = fis.output.argmax_label(fis.output.clamp(float(center[-1])),
                                             prefer_high=False)
        votes.setdefault(antecedent, {})
        votes[antecedent][consequent] = votes[antecedent].get(consequent, 0) + 1

    rules = []
    for antecedent, counts in votes.items():
        best = max(counts.items(),
                   key=lambda item: (item[1], -fis.output.index_of(item[0])))
        rules.append(Rule(antecedent, best[0]))

    def sort_key(rule: Rule):
        return tuple(var.index_of(lbl) for var, lbl in zip(fis.inputs, rule.antecedent))

    return sorted(rules, key=sort_key)


DATASET_HEADER = ("speed", "sender_gain", "receiver_gain", "idle_time")


def load_dataset(path: str | Path) -> np.ndarray:
    """Load a comma-separated (speed, sender_gain, receiver_gain, idle_time) file."""
    p = Path(path)
    rows = []
    with p.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataset(f"{p}: file is empty") from None
        if len(header) != 4:
            raise ValueError(f"{p}: expected 4 columns, found {len(header)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ValueError(f"{p}:{lineno}: expected 4 values, found {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise ValueError(f"{p}:{lineno}: non-numeric value in {row}") from None
    if not rows:
        raise EmptyDataset(f"{p}: no data rows")
    data = np.asarray(rows, dtype=float)
    if not np.isfinite(data).all():
        raise ValueError(f"{p}: dataset contains non-finite values")
    return data


def save_dataset(data: np.ndarray, path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_HEADER)
        for row in np.asarray(data, dtype=float):
            writer.writerow([repr(float(v)) for v in row])
