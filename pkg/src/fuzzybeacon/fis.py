"""Mamdani fuzzy inference over a declarative rule base.

A :class:`FisDefinition` bundles input/output linguistic variables and
IF-THEN rules. Inference is min/max Mamdani with centroid defuzzification:
per-rule activation is the min of the antecedent memberships, each rule clips
its consequent term at the activation level, the clipped curves aggregate by
pointwise max, and the crisp output is the centroid of the aggregate computed
by a midpoint-rule sum over the output universe.

Everything here is pure and stateless after construction: identical inputs
produce bit-identical outputs, and one definition can back any number of
concurrent simulations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .membership import MembershipFunction


class NoRuleFired(Exception):
    """All rule activations are zero; the aggregate curve has no mass."""


class GateVerdict(enum.Enum):
    TRANSMIT = "transmit"
    DEFER = "defer"


@dataclass(frozen=True, slots=True)
class Term:
    label: str
    mf: MembershipFunction


@dataclass(frozen=True)
class LinguisticVariable:
    """A named variable over a closed universe with an ordered term set."""

    name: str
    unit: str
    lo: float
    hi: float
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"variable {self.name!r}: universe requires lo < hi")
        if not self.terms:
            raise ValueError(f"variable {self.name!r}: needs at least one term")
        labels = [t.label for t in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"variable {self.name!r}: duplicate term labels {labels}")
        for t in self.terms:
            slo, shi = t.mf.support_bounds()
            if slo < self.lo - 1e-12 or (shi != np.inf and shi > self.hi + 1e-12):
                raise ValueError(
                    f"variable {self.name!r}: term {t.label!r} support "
                    f"[{slo}, {shi}] exceeds universe [{self.lo}, {self.hi}]"
                )

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def labels(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.terms)

    def index_of(self, label: str) -> int:
        for i, t in enumerate(self.terms):
            if t.label == label:
                return i
        raise KeyError(f"variable {self.name!r} has no term {label!r}")

    def memberships(self, x: float) -> tuple[float, ...]:
        return tuple(t.mf.evaluate(x) for t in self.terms)

    def argmax_label(self, x: float, *, prefer_high: bool = True) -> str:
        """Label of the term with maximal membership at ``x``.

        Ties break toward the later (higher-ranked) term when ``prefer_high``,
        toward the earlier term otherwise.
        """
        degrees = self.memberships(x)
        best = 0
        for i in range(1, len(degrees)):
            if degrees[i] > degrees[best] or (prefer_high and degrees[i] == degrees[best]):
                best = i
        return self.terms[best].label

    def covers_universe(self) -> bool:
        """True when every universe point has positive membership in some term.

        Membership curves are piecewise linear, so it suffices to probe the
        union of term breakpoints plus the midpoints between consecutive
        breakpoints: any uncovered region would contain one of those points.
        """
        points = {self.lo, self.hi}
        for t in self.terms:
            for b in t.mf.breakpoints():
                if self.lo <= b <= self.hi:
                    points.add(b)
        ordered = sorted(points)
        probes = list(ordered)
        probes.extend((p + q) / 2.0 for p, q in zip(ordered, ordered[1:]))
        return all(any(t.mf.evaluate(x) > 0.0 for t in self.terms) for x in probes)


@dataclass(frozen=True, slots=True)
class Rule:
    """One AND-connected rule: an antecedent label per input, one consequent."""

    antecedent: tuple[str, ...]
    consequent: str


@dataclass
class FisDefinition:
    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[Rule, ...]
    and_method: str = "min"
    or_method: str = "max"
    defuzzifier: str = "centroid"
    resolution: int = 4096

    _compiled: "_Compiled | None" = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.and_method != "min" or self.or_method != "max":
            raise ValueError("only min/max connectives are supported")
        if self.defuzzifier != "centroid":
            raise ValueError("only centroid defuzzification is supported")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if not self.inputs:
            raise ValueError("at least one input variable is required")
        if not self.rules:
            raise ValueError("at least one rule is required")
        for var in self.inputs:
            if not var.covers_universe():
                raise ValueError(
                    f"input variable {var.name!r}: terms leave part of the universe uncovered"
                )
        for r in self.rules:
            if len(r.antecedent) != len(self.inputs):
                raise ValueError(
                    f"rule {r} must reference each of the {len(self.inputs)} inputs exactly once"
                )
            for var, label in zip(self.inputs, r.antecedent):
                var.index_of(label)
            self.output.index_of(r.consequent)

    # -- compiled runtime ------------------------------------------------

    def _runtime(self) -> "_Compiled":
        if self._compiled is None:
            self._compiled = _Compiled(self)
        return self._compiled

    @property
    def grid(self) -> np.ndarray:
        """Midpoint sample grid over the output universe."""
        return self._runtime().grid

    def rank(self, label: str) -> int:
        """Position of an output term in the declared (ascending) order."""
        return self.output.index_of(label)


class _Compiled:
    """Precomputed arrays shared by every inference against one definition."""

    __slots__ = ("grid", "cell", "term_curves", "rule_idx", "rule_cons")

    def __init__(self, fis: FisDefinition):
        n = fis.resolution
        lo, hi = fis.output.lo, fis.output.hi
        self.cell = (hi - lo) / n
        self.grid = lo + (np.arange(n) + 0.5) * self.cell
        self.term_curves = np.stack([t.mf.sample(self.grid) for t in fis.output.terms])
        self.rule_idx = [
            tuple(var.index_of(lbl) for var, lbl in zip(fis.inputs, r.antecedent))
            for r in fis.rules
        ]
        self.rule_cons = [fis.output.index_of(r.consequent) for r in fis.rules]


@dataclass(frozen=True)
class InferenceResult:
    """Crisp score plus the intermediate quantities that produced it."""

    crisp: float
    activations: tuple[float, ...]
    term_activations: tuple[float, ...]
    curve_x: np.ndarray
    curve_y: np.ndarray
    output_labels: tuple[str, ...]

    @property
    def strongest_label(self) -> str:
        """Output term whose clipped curve reaches the aggregate's maximum.

        Equivalently the term with the highest activation; ties break toward
        the higher-ranked term.
        """
        best = 0
        for i in range(1, len(self.term_activations)):
            if self.term_activations[i] >= self.term_activations[best]:
                best = i
        return self.output_labels[best]


def infer(fis: FisDefinition, *values: float) -> InferenceResult:
    """Run Mamdani inference for one crisp input tuple.

    Inputs are clamped to their universes. Raises :class:`NoRuleFired` when
    every rule activation is zero.
    """
    if len(values) != len(fis.inputs):
        raise ValueError(f"expected {len(fis.inputs)} input values, got {len(values)}")
    rt = fis._runtime()
    memberships = [
        var.memberships(var.clamp(float(v))) for var, v in zip(fis.inputs, values)
    ]

    activations = []
    term_acts = [0.0] * len(fis.output.terms)
    for idxs, cons in zip(rt.rule_idx, rt.rule_cons):
        act = min(memberships[i][j] for i, j in enumerate(idxs))
        activations.append(act)
        if act > term_acts[cons]:
            term_acts[cons] = act

    if not any(a > 0.0 for a in activations):
        raise NoRuleFired(f"no rule fired for inputs {values}")

    agg = np.zeros_like(rt.grid)
    for ti, act in enumerate(term_acts):
        if act > 0.0:
            np.maximum(agg, np.minimum(act, rt.term_curves[ti]), out=agg)

    mass = float(agg.sum())
    crisp = float(agg @ rt.grid) / mass
    return InferenceResult(
        crisp=crisp,
        activations=tuple(activations),
        term_activations=tuple(term_acts),
        curve_x=rt.grid,
        curve_y=agg,
        output_labels=fis.output.labels(),
    )


def classify_output(fis: FisDefinition, crisp: float) -> str:
    """Map a crisp output score to the output term with maximal membership.

    Ties break toward the higher-ranked term; out-of-universe scores are
    clamped first.
    """
    return fis.output.argmax_label(fis.output.clamp(crisp), prefer_high=True)


def gate_decision(fis: FisDefinition, s: float, sg: float, rg: float, acceptance: str) -> GateVerdict:
    """Transmit/defer verdict for one (speed, sender gain, receiver gain) status.

    Transmits when the classified crisp score ranks at least as high as the
    acceptance term; an unclassifiable status (no rule fired) defers.
    """
    threshold = fis.rank(acceptance)
    try:
        result = infer(fis, s, sg, rg)
    except NoRuleFired:
        return GateVerdict.DEFER
    label = classify_output(fis, result.crisp)
    if fis.rank(label) >= threshold:
        return GateVerdict.TRANSMIT
    return GateVerdict.DEFER
