"""The transmit-gate fuzzy system shipped with the simulator.

Each linguistic term is specified by an interval of its variable's universe
and a shape keyword; explicit thresholds derive from a fixed convention:

* interior triangles peak at the interval midpoint,
* interior trapezoids carry a middle-third flat top,
* the leftmost term of a variable pins its peak/plateau at the interval's
  low edge and the rightmost at the high edge (shoulders), so the whole
  universe stays covered.

``default_fis()`` builds the definition programmatically; the packaged
``f802_11p.fis`` file is its serialized form and round-trips exactly.
"""

from __future__ import annotations

from importlib import resources

from . import fisfile
from .fis import FisDefinition, LinguisticVariable, Rule, Term
from .membership import MembershipFunction, Trapezoid, Triangle

FIS_RESOURCE = "f802_11p.fis"

SPEED = "speed"
SENDER_GAIN = "sender_gain"
RECEIVER_GAIN = "receiver_gain"
IDLE_TIME = "idle_time"

ACCEPTANCE_LEVELS = ("Bad", "Good", "VeryGood")


def term_from_interval(
    label: str, lo: float, hi: float, shape: str, position: str = "interior"
) -> Term:
    """Instantiate a term from its universe interval per the shipped convention.

    ``position`` is one of ``leftmost``/``interior``/``rightmost`` and decides
    whether the peak is pinned at an edge (shoulder) or centered.
    """
    mf: MembershipFunction
    third = (hi - lo) / 3.0
    if shape == "tri":
        if position == "leftmost":
            mf = Triangle(lo, lo, hi)
        elif position == "rightmost":
            mf = Triangle(lo, hi, hi)
        else:
            mf = Triangle(lo, (lo + hi) / 2.0, hi)
    elif shape == "trap":
        if position == "leftmost":
            mf = Trapezoid(lo, lo, lo + 2.0 * third, hi)
        elif position == "rightmost":
            mf = Trapezoid(lo, lo + third, hi, hi)
        else:
            mf = Trapezoid(lo, lo + third, lo + 2.0 * third, hi)
    else:
        raise ValueError(f"unsupported default shape {shape!r}")
    return Term(label, mf)


def _variable(name: str, unit: str, lo: float, hi: float,
              terms: list[tuple[str, float, float, str]]) -> LinguisticVariable:
    built = []
    for i, (label, tlo, thi, shape) in enumerate(terms):
        position = "leftmost" if i == 0 else "rightmost" if i == len(terms) - 1 else "interior"
        built.append(term_from_interval(label, tlo, thi, shape, position))
    return LinguisticVariable(name=name, unit=unit, lo=lo, hi=hi, terms=tuple(built))


def default_fis(resolution: int = 4096) -> FisDefinition:
    """The shipped three-input transmit-gate system."""
    speed = _variable(SPEED, "m/s", 0.0, 27.78, [
        ("Resident", 0.0, 8.3, "tri"),
        ("Move", 5.0, 11.1, "tri"),
        ("Normal", 8.3, 19.2, "tri"),
        ("Slow", 10.0, 22.2, "trap"),
        ("Fast", 13.0, 27.78, "trap"),
    ])
    gain_terms = [
        ("Weak", 0.0, 0.4, "tri"),
        ("Medium", 0.1, 0.9, "tri"),
        ("Excellent", 0.5, 1.0, "tri"),
    ]
    sender = _variable(SENDER_GAIN, "gain", 0.0, 1.0, gain_terms)
    receiver = _variable(RECEIVER_GAIN, "gain", 0.0, 1.0, gain_terms)
    idle = _variable(IDLE_TIME, "s", 0.0, 87.1, [
        ("Bad", 0.0, 32.8, "tri"),
        ("Good", 17.0, 63.0, "tri"),
        ("VeryGood", 40.0, 87.1, "trap"),
    ])
    rules = (
        Rule(("Resident", "Medium", "Medium"), "Bad"),
        Rule(("Move", "Medium", "Medium"), "Bad"),
        Rule(("Normal", "Medium", "Medium"), "Bad"),
        Rule(("Slow", "Medium", "Medium"), "Good"),
        Rule(("Fast", "Medium", "Medium"), "Good"),
        Rule(("Fast", "Medium", "Excellent"), "VeryGood"),
        Rule(("Resident", "Weak", "Medium"), "Bad"),
        Rule(("Slow", "Excellent", "Weak"), "Bad"),
        Rule(("Fast", "Medium", "Weak"), "Bad"),
    )
    return FisDefinition(inputs=(speed, sender, receiver), output=idle,
                         rules=rules, resolution=resolution)


def packaged_fis_text() -> str:
    return resources.files("fuzzybeacon.data").joinpath(FIS_RESOURCE).read_text(encoding="utf-8")


def load_packaged_fis() -> FisDefinition:
    """Parse the definition file shipped inside the package."""
    return fisfile.loads(packaged_fis_text(), source=f"packaged:{FIS_RESOURCE}")


def acceptance_label(value: str) -> str:
    """Normalize a CLI-style acceptance flag to an output term label."""
    aliases = {"bad": "Bad", "good": "Good", "vgood": "VeryGood",
               "verygood": "VeryGood", "v.good": "VeryGood"}
    return aliases.get(value.lower(), value)
