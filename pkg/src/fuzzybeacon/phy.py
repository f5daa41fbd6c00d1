"""Broadcast PHY: free-space propagation, airtime, and reception outcomes.

The channel model is deliberately simple. Received power follows the Friis
free-space law with linear antenna gains and a configurable path-loss
exponent. A frame below the receiver's sensitivity is invisible; two or more
visible frames overlapping in time at a receiver destroy each other (no
capture); a receiver that is itself transmitting loses every frame arriving
during its transmission (half duplex).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0

MIN_DISTANCE_M = 1.0  # co-located nodes use a 1 m floor


class FrameKind(enum.Enum):
    WSM = "wsm"
    BSM = "bsm"
    WSA_REQUEST = "wsa_request"
    WSA_RESPONSE = "wsa_response"


class Outcome(enum.Enum):
    DELIVERED = "delivered"
    LOST_COLLISION = "lost_collision"
    BELOW_SENSITIVITY = "below_sensitivity"


@dataclass(slots=True)
class Frame:
    """One over-the-air transmission (or a queued candidate for one)."""

    id: int
    kind: FrameKind
    bits: int
    sender: int
    origin_id: int
    origin_node: int
    origin_time: float
    hops: int
    tx_power_w: float
    sender_gain: float
    sender_x: float
    sender_y: float
    start_time: float = -1.0
    airtime: float = 0.0

    def __post_init__(self) -> None:
        if self.bits <= 0:
            raise ValueError("frame bits must be positive")
        if not 0.0 <= self.sender_gain <= 1.0:
            raise ValueError("sender gain must lie in [0, 1]")
        if self.hops < 0:
            raise ValueError("hop count must be non-negative")

    @property
    def end_time(self) -> float:
        return self.start_time + self.airtime


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


def frame_airtime(bits: int, bitrate: float) -> float:
    """Seconds on air for a payload at the channel bitrate (no preamble)."""
    if bitrate <= 0:
        raise ValueError("bitrate must be positive")
    if bits <= 0:
        raise ValueError("bits must be positive")
    return bits / bitrate


def received_power(
    tx_power_w: float,
    sender_gain: float,
    receiver_gain: float,
    distance_m: float,
    freq_hz: float,
    path_loss_exponent: float = 2.0,
) -> float:
    """Friis free-space received power with linear gains in [0, 1]."""
    d = max(distance_m, MIN_DISTANCE_M)
    lam = SPEED_OF_LIGHT / freq_hz
    return tx_power_w * sender_gain * receiver_gain * (lam / (4.0 * math.pi)) ** 2 / d ** path_loss_exponent


def received_power_array(
    tx_power_w: float,
    sender_gain: float,
    receiver_gains: np.ndarray,
    distances_m: np.ndarray,
    freq_hz: float,
    path_loss_exponent: float = 2.0,
) -> np.ndarray:
    """Vectorized :func:`received_power` over many receivers."""
    d = np.maximum(distances_m, MIN_DISTANCE_M)
    lam = SPEED_OF_LIGHT / freq_hz
    return (tx_power_w * sender_gain * (lam / (4.0 * math.pi)) ** 2) * receiver_gains / d ** path_loss_exponent


@dataclass(slots=True)
class Arrival:
    """A frame incident on one receiver, with its computed received power."""

    frame: Frame
    power_w: float


def _strict_overlap(a0: float, a1: float, b0: float, b1: float) -> bool:
    return max(a0, b0) < min(a1, b1)


def interval_union_measure(intervals: Iterable[tuple[float, float]]) -> float:
    """Total length of the union of (start, end) intervals."""
    spans = sorted((s, e) for s, e in intervals if e > s)
    total = 0.0
    cur_start = cur_end = None
    for s, e in spans:
        if cur_end is None or s > cur_end:
            if cur_end is not None:
                total += cur_end - cur_start
            cur_start, cur_end = s, e
        elif e > cur_end:
            cur_end = e
    if cur_end is not None:
        total += cur_end - cur_start
    return total


def resolve_reception(
    arrivals: Sequence[Arrival],
    sensitivity_w: float,
    tx_intervals: Sequence[tuple[float, float]] = (),
) -> tuple[dict[int, Outcome], float]:
    """Classify every arrival at one receiver and account PHY busy time.

    ``tx_intervals`` lists the receiver's own transmissions; arrivals
    overlapping them are lost (half duplex). Returns a map from frame id to
    outcome plus the measure of the union of visible arrival intervals,
    which is what the receiver's PHY busy clock accrues.
    """
    visible = [a for a in arrivals if a.power_w >= sensitivity_w]
    outcomes: dict[int, Outcome] = {
        a.frame.id: Outcome.BELOW_SENSITIVITY
        for a in arrivals
        if a.power_w < sensitivity_w
    }

    lost: set[int] = set()
    for a, b in itertools.combinations(visible, 2):
        if _strict_overlap(a.frame.start_time, a.frame.end_time,
                           b.frame.start_time, b.frame.end_time):
            lost.add(a.frame.id)
            lost.add(b.frame.id)
    for a in visible:
        for t0, t1 in tx_intervals:
            if _strict_overlap(a.frame.start_time, a.frame.end_time, t0, t1):
                lost.add(a.frame.id)
                break

    for a in visible:
        outcomes[a.frame.id] = (
            Outcome.LOST_COLLISION if a.frame.id in lost else Outcome.DELIVERED
        )

    busy = interval_union_measure(
        (a.frame.start_time, a.frame.end_time) for a in visible
    )
    return outcomes, busy
