"""Per-node CSMA/CA channel access with an optional fuzzy transmit gate.

One access category, broadcast only: a node with a queued frame senses the
channel; a full idle AIFS grants direct access, otherwise it backs off a
uniform number of 13 us slots drawn from [0, CW]. Busy slots freeze the
countdown and accrue MAC busy time. The contention window doubles when the
channel reports that a transmission collided somewhere and resets to the
minimum on success. In gated mode every submission first passes the fuzzy
transmit gate; deferred frames are dropped, not requeued.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass

from .fis import FisDefinition, GateVerdict, gate_decision
from .metrics import MetricsLedger
from .phy import Frame


class SubmitOutcome(enum.Enum):
    ENQUEUED = "enqueued"
    DROPPED_BY_GATE = "dropped_by_gate"


class AccessOutcome(enum.Enum):
    TRANSMIT_NOW = "transmit_now"
    ENTER_BACKOFF = "enter_backoff"


class SlotOutcome(enum.Enum):
    COUNTDOWN = "countdown"
    FROZEN = "frozen"
    READY_TO_TRANSMIT = "ready_to_transmit"


class TxOutcome(enum.Enum):
    SUCCESS = "success"
    COLLISION = "collision"


def _is_pow2_minus_1(v: int) -> bool:
    return v >= 0 and ((v + 1) & v) == 0


@dataclass(frozen=True, slots=True)
class MacTimings:
    slot_time_s: float = 13e-6
    aifs_s: float = 58e-6

    def __post_init__(self) -> None:
        if self.slot_time_s <= 0:
            raise ValueError("slot time must be positive")
        if self.aifs_s < self.slot_time_s:
            raise ValueError("AIFS must be at least one slot time")


class MacState:
    """Channel-access bookkeeping for a single node."""

    __slots__ = (
        "cw_min", "cw_max", "cw", "backoff_remaining", "queue",
        "timings", "ledger", "gated",
    )

    def __init__(
        self,
        ledger: MetricsLedger,
        timings: MacTimings | None = None,
        cw_min: int = 15,
        cw_max: int = 1023,
        gated: bool = False,
    ):
        if not (_is_pow2_minus_1(cw_min) and _is_pow2_minus_1(cw_max)):
            raise ValueError("cw_min and cw_max must be one less than a power of two")
        if cw_min > cw_max:
            raise ValueError("cw_min must not exceed cw_max")
        self.cw_min = cw_min
        self.cw_max = cw_max
        self.cw = cw_min
        self.backoff_remaining: int | None = None
        self.queue: deque[Frame] = deque()
        self.timings = timings or MacTimings()
        self.ledger = ledger
        self.gated = gated

    # -- frame admission ---------------------------------------------------

    def submit_frame(
        self,
        frame: Frame,
        status: tuple[float, float, float] | None = None,
        fis: FisDefinition | None = None,
        acceptance: str | None = None,
    ) -> SubmitOutcome:
        """Queue a frame for channel access, or drop it at the gate.

        In gated mode the (speed, sender gain, receiver gain) status runs
        through the fuzzy gate first; a defer verdict discards the frame and
        counts it as dropped. The periodic generators produce the next frame
        on schedule regardless.
        """
        if self.gated:
            if fis is None or status is None or acceptance is None:
                raise ValueError("gated mode requires status, fis and acceptance")
            verdict = gate_decision(fis, *status, acceptance)
            if verdict is GateVerdict.DEFER:
                self.ledger.record("dropped_by_gate", 1)
                return SubmitOutcome.DROPPED_BY_GATE
        self.queue.append(frame)
        return SubmitOutcome.ENQUEUED

    # -- channel access ----------------------------------------------------

    def channel_access(self, idle_for_aifs: bool, rng: random.Random) -> AccessOutcome:
        """Decide between direct access and backoff for the queue head.

        ``idle_for_aifs`` reports whether the channel stayed idle for a full
        AIFS; if not, a fresh backoff is drawn and the backoff-entry counter
        increments.
        """
        if not self.queue:
            raise RuntimeError("channel access attempted with an empty queue")
        if idle_for_aifs:
            return AccessOutcome.TRANSMIT_NOW
        self.ledger.record("times_into_backoff", 1)
        self.draw_backoff(rng)
        return AccessOutcome.ENTER_BACKOFF

    def draw_backoff(self, rng: random.Random) -> int:
        """Draw a uniform slot count from [0, cw] and start the countdown."""
        slots = rng.randint(0, self.cw)
        self.ledger.record("slots_backoff", slots)
        self.backoff_remaining = slots
        return slots

    def advance_slot(self, slot_was_idle: bool) -> SlotOutcome:
        """Consume one backoff slot.

        Idle slots decrement the countdown; busy slots freeze it and accrue
        one slot of MAC busy time. With no slots left, an idle AIFS
        confirmation yields the go-ahead to transmit.
        """
        if self.backoff_remaining is None:
            raise RuntimeError("advance_slot called outside backoff")
        if not slot_was_idle:
            self.ledger.record("mac_busy_seconds", self.timings.slot_time_s)
            return SlotOutcome.FROZEN
        if self.backoff_remaining > 0:
            self.backoff_remaining -= 1
            return SlotOutcome.COUNTDOWN
        # Countdown already exhausted; the idle AIFS confirmation completes access.
        self.backoff_remaining = None
        return SlotOutcome.READY_TO_TRANSMIT

    def report_tx_outcome(self, outcome: TxOutcome) -> int:
        """Update the contention window after a transmission completes."""
        if outcome is TxOutcome.COLLISION:
            self.cw = min(2 * (self.cw + 1) - 1, self.cw_max)
        else:
            self.cw = self.cw_min
        return self.cw
