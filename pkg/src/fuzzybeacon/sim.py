"""Deterministic discrete-event core: clock, event queue, seeded streams.

Events dequeue in (time, sequence) order, so simultaneous events replay in
insertion order and every run is a total order. Randomness comes only from
named substreams derived from one master seed; identical seeds give
bit-identical runs regardless of host or wall clock.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Any, Callable, Protocol


class PastEventError(ValueError):
    """An event was scheduled before the current clock."""


class UnknownPurposeError(KeyError):
    """A random stream was requested for an unregistered purpose."""


@dataclass(frozen=True, slots=True)
class SimEvent:
    time: float
    seq: int
    payload: Any


class EventQueue:
    """Priority queue of timestamped events with a stable sequence tiebreak."""

    __slots__ = ("_heap", "_next_seq", "clock")

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, Any]] = []
        self._next_seq = 0
        self.clock = 0.0

    def __len__(self) -> int:
        return len(self._heap)

    def schedule(self, time: float, payload: Any) -> SimEvent:
        if time < self.clock:
            raise PastEventError(
                f"cannot schedule event at {time} before current clock {self.clock}"
            )
        event = SimEvent(time, self._next_seq, payload)
        self._next_seq += 1
        heapq.heappush(self._heap, (event.time, event.seq, event.payload))
        return event

    def peek_time(self) -> float | None:
        return self._heap[0][0] if self._heap else None

    def pop(self) -> SimEvent:
        time, seq, payload = heapq.heappop(self._heap)
        self.clock = time
        return SimEvent(time, seq, payload)


# Registered stream purposes. Per-node streams are independent of each other
# and of the global ones, so adding a node never perturbs existing draws.
PURPOSES = ("scenario", "mobility", "traffic", "gain", "backoff", "corruption")


class RngStreams:
    """Named, seeded random substreams derived from one master seed."""

    __slots__ = ("master_seed", "_streams")

    def __init__(self, master_seed: int):
        self.master_seed = master_seed
        self._streams: dict[tuple[str, int | None], random.Random] = {}

    def stream(self, purpose: str, node_id: int | None = None) -> random.Random:
        """The unique substream for (purpose, node); draws continue across calls."""
        if purpose not in PURPOSES:
            raise UnknownPurposeError(f"unregistered stream purpose {purpose!r}")
        key = (purpose, node_id)
        rng = self._streams.get(key)
        if rng is None:
            # str seeding is stable across platforms and Python runs.
            rng = random.Random(f"{self.master_seed}/{purpose}/{node_id}")
            self._streams[key] = rng
        return rng


class SimWorld(Protocol):
    queue: EventQueue

    def finalize(self, t_end: float) -> None: ...


def run_until(
    world: SimWorld,
    t_end: float,
    trace: Callable[[SimEvent], None] | None = None,
) -> SimWorld:
    """Process events with time strictly below ``t_end``, then freeze the world.

    Each payload handles itself via ``payload.apply(world, now)``. The clock
    never decreases; on return every ledger in the world is frozen.
    """
    queue = world.queue
    while len(queue) > 0:
        next_time = queue.peek_time()
        if next_time is None or next_time >= t_end:
            break
        event = queue.pop()
        if trace is not None:
            trace(event)
        event.payload.apply(world, event.time)
    queue.clock = max(queue.clock, t_end)
    world.finalize(t_end)
    return world
