"""Single-threaded discrete-event engine.

Events are ordered by ``(t_s, seq)``; ``seq`` is a global insertion
counter, so simultaneous events run in the order they were scheduled.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Optional


@dataclass(order=True)
class Event:
    t_s: float
    seq: int
    kind: str = field(compare=False)
    payload: Any = field(default=None, compare=False)
    handler: Optional[Callable] = field(default=None, compare=False, repr=False)


class EventEngine:
    def __init__(self, keep_trace: bool = True):
        self.now = 0.0
        self._queue: list = []
        self._seq = itertools.count()
        self.keep_trace = keep_trace
        self.trace: list = []
        self._hash = hashlib.sha256()

    def __len__(self):
        return len(self._queue)

    def schedule(self, t_s: float, kind: str, handler: Optional[Callable] = None,
                 payload: Any = None) -> Event:
        if t_s < self.now:
            raise ValueError(f"cannot schedule {kind} at {t_s} before now={self.now}")
        ev = Event(t_s, next(self._seq), kind, payload, handler)
        heapq.heappush(self._queue, ev)
        return ev

    def schedule_in(self, delay_s: float, kind: str, handler=None, payload=None) -> Event:
        return self.schedule(self.now + delay_s, kind, handler, payload)

    def peek_time(self) -> Optional[float]:
        return self._queue[0].t_s if self._queue else None

    def run_until(self, t_end: float) -> list:
        """Process every event with ``t_s <= t_end``; returns those events."""
        if t_end < self.now:
            raise ValueError("t_end precedes the current time")
        done = []
        while self._queue and self._queue[0].t_s <= t_end:
            ev = heapq.heappop(self._queue)
            self.now = ev.t_s
            self._hash.update(f"{ev.t_s!r}|{ev.seq}|{ev.kind}\n".encode())
            if self.keep_trace:
                self.trace.append((ev.t_s, ev.seq, ev.kind))
            done.append(ev)
            if ev.handler is not None:
                ev.handler(ev)
        self.now = max(self.now, t_end)
        return done

    def run(self) -> list:
        done = []
        while self._queue:
            done.extend(self.run_until(self._queue[0].t_s))
        return done

    def trace_hash(self) -> str:
        return self._hash.hexdigest()
