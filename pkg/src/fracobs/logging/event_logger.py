import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum, auto
from pathlib import Path
from typing import Optional


class EventType(Enum):
    RUN_START = auto()
    RUN_END = auto()
    ASSEMBLY = auto()
    ITERATION = auto()
    SOLVER_END = auto()
    STUDY_ROW = auto()
    VERIFY = auto()
    WARNING = auto()
    ERROR = auto()


@dataclass
class Event:
    event_type: EventType
    timestamp: float
    data: dict = field(default_factory=dict)
    solver: Optional[str] = None
    iteration: Optional[int] = None

    def to_dict(self):
        return {
            "event_type": self.event_type.name,
            "timestamp": self.timestamp,
            "solver": self.solver,
            "iteration": self.iteration,
            "data": self.data,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), default=_jsonable)

    @classmethod
    def from_dict(cls, raw):
        return cls(
            event_type=EventType[raw["event_type"]],
            timestamp=raw["timestamp"],
            data=raw.get("data") or {},
            solver=raw.get("solver"),
            iteration=raw.get("iteration"),
        )


def _jsonable(value):
    # numpy scalars and arrays expose item()/tolist()
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "item"):
        return value.item()
    return str(value)


def _open_stream(path):
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8")


class EventLogger:
    """JSONL stream of run events; kept in memory and optionally on disk.

    Events are written in batches of `buffer_size` (or on flush/close).
    """

    def __init__(self, output_path=None, buffer_size=1000):
        self.output_path = Path(output_path) if output_path else None
        self.buffer_size = buffer_size
        self._pending = []
        self._events = []
        self._counts = Counter()
        self._stream = _open_stream(self.output_path) if self.output_path else None

    def log(self, event_type, timestamp, data=None, solver=None, iteration=None):
        event = Event(event_type, timestamp, dict(data or {}), solver, iteration)
        self._events.append(event)
        self._counts[event_type] += 1
        self._pending.append(event)
        if len(self._pending) >= self.buffer_size:
            self.flush()
        return event

    def log_assembly(self, timestamp, size, s, duration_ms, threads=1):
        data = {"size": size, "s": s, "duration_ms": duration_ms, "threads": threads}
        return self.log(EventType.ASSEMBLY, timestamp, data)

    def log_iteration(self, timestamp, solver, record):
        data = {
            "contact_size": record.contact_size,
            "max_update": record.max_update,
            "residual": record.residual,
        }
        if not record.monotone:
            data["monotone"] = False
        return self.log(EventType.ITERATION, timestamp, data, solver, record.iteration)

    def log_solver_end(self, timestamp, result, **extra):
        data = {"converged": result.converged, "contact_size": int(result.contact.size)}
        data.update(extra)
        return self.log(EventType.SOLVER_END, timestamp, data, result.solver, result.iterations)

    def flush(self):
        if self._stream is not None and self._pending:
            self._stream.write("".join(event.to_json() + "\n" for event in self._pending))
            self._stream.flush()
        self._pending = []

    def close(self):
        self.flush()
        if self._stream is not None:
            self._stream.close()
            self._stream = None

    def get_events(self, event_type=None, solver=None):
        return [
            event
            for event in self._events
            if (event_type is None or event.event_type == event_type)
            and (solver is None or event.solver == solver)
        ]

    def get_event_count(self, event_type=None):
        if event_type is None:
            return len(self._events)
        return self._counts[event_type]

    @staticmethod
    def load_from_jsonl(path):
        with open(path, "r", encoding="utf-8") as f:
            return [Event.from_dict(json.loads(line)) for line in f if line.strip()]

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
        return False
