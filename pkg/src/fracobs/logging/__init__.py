from .event_logger import EventType, Event, EventLogger
from .live_logger import LiveLogger, LogLevel, get_live_logger

__all__ = [
    "EventType",
    "Event",
    "EventLogger",
    "LiveLogger",
    "LogLevel",
    "get_live_logger",
]
