import re
import sys
import threading
import time
from enum import Enum, auto
from pathlib import Path


class LogLevel(Enum):
    DEBUG = auto()
    INFO = auto()
    ASSEMBLY = auto()
    SOLVER = auto()
    STUDY = auto()
    METRIC = auto()
    WARNING = auto()
    ERROR = auto()


class LogColors:
    RESET = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"
    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    MAGENTA = "\033[35m"
    CYAN = "\033[36m"
    WHITE = "\033[37m"


_ANSI = re.compile(r"\033\[[0-9;]*m")

_STYLES = {
    LogLevel.DEBUG: (LogColors.DIM + LogColors.WHITE, "DBG"),
    LogLevel.INFO: (LogColors.CYAN, "INF"),
    LogLevel.ASSEMBLY: (LogColors.BLUE, "ASM"),
    LogLevel.SOLVER: (LogColors.GREEN, "SLV"),
    LogLevel.STUDY: (LogColors.MAGENTA, "STU"),
    LogLevel.METRIC: (LogColors.CYAN + LogColors.BOLD, "MET"),
    LogLevel.WARNING: (LogColors.YELLOW + LogColors.BOLD, "WRN"),
    LogLevel.ERROR: (LogColors.RED + LogColors.BOLD, "ERR"),
}

_COUNTERS = ("total_logs", "assemblies", "iterations", "warnings", "errors")


def _paint(text, style, colors):
    return f"{style}{text}{LogColors.RESET}" if colors else text


class LiveLogger:
    """Process-wide console logger for assembly, solver and study progress.

    Lines go to stderr so CSV and JSON results on disk stay clean. A run can
    mirror them to a plain text file with attach_log_file.
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._initialized = False
        return cls._instance

    def __init__(self, enabled=True, min_level=LogLevel.INFO, show_timestamps=True, show_colors=None):
        if self._initialized:
            return

        self.enabled = enabled
        self.min_level = min_level
        self.show_timestamps = show_timestamps
        self.show_colors = sys.stderr.isatty() if show_colors is None else show_colors
        self._file_handle = None
        self._write_lock = threading.Lock()
        self._callbacks = {level: [] for level in LogLevel}
        self._stats = dict.fromkeys(_COUNTERS, 0)
        self._start_time = time.time()
        self._initialized = True

    def attach_log_file(self, path):
        """Mirror every emitted line, without colours, to a text file."""
        self.detach_log_file()
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self._file_handle = open(path, "w", encoding="utf-8")
        return path

    def detach_log_file(self):
        if self._file_handle is not None:
            self._file_handle.close()
            self._file_handle = None

    def _format_message(self, level, message, solver=None, iteration=None, extra=None, colors=True):
        colors = colors and self.show_colors
        style, tag = _STYLES[level]
        parts = []
        if self.show_timestamps:
            parts.append(_paint(f"[{time.time() - self._start_time:8.2f}s]", LogColors.DIM, colors))
        parts.append(_paint(f"[{tag}]", style, colors))
        if solver:
            parts.append(_paint(solver, LogColors.BOLD, colors))
        if iteration is not None:
            parts.append(_paint(f"k{iteration:04d}", LogColors.DIM, colors))
        parts.append(message)
        if extra:
            details = " ".join(f"{key}={value}" for key, value in extra.items())
            parts.append(_paint(f"({details})", LogColors.DIM, colors))
        return " ".join(parts)

    @staticmethod
    def _strip_colors(text):
        return _ANSI.sub("", text)

    def log(self, level, message, solver=None, iteration=None, extra=None):
        """Emit one line; disabling only silences stderr."""
        if level.value < self.min_level.value:
            return
        self._stats["total_logs"] += 1

        with self._write_lock:
            if self.enabled:
                print(self._format_message(level, message, solver, iteration, extra), file=sys.stderr, flush=True)
            if self._file_handle:
                plain = self._format_message(level, message, solver, iteration, extra, colors=False)
                self._file_handle.write(plain + "\n")
                self._file_handle.flush()

        for callback in list(self._callbacks[level]):
            try:
                callback(level, message, solver, iteration, extra)
            except Exception:
                pass

    def debug(self, message, **kwargs):
        self.log(LogLevel.DEBUG, message, **kwargs)

    def info(self, message, **kwargs):
        self.log(LogLevel.INFO, message, **kwargs)

    def metric(self, message, **kwargs):
        self.log(LogLevel.METRIC, message, **kwargs)

    def warning(self, message, **kwargs):
        self._stats["warnings"] += 1
        self.log(LogLevel.WARNING, message, **kwargs)

    def error(self, message, **kwargs):
        self._stats["errors"] += 1
        self.log(LogLevel.ERROR, message, **kwargs)

    def log_assembly(self, size, s, duration_ms, threads=1, label="operator"):
        self._stats["assemblies"] += 1
        self.log(
            LogLevel.ASSEMBLY,
            f"Assembled {label}",
            extra={"N": size, "s": s, "ms": round(duration_ms, 1), "threads": threads},
        )

    def log_iteration(self, solver, iteration, contact_size, max_update, residual):
        self._stats["iterations"] += 1
        self.log(
            LogLevel.DEBUG,
            f"|C|={contact_size} update={max_update:.3e} residual={residual:.3e}",
            solver=solver,
            iteration=iteration,
        )

    def log_solver_end(self, solver, iterations, converged, residual):
        extra = {"residual": f"{residual:.3e}"}
        if converged:
            self.log(LogLevel.SOLVER, f"Converged after {iterations} iterations", solver=solver, extra=extra)
        else:
            self.warning(f"No convergence within {iterations} iterations", solver=solver, extra=extra)

    def log_convergence_row(self, elements, size, h, error, iterations):
        self.log(
            LogLevel.STUDY,
            f"M={elements} N={size} h={h:.4e} error={error:.6e}",
            extra={"iterations": iterations},
        )

    def log_rate(self, label, rate):
        self.metric(f"{label}: {rate:.4f}")

    def log_table_row(self, s, target, size, iterations, reference):
        self.log(
            LogLevel.STUDY,
            f"s={s} N={size} (target {target}) iterations={iterations}",
            extra={"reference": reference},
        )

    def log_structure(self, label, passed, details=None):
        if passed:
            self.log(LogLevel.METRIC, f"PASS {label}", extra=details)
        else:
            self.warning(f"FAIL {label}", extra=details)

    def log_run_start(self, command, details=None):
        self.info(f"fracobs {command} starting", extra=details)

    def log_run_end(self, command, exit_code, duration_ms):
        self.info(f"fracobs {command} finished with exit code {exit_code} in {duration_ms / 1000:.2f}s")

    def add_callback(self, level, callback):
        self._callbacks[level].append(callback)

    def remove_callback(self, level, callback):
        if callback in self._callbacks[level]:
            self._callbacks[level].remove(callback)

    def get_stats(self):
        return dict(self._stats)

    def reset_stats(self):
        self._stats = dict.fromkeys(_COUNTERS, 0)
        self._start_time = time.time()

    def set_enabled(self, enabled):
        self.enabled = enabled

    def set_level(self, level):
        self.min_level = LogLevel[level.upper()] if isinstance(level, str) else level


def get_live_logger():
    return LiveLogger()
