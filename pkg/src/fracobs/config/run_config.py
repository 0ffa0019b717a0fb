from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import ConfigError
from .loader import ConfigLoader

TABLE_ORDERS = (0.3, 0.6, 0.9)
EXACT_EXPERIMENTS = ("exp1", "linear")


class RunConfig(BaseModel):
    """Flat run file; every key maps to one field."""

    model_config = ConfigDict(extra="forbid")

    command: Literal["solve", "converge", "table", "verify", "compare"]
    s: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    mesh_family: Literal["uniform", "graded"] = "uniform"
    elements: int = Field(default=64, ge=2)
    mu: Optional[float] = Field(default=None, ge=1.0)
    element_counts: List[int] = Field(default_factory=lambda: [32, 64, 128, 256])
    alpha: float = Field(default=0.5, gt=0.0, le=1.0)
    theta: float = Field(default=0.25, gt=0.0, lt=1.0)
    experiment: Literal["exp1", "exp2", "exp3", "linear", "custom"] = "exp1"
    f_file: Optional[str] = None
    psi_file: Optional[str] = None
    solver: Literal["policy", "improved", "perron"] = "improved"
    tol: Optional[float] = Field(default=None, gt=0.0)
    max_iter: Optional[int] = Field(default=None, ge=1)
    output_dir: str = "output"
    seed: int = Field(default=0, ge=0, lt=2**64)
    threads: int = Field(default=1, ge=1)
    trials: int = Field(default=20, ge=0)
    dump_matrix: bool = False
    event_log: bool = False
    log_file: Optional[str] = None

    def check(self):
        """Cross-field rules; raises ConfigError naming the field."""
        if self.s is None and self.command != "table":
            raise ConfigError("s", f"the {self.command} command needs a fractional order")
        if self.command == "table":
            if self.s is not None and self.s not in TABLE_ORDERS:
                raise ConfigError("s", f"iteration tables exist for s in {TABLE_ORDERS}")
            if self.experiment != "exp3":
                raise ConfigError("experiment", "iteration tables use exp3")
            if self.solver != "improved":
                raise ConfigError("solver", "iteration tables use the improved solver")
        if self.command == "converge":
            if self.experiment not in EXACT_EXPERIMENTS:
                raise ConfigError("experiment", f"converge needs one of {EXACT_EXPERIMENTS}")
            if len(self.element_counts) < 2:
                raise ConfigError("element_counts", "converge needs at least two element counts")
        if self.experiment == "custom":
            for name in ("f_file", "psi_file"):
                if getattr(self, name) is None:
                    raise ConfigError(name, "custom instances need nodal-value files")
        if self.mesh_family == "graded" and self.command in ("solve", "verify", "compare"):
            if self.elements < 4 or self.elements % 2:
                raise ConfigError("elements", "graded meshes need an even count >= 4")
        if self.command == "converge":
            for M in self.element_counts:
                if M < 2 or (self.mesh_family == "graded" and (M < 4 or M % 2)):
                    raise ConfigError("element_counts", f"invalid element count {M}")
        return self

    def echo(self):
        return self.model_dump(mode="json")


def _field_of(error):
    loc = error.get("loc") or ()
    return ".".join(str(part) for part in loc) or "config"


def parse_run_config(raw, overrides=None):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("config", "run file must be a mapping of keys to values")
    data = dict(raw)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise ConfigError(_field_of(first), first.get("msg", "invalid value")) from exc
    return config.check()


def load_run_config(path, overrides=None, loader=None):
    loader = loader or ConfigLoader()
    try:
        raw = loader.load_run(path)
    except FileNotFoundError as exc:
        raise ConfigError("config", str(exc)) from exc
    except Exception as exc:
        raise ConfigError("config", f"cannot parse {path}: {exc}") from exc
    return parse_run_config(raw, overrides)
