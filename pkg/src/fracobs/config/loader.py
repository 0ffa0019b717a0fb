import yaml
from pathlib import Path

REPO_CONFIG_DIR = Path(__file__).parents[3] / "config"


class ConfigLoader:
    """Finds run files by name in the config directory, or by explicit path."""

    def __init__(self, config_dir=None):
        self.config_dir = Path(config_dir) if config_dir is not None else REPO_CONFIG_DIR

    def resolve(self, filename):
        candidate = Path(filename)
        if candidate.is_absolute() or candidate.exists():
            return candidate
        return self.config_dir / candidate

    def load_run(self, filename):
        run_path = self.resolve(filename)
        if not run_path.is_file():
            raise FileNotFoundError(f"Run file not found: {run_path}")
        return yaml.safe_load(run_path.read_text(encoding="utf-8"))

    def list_runs(self):
        if not self.config_dir.is_dir():
            return []
        return sorted(entry.name for entry in self.config_dir.glob("*.yaml"))
