from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic_settings import BaseSettings

BASE_DIR: Path = Path(__file__).parent

# Jinja2 templates for the SVG plots
templates: Environment = Environment(
    loader=FileSystemLoader(BASE_DIR / "templates"),
    undefined=StrictUndefined,
    autoescape=True,
    keep_trailing_newline=True,
)

ARTIFACT_VERSION: str = "0.1.0"

# Numerical conventions shared by the dynamics modules
BLOW_UP_THRESHOLD: float = 1e12
SINGULARITY_REL_TOL: float = 1e-6
DEFAULT_DT: float = 0.01
KICK_DT: float = 0.001
ZERO_THRESHOLD: float = 1e-3
RENORM_EVERY: int = 10
ENERGY_TOL: float = 0.01
MAX_SAMPLING_DRAWS: int = 1_000_000


class ConfigSettings(BaseSettings):
    CHAOS_MM_SEED: int | None = None
    CHAOS_MM_WORKERS: int = 1
    CHAOS_MM_LOG_LEVEL: str = "INFO"
