from .config import ARTIFACT_VERSION

__version__: str = ARTIFACT_VERSION
