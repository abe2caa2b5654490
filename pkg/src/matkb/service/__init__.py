from .app import create_app
from .schemas import ApiConfig

__all__ = ["ApiConfig", "create_app"]
