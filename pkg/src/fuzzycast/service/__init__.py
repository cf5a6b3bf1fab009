"""FastAPI service wrapping the forecasting library."""
from .app import create_app

__all__ = ["create_app"]
