from .app import create_app
from .config import ServiceConfig, load_config
from .storage import ScanStore

__all__ = ["create_app", "ServiceConfig", "load_config", "ScanStore"]
