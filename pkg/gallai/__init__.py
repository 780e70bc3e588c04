from .gallai import Gallai

__version__ = "0.1.0"

__all__ = ["Gallai", "__version__"]
