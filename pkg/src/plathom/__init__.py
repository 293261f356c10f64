"""Link homologies from plat braid presentations via a cube of singular resolutions."""

from .diagram import PlatWord, DiagramError, parse_plat, format_plat, resolve

__version__ = "0.1.0"

__all__ = ["PlatWord", "DiagramError", "parse_plat", "format_plat", "resolve", "__version__"]
