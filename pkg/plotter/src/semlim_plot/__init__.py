"""CSV-to-figure companion for semlim sweep outputs."""

from .render import FigureSpec, RenderResult, SchemaError, load_series, render

__all__ = ["FigureSpec", "RenderResult", "SchemaError", "load_series", "render"]
