"""Publication-style figures from sqws CSV outputs."""

from .render import (
    KINDS,
    PRESET_FIGURE_KINDS,
    FigureSpec,
    RenderError,
    build_figure,
    default_spec,
    load_spec,
    render,
)

__version__ = "0.1.0"
