"""Mixed interval graphs: builders, coloring, recognition, generators."""

__version__ = "0.1.0"
