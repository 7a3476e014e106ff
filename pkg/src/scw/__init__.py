"""Safety-case workbench: parse, validate, render, generate and score GSN cases."""

__version__ = "0.1.0"
