"""Homotopy limits, ends and Kan extensions over finite models."""

from pathlib import Path

from ._core import EngineError, betti, bindings, canonical, run, suite_names, verify

__all__ = ["EngineError", "betti", "bindings", "canonical", "run", "run_file", "suite_names", "verify"]


def run_file(path, command, **options):
    """Run one command on a workspace file; see ``run`` for the options."""
    return run(Path(path).read_text(encoding="utf-8"), command, **options)
