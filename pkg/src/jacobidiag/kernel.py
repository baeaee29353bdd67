"""Selects the compiled modular eliminator when built, else the pure-Python one.

Set ``JACOBI_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"
if os.environ.get("JACOBI_PURE_PYTHON") != "1":
    try:
        from ._modelim import DEFAULT_PRIME, ModEliminator  # noqa: F401

        BACKEND = "compiled"
    except ImportError:
        pass
if BACKEND == "python":
    from ._modelim_py import DEFAULT_PRIME, ModEliminator  # noqa: F401

__all__ = ["BACKEND", "DEFAULT_PRIME", "ModEliminator"]
