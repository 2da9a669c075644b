"""Quantum light through lossy and amplifying multiport devices.

Gaussian phase-space engine plus a truncated-Fock-space cross-validator.
All heavy lifting lives in the _core extension; this package re-exports it.
"""

from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
