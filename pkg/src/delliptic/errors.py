"""Shared exception types."""

from __future__ import annotations


class CrossCheckError(Exception):
    """Two independent computations of the same quantity disagree.

    Raised by every dual-route assembly and closed-form comparison; a cross
    check failure means transcribed data or a formula is wrong, never that an
    input was invalid.
    """
