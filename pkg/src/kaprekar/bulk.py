"""Vectorized routine over whole arrays of numbers, used as an independent oracle."""

from __future__ import annotations

import numpy as np

from .core import KaprekarError


def digit_matrix(values: np.ndarray, width: int) -> np.ndarray:
    """``(n, width)`` digits, most significant first."""
    if width < 2 or width > 18:
        raise KaprekarError(f"bulk arithmetic supports widths 2..18, got {width}")
    values = np.asarray(values, dtype=np.int64)
    powers = 10 ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (values[:, None] // powers) % 10


def non_repdigits(width: int) -> np.ndarray:
    values = np.arange(10 ** width, dtype=np.int64)
    digits = digit_matrix(values, width)
    return values[(digits != digits[:, :1]).any(axis=1)]


def step_values(values: np.ndarray, width: int) -> np.ndarray:
    """``O_d(n) - O_u(n)`` for every entry."""
    digits = np.sort(digit_matrix(values, width), axis=1)
    powers = 10 ** np.arange(width - 1, -1, -1, dtype=np.int64)
    ascending = digits @ powers
    descending = digits[:, ::-1] @ powers
    return descending - ascending


def param_rows(values: np.ndarray, width: int) -> np.ndarray:
    """Parameter tuples as an ``(n, width // 2)`` matrix."""
    desc = np.sort(digit_matrix(values, width), axis=1)[:, ::-1]
    h = width // 2
    return desc[:, :h] - desc[:, ::-1][:, :h]
