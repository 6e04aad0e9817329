"""Dense mode-k tensor algebra: unfoldings, foldings and mode products.

Tensors are plain numpy float64 arrays with K >= 1 modes. Unfoldings use
the Kolda & Bader fiber ordering: the mode-k unfolding places the mode-k
fibers as columns, ordered lexicographically over the remaining indices
with the lowest remaining mode varying fastest. With that convention the
mode-0 unfolding of a Fortran-contiguous array is a plain reshape, and

    unfold(mode_product(t, w, k), k) == w @ unfold(t, k)

holds for every matrix w whose column count matches dimension k.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["unfold", "fold", "mode_product", "multi_project"]


def _check_mode(ndim: int, mode: int) -> None:
    if not 0 <= mode < ndim:
        raise ValueError(f"mode {mode} out of range for a {ndim}-mode tensor")


def unfold(tensor, mode: int) -> np.ndarray:
    """Return the mode-`mode` unfolding as an I_mode x prod(rest) matrix.

    Columns are mode-`mode` fibers; the column order runs over the
    remaining indices with the lowest remaining mode fastest.
    """
    t = np.asarray(tensor, dtype=np.float64)
    _check_mode(t.ndim, mode)
    return np.reshape(np.moveaxis(t, mode, 0), (t.shape[mode], -1), order="F")


def fold(matrix, mode: int, dims) -> np.ndarray:
    """Invert :func:`unfold`: rebuild a tensor of shape `dims` from its
    mode-`mode` unfolding."""
    dims = tuple(int(d) for d in dims)
    m = np.asarray(matrix, dtype=np.float64)
    _check_mode(len(dims), mode)
    rest = dims[:mode] + dims[mode + 1 :]
    expected = (dims[mode], math.prod(rest))
    if m.ndim != 2 or m.shape != expected:
        raise ValueError(
            f"matrix of shape {m.shape} does not fold into dims {dims} "
            f"at mode {mode}; expected shape {expected}"
        )
    t = np.reshape(m, (dims[mode],) + rest, order="F")
    return np.moveaxis(t, 0, mode)


def mode_product(tensor, matrix, mode: int) -> np.ndarray:
    """Contract `matrix` (J x I_mode) along the tensor's mode `mode`.

    Entry (i_1, .., j, .., i_K) of the result is
    sum_i matrix[j, i] * tensor[i_1, .., i, .., i_K], so dimension `mode`
    is replaced by J while every other dimension is untouched.
    """
    t = np.asarray(tensor, dtype=np.float64)
    w = np.asarray(matrix, dtype=np.float64)
    _check_mode(t.ndim, mode)
    if w.ndim != 2:
        raise ValueError(f"mode_product needs a 2-d matrix, got {w.ndim}-d")
    if w.shape[1] != t.shape[mode]:
        raise ValueError(
            f"matrix has {w.shape[1]} columns but mode {mode} has "
            f"dimension {t.shape[mode]}"
        )
    out = np.tensordot(w, t, axes=(1, mode))
    return np.moveaxis(out, 0, mode)


def multi_project(tensor, projections) -> np.ndarray:
    """Project every mode: X times_0 W_0^T times_1 W_1^T ...

    `projections[k]` has shape (I_k, I'_k) and its columns are the
    projection directions for mode k, so the transposed matrices are
    applied. Mode products along distinct modes commute, hence the result
    does not depend on the order of application.
    """
    t = np.asarray(tensor, dtype=np.float64)
    ws = list(projections)
    if len(ws) != t.ndim:
        raise ValueError(
            f"expected {t.ndim} projection matrices for a {t.ndim}-mode "
            f"tensor, got {len(ws)}"
        )
    out = t
    for k, w in enumerate(ws):
        w = np.asarray(w, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != t.shape[k]:
            raise ValueError(
                f"projection {k} has shape {w.shape}, expected "
                f"({t.shape[k]}, d)"
            )
        out = mode_product(out, w.T, k)
    return out
