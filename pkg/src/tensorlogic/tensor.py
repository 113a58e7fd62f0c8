"""Dense tensors and the contraction operation used as function application.

A :class:`Tensor` is an immutable dense array of real scalars with rank >= 1.
Rank 0 never occurs: a full scalar reduction returns a rank-1 tensor of
dimension 1 (the "scalar carrier"), so every operation closes over tensors.

Contraction joins exactly one index pair: the rightmost index of the left
operand with the leftmost index of the right operand.  No other pairing is
offered.  Storage is row-major and dense; constructions above ``cap`` elements
(default ``DEFAULT_ELEMENT_CAP``) are rejected outright rather than spilling
to a sparse or chunked representation.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    ElementCapError,
    NotSquareError,
    RankError,
)

DEFAULT_ELEMENT_CAP = 10_000_000

#: Absolute tolerance for float comparisons.  Model-derived tensors hold exact
#: 0/1 values stored as floats, so this only guards accumulated float error on
#: the probabilistic path.
FLOAT_TOL = 1e-12


class Tensor:
    """Immutable dense rank-k array of float64 scalars, k >= 1.

    Index 0 is the leftmost (outermost) index, index k-1 the rightmost.
    The wrapped array is made read-only at construction; all operations
    return new tensors.
    """

    __slots__ = ("_array",)

    def __init__(self, values, *, cap: int = DEFAULT_ELEMENT_CAP):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim == 0:
            raise RankError("rank-0 tensors are not representable; wrap scalars in shape (1,)")
        if any(dim < 1 for dim in arr.shape):
            raise DimensionMismatchError(f"shape entries must be >= 1, got {arr.shape}")
        if arr.size > cap:
            raise ElementCapError(
                f"tensor of shape {arr.shape} has {arr.size} elements, above the cap of {cap}"
            )
        arr.setflags(write=False)
        self._array = arr

    @property
    def array(self) -> np.ndarray:
        """The wrapped read-only ndarray."""
        return self._array

    @property
    def shape(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def rank(self) -> int:
        return self._array.ndim

    @property
    def size(self) -> int:
        return self._array.size

    def item(self) -> float:
        """The sole entry of a dimension-1 rank-1 tensor (the scalar carrier)."""
        if self.shape != (1,):
            raise RankError(f"item() requires shape (1,), got {self.shape}")
        return float(self._array[0])

    def tolist(self) -> list:
        return self._array.tolist()

    def scaled(self, factor: float) -> "Tensor":
        return Tensor(self._array * factor)

    def __getitem__(self, index):
        return self._array[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._array, other._array))

    def __hash__(self) -> int:
        return hash((self.shape, self._array.tobytes()))

    def allclose(self, other: "Tensor", tol: float = FLOAT_TOL) -> bool:
        """Entrywise comparison within absolute tolerance ``tol``."""
        return self.shape == other.shape and bool(
            np.allclose(self._array, other._array, rtol=0.0, atol=tol)
        )

    def __repr__(self) -> str:
        return f"Tensor({self._array.tolist()!r})"


def zeros(shape: int | Sequence[int]) -> Tensor:
    if isinstance(shape, int):
        shape = (shape,)
    return Tensor(np.zeros(shape))


def ones(n: int) -> Tensor:
    return Tensor(np.ones(n))


def identity(n: int) -> Tensor:
    return Tensor(np.eye(n))


def one_hot(index: int, size: int) -> Tensor:
    if not 0 <= index < size:
        raise DimensionMismatchError(f"one-hot index {index} out of range for size {size}")
    v = np.zeros(size)
    v[index] = 1.0
    return Tensor(v)


def contract(left: Tensor, right: Tensor) -> Tensor:
    """Contract the rightmost index of ``left`` with the leftmost of ``right``.

    For ranks k and m the result has rank k + m - 2:

        result[i..., j...] = sum_s left[i..., s] * right[s, j...]

    When both operands are rank 1 the reduction would be rank 0; the scalar is
    returned as a rank-1 tensor of dimension 1 instead.
    """
    k_dim = left.shape[-1]
    m_dim = right.shape[0]
    if k_dim != m_dim:
        raise DimensionMismatchError(
            f"cannot contract: left rightmost dimension {k_dim} != right leftmost dimension {m_dim}"
        )
    out = np.tensordot(left.array, right.array, axes=([left.rank - 1], [0]))
    if out.ndim == 0:
        out = out.reshape(1)
    result = Tensor(out)
    assert result.rank == max(left.rank + right.rank - 2, 1)
    return result


def _check_same_shape(a: Tensor, b: Tensor, op: str) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"{op} requires identical shapes, got {a.shape} and {b.shape}")


def elementwise_min(a: Tensor, b: Tensor) -> Tensor:
    """Pointwise minimum; on characteristic vectors this is set intersection."""
    _check_same_shape(a, b, "elementwise_min")
    return Tensor(np.minimum(a.array, b.array))


def elementwise_max(a: Tensor, b: Tensor) -> Tensor:
    """Pointwise maximum; on characteristic vectors this is set union."""
    _check_same_shape(a, b, "elementwise_max")
    return Tensor(np.maximum(a.array, b.array))


def diag_extract(m: Tensor) -> Tensor:
    """Diagonal of a square rank-2 tensor as a rank-1 tensor.

    For diagonal matrices this equals contraction with the all-ones vector;
    the direct read avoids the multiply-add round trip.
    """
    if m.rank != 2:
        raise RankError(f"diag_extract requires rank 2, got rank {m.rank}")
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"diag_extract requires a square matrix, got {m.shape}")
    return Tensor(np.diagonal(m.array).copy())


def diag_build(v: Tensor) -> Tensor:
    """Square rank-2 tensor with ``v`` on the diagonal, zeros elsewhere."""
    if v.rank != 1:
        raise RankError(f"diag_build requires rank 1, got rank {v.rank}")
    return Tensor(np.diag(v.array))
