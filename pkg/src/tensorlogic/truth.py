"""Truth-functional calculus: predicates and relations as truth-valued tensors.

A predicate over a domain of size n becomes a 2 x n matrix whose column j is
the "true" basis vector when atom j satisfies the predicate and the "false"
basis vector otherwise; applying the predicate to a one-hot atom vector is a
single contraction.  An n-ary relation becomes a tensor of shape
(2, n, ..., n) holding one truth column per argument tuple.

Argument order convention: the rightmost domain index of a relation tensor
corresponds to the first argument of the relation.  Contraction consumes the
rightmost index, so feeding arguments in surface order (subject first) is
correct, and partially applied relations remain well-formed relational
tensors.

Connectives are constant tensors over the truth space: negation is the 2 x 2
swap matrix, and each binary connective is a 2 x 2 x 2 tensor whose last index
is contracted first and thereby selects a 2 x 2 block with the connective's
left argument.  Every block column sums to 1, which makes all connectives
preserve normalized probabilistic truth vectors, not just crisp ones.
"""

from __future__ import annotations

import enum
from dataclasses import InitVar, dataclass

import numpy as np

from .errors import (
    ArityError,
    DimensionMismatchError,
    ElementCapError,
    InvalidPredicateError,
    NonOneHotError,
)
from .model import Model, TruthVec
from .tensor import DEFAULT_ELEMENT_CAP, FLOAT_TOL, Tensor, contract

Mode = str  # "crisp" | "prob"


def _require_mode(mode: str) -> None:
    if mode not in ("crisp", "prob"):
        raise ValueError(f"mode must be 'crisp' or 'prob', got {mode!r}")


@dataclass(frozen=True)
class PredicateMatrix:
    """Tensor of shape (2, n): column j is the truth vector of atom j.

    Row 0 plus row 1 is the all-ones vector; equivalently every column is
    exactly one of the two truth basis vectors.
    """

    tensor: Tensor
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if self.tensor.rank != 2 or self.tensor.shape[0] != 2:
            raise InvalidPredicateError(
                f"a predicate matrix has shape (2, n), got {self.tensor.shape}"
            )
        if validate:
            arr = self.tensor.array
            ok = np.all((arr == 0.0) | (arr == 1.0)) and np.all(arr[0] + arr[1] == 1.0)
            if not ok:
                raise InvalidPredicateError(
                    "every predicate matrix column must be a truth basis vector"
                )

    @property
    def domain_size(self) -> int:
        return self.tensor.shape[1]


@dataclass(frozen=True)
class RelationTensor:
    """Tensor of shape (2, n, ..., n) encoding an n-ary relation.

    For every fixed tuple of domain indices the two truth slots are 0/1 and
    sum to 1.  The rightmost domain index is the relation's first argument.
    """

    arity: int
    tensor: Tensor
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        shape = self.tensor.shape
        if self.arity < 2:
            raise ArityError(f"relation tensor arity must be >= 2, got {self.arity}")
        if len(shape) != self.arity + 1 or shape[0] != 2 or len(set(shape[1:])) > 1:
            raise InvalidPredicateError(
                f"an arity-{self.arity} relation tensor has shape (2, n, ..., n), got {shape}"
            )
        if validate:
            arr = self.tensor.array
            ok = np.all((arr == 0.0) | (arr == 1.0)) and np.all(arr[0] + arr[1] == 1.0)
            if not ok:
                raise InvalidPredicateError(
                    "every relation tensor truth column must be a truth basis vector"
                )

    @property
    def domain_size(self) -> int:
        return self.tensor.shape[1]


class Connective(enum.Enum):
    NOT = "not"
    AND = "and"
    OR = "or"
    IMPLIES = "implies"


@dataclass(frozen=True)
class ConnectiveTensor:
    """A logical connective as a constant tensor over the truth space."""

    kind: Connective
    tensor: Tensor

    def __post_init__(self):
        arr = self.tensor.array
        if self.kind is Connective.NOT:
            if self.tensor.shape != (2, 2):
                raise InvalidPredicateError("negation tensor must have shape (2, 2)")
            columns = arr
        else:
            if self.tensor.shape != (2, 2, 2):
                raise InvalidPredicateError("binary connective tensors must have shape (2, 2, 2)")
            columns = arr.reshape(2, 4)
        if not np.all(columns.sum(axis=0) == 1.0):
            raise InvalidPredicateError("connective tensor columns must each sum to 1")


def _binary_blocks(block_true: list[list[float]], block_false: list[list[float]]) -> Tensor:
    # Last index selects the block, so contracting with the first argument
    # ([1,0] or [0,1]) picks the matrix applied to the second argument.
    return Tensor(np.stack([np.array(block_true), np.array(block_false)], axis=-1))


NEGATION = ConnectiveTensor(Connective.NOT, Tensor([[0.0, 1.0], [1.0, 0.0]]))
CONJUNCTION = ConnectiveTensor(
    Connective.AND, _binary_blocks([[1, 0], [0, 1]], [[0, 0], [1, 1]])
)
DISJUNCTION = ConnectiveTensor(
    Connective.OR, _binary_blocks([[1, 1], [0, 0]], [[1, 0], [0, 1]])
)
IMPLICATION = ConnectiveTensor(
    Connective.IMPLIES, _binary_blocks([[1, 0], [0, 1]], [[1, 1], [0, 0]])
)

CONNECTIVES: dict[Connective, ConnectiveTensor] = {
    Connective.NOT: NEGATION,
    Connective.AND: CONJUNCTION,
    Connective.OR: DISJUNCTION,
    Connective.IMPLIES: IMPLICATION,
}


def connective_tensor(kind: Connective | str) -> ConnectiveTensor:
    if isinstance(kind, str):
        try:
            kind = Connective(kind)
        except ValueError:
            raise ValueError(f"unknown connective {kind!r}") from None
    return CONNECTIVES[kind]


def build_predicate(m: Model, name: str) -> PredicateMatrix:
    """Predicate matrix for a declared predicate: column i is true iff atom i
    is in the predicate's extension."""
    extension = m.predicate_extension(name)
    n = m.domain_size
    arr = np.zeros((2, n))
    for i in range(n):
        arr[0 if i in extension else 1, i] = 1.0
    return PredicateMatrix(Tensor(arr), validate=False)


def build_relation(
    m: Model, name: str, *, cap: int = DEFAULT_ELEMENT_CAP
) -> RelationTensor | PredicateMatrix:
    """Relation tensor for a declared relation.

    A tuple (t1, ..., tn) sets the "true" slot at domain indices
    (tn, ..., t1): reversed, so that contraction consumes arguments
    subject-first.  An arity-1 declaration yields a predicate matrix, the
    shape an arity-2 relation reaches after one partial application.
    """
    decl = m.relation_decl(name)
    n = m.domain_size
    shape = (2,) + (n,) * decl.arity
    size = 2 * n**decl.arity
    if size > cap:
        raise ElementCapError(
            f"relation tensor for {name!r} needs {size} elements, above the cap of {cap}"
        )
    arr = np.zeros(shape)
    arr[1] = 1.0
    for tup in decl.tuples:
        arr[(0,) + tuple(reversed(tup))] = 1.0
        arr[(1,) + tuple(reversed(tup))] = 0.0
    if decl.arity == 1:
        return PredicateMatrix(Tensor(arr, cap=cap), validate=False)
    return RelationTensor(decl.arity, Tensor(arr, cap=cap), validate=False)


def _check_argument(arg: Tensor, domain_size: int, mode: Mode) -> bool:
    """Validate a domain-space argument; returns True when the result must be
    flagged as extrapolated (prob mode, outside the one-hot convex hull)."""
    if arg.rank != 1 or arg.shape[0] != domain_size:
        raise DimensionMismatchError(
            f"argument must be a vector of length {domain_size}, got shape {arg.shape}"
        )
    values = arg.array
    if mode == "crisp":
        is_one_hot = (
            np.count_nonzero(np.abs(values - 1.0) <= FLOAT_TOL) == 1
            and np.count_nonzero(np.abs(values) > FLOAT_TOL) == 1
        )
        if not is_one_hot:
            raise NonOneHotError(f"crisp application requires a one-hot argument, got {values.tolist()}")
        return False
    convex = bool(np.all(values >= -FLOAT_TOL) and abs(values.sum() - 1.0) <= FLOAT_TOL)
    return not convex


def apply_predicate(p: PredicateMatrix, arg: Tensor, mode: Mode = "crisp") -> TruthVec:
    """Truth value of the predicate at a one-hot atom vector.

    In "prob" mode the argument may be any convex combination of one-hot
    vectors; anything else is still computed by linearity but the result is
    flagged extrapolated.
    """
    _require_mode(mode)
    extrapolated = _check_argument(arg, p.domain_size, mode)
    out = contract(p.tensor, arg)
    return TruthVec.from_tensor(out, check=not extrapolated, extrapolated=extrapolated)


def apply_relation(r: RelationTensor, args: list[Tensor], mode: Mode = "crisp") -> TruthVec:
    """Truth value of the relation at a full argument tuple, first argument
    first."""
    _require_mode(mode)
    if len(args) != r.arity:
        raise ArityError(f"relation of arity {r.arity} applied to {len(args)} arguments")
    extrapolated = False
    out = r.tensor
    for arg in args:
        extrapolated |= _check_argument(arg, r.domain_size, mode)
        out = contract(out, arg)
    return TruthVec.from_tensor(out, check=not extrapolated, extrapolated=extrapolated)


def partial_apply(
    r: RelationTensor, prefix_args: list[Tensor], mode: Mode = "crisp"
) -> RelationTensor | PredicateMatrix:
    """Contract a relation with a proper prefix of its arguments.

    Binding the first k of n arguments leaves an arity-(n-k) relational
    tensor; with one open slot left the result is a predicate matrix.  The
    outputs inherit validity from the inputs, so no re-validation runs.
    """
    _require_mode(mode)
    if len(prefix_args) >= r.arity:
        raise ArityError(
            f"partial application needs fewer than {r.arity} arguments, got {len(prefix_args)}"
        )
    out = r.tensor
    for arg in prefix_args:
        _check_argument(arg, r.domain_size, mode)
        out = contract(out, arg)
    remaining = r.arity - len(prefix_args)
    if remaining == 1:
        return PredicateMatrix(out, validate=False)
    return RelationTensor(remaining, out, validate=False)


def connective_not(v: TruthVec) -> TruthVec:
    """Negation: contraction with the swap matrix."""
    out = contract(NEGATION.tensor, v.to_tensor())
    return TruthVec.from_tensor(out, check=False, extrapolated=v.extrapolated)


def connective_binary(kind: Connective | str, a: TruthVec, b: TruthVec) -> TruthVec:
    """Binary connective applied as two contractions, first argument first.

    For implication the first argument is the antecedent.  On crisp inputs
    this reproduces the classical truth tables; on normalized probabilistic
    inputs the output stays normalized.
    """
    conn = connective_tensor(kind)
    if conn.kind is Connective.NOT:
        raise ValueError("negation is unary; use connective_not")
    out = contract(contract(conn.tensor, a.to_tensor()), b.to_tensor())
    return TruthVec.from_tensor(out, check=False, extrapolated=a.extrapolated or b.extrapolated)
