"""Formula compilation to contraction plans, execution, and oracle checking.

A :class:`ContractionPlan` is a flat register program: each step loads a
model-derived tensor or combines registers with one of five instructions
(contract, pointwise min/max, subset test, nonemptiness test).  Plans are
compiled bottom-up with no sharing, so the executed steps read off as the
evaluation trace of the formula; auditability is deliberately preferred over
speed.  Dimension preconditions of every step are checked at compile time
from the model's domain size.

:func:`oracle_eval` is the independent referee: it evaluates the same bound
AST directly over the model's sets with classical connective semantics and
never touches a tensor.  :func:`equivalence_sweep` runs both paths over
generated instances and reports every disagreement, dumping re-runnable
model/formula files when given an artifact directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import dsl
from .errors import DimensionMismatchError, PlanTooLargeError
from .model import Model, TruthVec, encode_atom
from .sets import SetVector, build_set_predicate, exists, forall
from .tensor import (
    DEFAULT_ELEMENT_CAP,
    Tensor,
    contract,
    elementwise_max,
    elementwise_min,
    ones,
)
from .truth import build_predicate, build_relation, connective_tensor

#: Covector selecting the true-row of a predicate matrix; turning a partially
#: applied relation into the characteristic vector of its extension.
_TRUE_ROW_PROBE = Tensor([1.0, 0.0])


@dataclass(frozen=True)
class Instr:
    """One plan step writing register ``dest``.

    ``load`` carries a tensor payload and a note naming what was loaded;
    the other ops read the registers in ``srcs``.
    """

    op: str  # "load" | "contract" | "emin" | "emax" | "forall" | "exists"
    dest: int
    srcs: tuple[int, ...] = ()
    payload: Tensor | None = None
    note: str = ""


@dataclass(frozen=True)
class ContractionPlan:
    """Straight-line tensor program with a single truth-vector result."""

    steps: tuple[Instr, ...]
    result: int
    register_shapes: tuple[tuple[int, ...], ...]

    @property
    def register_count(self) -> int:
        return len(self.register_shapes)

    def describe(self) -> str:
        lines = []
        for instr in self.steps:
            shape = self.register_shapes[instr.dest]
            if instr.op == "load":
                lines.append(f"r{instr.dest} <- load {instr.note}  shape {shape}")
            else:
                srcs = " ".join(f"r{s}" for s in instr.srcs)
                lines.append(f"r{instr.dest} <- {instr.op} {srcs}  shape {shape}")
        lines.append(f"result: r{self.result}")
        return "\n".join(lines)


class _PlanBuilder:
    def __init__(self, m: Model, cap: int):
        self.model = m
        self.cap = cap
        self.steps: list[Instr] = []
        self.shapes: list[tuple[int, ...]] = []

    def load(self, tensor: Tensor, note: str) -> int:
        reg = len(self.shapes)
        self.shapes.append(tensor.shape)
        self.steps.append(Instr("load", reg, payload=tensor, note=note))
        return reg

    def emit(self, op: str, srcs: tuple[int, ...], shape: tuple[int, ...]) -> int:
        reg = len(self.shapes)
        self.shapes.append(shape)
        self.steps.append(Instr(op, reg, srcs=srcs))
        return reg

    def contract(self, a: int, b: int) -> int:
        left, right = self.shapes[a], self.shapes[b]
        if left[-1] != right[0]:
            raise DimensionMismatchError(
                f"plan step would contract shapes {left} and {right}"
            )
        shape = left[:-1] + right[1:]
        return self.emit("contract", (a, b), shape or (1,))

    def pointwise(self, op: str, a: int, b: int) -> int:
        if self.shapes[a] != self.shapes[b]:
            raise DimensionMismatchError(
                f"plan step {op} needs equal shapes, got {self.shapes[a]} and {self.shapes[b]}"
            )
        return self.emit(op, (a, b), self.shapes[a])

    def load_relation(self, name: str) -> int:
        decl = self.model.relation_decl(name)
        size = 2 * self.model.domain_size**decl.arity
        if size > self.cap:
            raise PlanTooLargeError(
                f"relation {name!r} needs a tensor of {size} elements, above the cap of {self.cap}"
            )
        built = build_relation(self.model, name, cap=self.cap)
        return self.load(built.tensor, f"rel:{name}")

    def lower_formula(self, f: dsl.Formula) -> int:
        match f:
            case dsl.Atom(pred, arg):
                p = self.load(build_predicate(self.model, pred).tensor, f"pred:{pred}")
                a = self.load(encode_atom(self.model, arg), f"atom:{arg}")
                return self.contract(p, a)
            case dsl.RelAtom(rel, args):
                reg = self.load_relation(rel)
                for arg in args:
                    a = self.load(encode_atom(self.model, arg), f"atom:{arg}")
                    reg = self.contract(reg, a)
                return reg
            case dsl.Not(body):
                b = self.lower_formula(body)
                t = self.load(connective_tensor("not").tensor, "conn:not")
                return self.contract(t, b)
            case dsl.And() | dsl.Or() | dsl.Implies():
                kind = {dsl.And: "and", dsl.Or: "or", dsl.Implies: "implies"}[type(f)]
                left = self.lower_formula(f.left)
                right = self.lower_formula(f.right)
                t = self.load(connective_tensor(kind).tensor, f"conn:{kind}")
                return self.contract(self.contract(t, left), right)
            case dsl.ForAll(subset, superset):
                x = self.lower_set(subset)
                y = self.lower_set(superset)
                return self.emit("forall", (x, y), (2,))
            case dsl.Exists(body):
                x = self.lower_set(body)
                return self.emit("exists", (x,), (2,))
        raise TypeError(f"not a formula node: {f!r}")

    def lower_set(self, e: dsl.SetExpr) -> int:
        match e:
            case dsl.PredSet(name):
                p = self.load(
                    build_set_predicate(self.model, name).tensor, f"set-pred:{name}"
                )
                one = self.load(ones(self.model.domain_size), "ones")
                return self.contract(p, one)
            case dsl.PartialRel(rel, bound):
                reg = self.load_relation(rel)
                for arg in bound:
                    a = self.load(encode_atom(self.model, arg), f"atom:{arg}")
                    reg = self.contract(reg, a)
                probe = self.load(_TRUE_ROW_PROBE, "true-row-probe")
                return self.contract(probe, reg)
            case dsl.Intersect(left, right):
                return self.pointwise("emin", self.lower_set(left), self.lower_set(right))
            case dsl.Union(left, right):
                return self.pointwise("emax", self.lower_set(left), self.lower_set(right))
        raise TypeError(f"not a set expression node: {e!r}")


def compile_formula(
    f: dsl.Formula, m: Model, *, cap: int = DEFAULT_ELEMENT_CAP
) -> ContractionPlan:
    """Compile a bound formula into a contraction plan over ``m``."""
    builder = _PlanBuilder(m, cap)
    result = builder.lower_formula(f)
    if builder.shapes[result] != (2,):
        raise DimensionMismatchError(
            f"plan result register has shape {builder.shapes[result]}, expected (2,)"
        )
    return ContractionPlan(tuple(builder.steps), result, tuple(builder.shapes))


def execute(plan: ContractionPlan) -> TruthVec:
    """Run a plan's steps over a register file and return the truth vector.

    Tensor-level errors propagate unchanged; for compiled plans they are
    unreachable, so any occurrence signals an internal bug.
    """
    registers: list[Tensor | None] = [None] * plan.register_count
    for instr in plan.steps:
        match instr.op:
            case "load":
                value = instr.payload
            case "contract":
                value = contract(registers[instr.srcs[0]], registers[instr.srcs[1]])
            case "emin":
                value = elementwise_min(registers[instr.srcs[0]], registers[instr.srcs[1]])
            case "emax":
                value = elementwise_max(registers[instr.srcs[0]], registers[instr.srcs[1]])
            case "forall":
                x = SetVector(registers[instr.srcs[0]])
                y = SetVector(registers[instr.srcs[1]])
                value = forall(x, y).to_tensor()
            case "exists":
                value = exists(SetVector(registers[instr.srcs[0]])).to_tensor()
            case _:
                raise ValueError(f"unknown plan instruction {instr.op!r}")
        registers[instr.dest] = value
    return TruthVec.from_tensor(registers[plan.result])


def evaluate(f: dsl.Formula, m: Model, *, cap: int = DEFAULT_ELEMENT_CAP) -> TruthVec:
    """Compile and execute in one call."""
    return execute(compile_formula(f, m, cap=cap))


# ---------------------------------------------------------------------------
# Set-theoretic oracle: no tensors anywhere below this line.


def oracle_set_eval(e: dsl.SetExpr, m: Model) -> frozenset[int]:
    """The set of atom indices denoted by a set expression, computed directly."""
    match e:
        case dsl.PredSet(name):
            return m.predicate_extension(name)
        case dsl.PartialRel(rel, bound):
            decl = m.relation_decl(rel)
            prefix = tuple(m.atom_index(b) for b in bound)
            return frozenset(tup[-1] for tup in decl.tuples if tup[:-1] == prefix)
        case dsl.Intersect(left, right):
            return oracle_set_eval(left, m) & oracle_set_eval(right, m)
        case dsl.Union(left, right):
            return oracle_set_eval(left, m) | oracle_set_eval(right, m)
    raise TypeError(f"not a set expression node: {e!r}")


def oracle_eval(f: dsl.Formula, m: Model) -> bool:
    """Classical truth value of a bound formula, straight off the model's sets."""
    match f:
        case dsl.Atom(pred, arg):
            return m.atom_index(arg) in m.predicate_extension(pred)
        case dsl.RelAtom(rel, args):
            indices = tuple(m.atom_index(a) for a in args)
            return indices in m.relation_decl(rel).tuples
        case dsl.Not(body):
            return not oracle_eval(body, m)
        case dsl.And(left, right):
            return oracle_eval(left, m) and oracle_eval(right, m)
        case dsl.Or(left, right):
            return oracle_eval(left, m) or oracle_eval(right, m)
        case dsl.Implies(left, right):
            return (not oracle_eval(left, m)) or oracle_eval(right, m)
        case dsl.ForAll(subset, superset):
            return oracle_set_eval(subset, m) <= oracle_set_eval(superset, m)
        case dsl.Exists(body):
            return len(oracle_set_eval(body, m)) > 0
    raise TypeError(f"not a formula node: {f!r}")


# ---------------------------------------------------------------------------
# Equivalence sweep


@dataclass(frozen=True)
class SweepConfig:
    max_domain: int = 3
    max_depth: int = 3
    seed: int = 0
    count: int = 1000


@dataclass(frozen=True)
class OracleVerdict:
    """Both verdicts for one instance; ``agree`` ties them together."""

    index: int
    model_text: str
    formula_text: str
    tensor_result: TruthVec
    oracle_result: bool
    agree: bool

    def record(self, seed: int) -> str:
        return json.dumps(
            {
                "seed": seed,
                "index": self.index,
                "formula": self.formula_text,
                "tensor": "T" if self.tensor_result.as_bool() else "F",
                "oracle": self.oracle_result,
                "agree": self.agree,
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class SweepReport:
    config: SweepConfig
    verdicts: tuple[OracleVerdict, ...]

    @property
    def disagreements(self) -> tuple[OracleVerdict, ...]:
        return tuple(v for v in self.verdicts if not v.agree)

    def to_lines(self) -> list[str]:
        return [v.record(self.config.seed) for v in self.verdicts]

    def summary(self) -> str:
        return (
            f"instances={len(self.verdicts)} "
            f"agreements={len(self.verdicts) - len(self.disagreements)} "
            f"disagreements={len(self.disagreements)} "
            f"seed={self.config.seed}"
        )


def equivalence_sweep(
    config: SweepConfig, artifact_dir: str | Path | None = None
) -> SweepReport:
    """Run tensor evaluation against the oracle on seeded random instances.

    Every disagreement becomes a re-runnable pair of files under
    ``artifact_dir`` when one is given.
    """
    import random

    from .generate import random_formula, random_model

    rng = random.Random(config.seed)
    verdicts = []
    for index in range(config.count):
        m = random_model(rng, max_domain=config.max_domain)
        f = random_formula(rng, m, max_depth=config.max_depth)
        tensor_result = evaluate(f, m)
        oracle_result = oracle_eval(f, m)
        agree = tensor_result.as_bool() == oracle_result
        verdict = OracleVerdict(
            index, dsl.print_model(m), dsl.print_formula(f), tensor_result, oracle_result, agree
        )
        if not agree and artifact_dir is not None:
            directory = Path(artifact_dir)
            directory.mkdir(parents=True, exist_ok=True)
            (directory / f"disagreement_{index}.model").write_text(verdict.model_text)
            (directory / f"disagreement_{index}.formula").write_text(
                verdict.formula_text + "\n"
            )
        verdicts.append(verdict)
    return SweepReport(config, tuple(verdicts))
