"""Shared enumeration helpers for the oracle-equivalence suites."""

import itertools

from tensorlogic.dsl import And, Exists, ForAll, Implies, Intersect, Not, Or, Union
from tensorlogic.model import Model


def formulas_up_to_depth(depth, leaves):
    """Every connective formula of AST depth <= depth over the given leaves."""
    if depth <= 1:
        return list(leaves)
    smaller = formulas_up_to_depth(depth - 1, leaves)
    out = list(leaves)
    out.extend(Not(f) for f in smaller)
    for combine in (And, Or, Implies):
        out.extend(combine(f, g) for f in smaller for g in smaller)
    return out


def set_exprs_up_to_depth(depth, leaves):
    """Every set expression of depth <= depth over the given leaves."""
    if depth <= 1:
        return list(leaves)
    smaller = set_exprs_up_to_depth(depth - 1, leaves)
    out = list(leaves)
    for combine in (Intersect, Union):
        out.extend(combine(e, g) for e in smaller for g in smaller)
    return out


def quantified_formulas(set_exprs):
    """All root-quantified formulas over the given set expressions."""
    out = [Exists(e) for e in set_exprs]
    out.extend(ForAll(x, y) for x in set_exprs for y in set_exprs)
    return out


def leaf_valuation_models():
    """Eight two-atom models realizing every truth assignment to the leaves
    p(a), q(b), r(a, b)."""
    models = []
    for p_holds, q_holds, r_holds in itertools.product((False, True), repeat=3):
        models.append(
            Model.from_names(
                ["a", "b"],
                predicates={
                    "p": ["a"] if p_holds else [],
                    "q": ["b"] if q_holds else [],
                },
                relations={"r": (2, [("a", "b")] if r_holds else [])},
            )
        )
    return models


def signature_model_count(domain_size):
    """Number of distinct 0/1 extension combinations for the fixed signature
    of two predicates and one binary relation."""
    return 4**domain_size * 2 ** (domain_size * domain_size)


def signature_model(domain_size, index):
    """Decode an index into one model of the fixed two-predicate
    one-binary-relation signature; indices enumerate every extension combo."""
    atoms = [f"x{i}" for i in range(domain_size)]
    pairs = list(itertools.product(atoms, repeat=2))
    n_ext = 2**domain_size
    p_bits = index % n_ext
    index //= n_ext
    q_bits = index % n_ext
    r_bits = index // n_ext
    return Model.from_names(
        atoms,
        predicates={
            "p": [a for i, a in enumerate(atoms) if p_bits >> i & 1],
            "q": [a for i, a in enumerate(atoms) if q_bits >> i & 1],
        },
        relations={"r": (2, [pair for i, pair in enumerate(pairs) if r_bits >> i & 1])},
    )


def signature_models(domain_size):
    """Every model of the fixed signature over the given domain size."""
    return [
        signature_model(domain_size, i) for i in range(signature_model_count(domain_size))
    ]
