"""Text formats for models and formulas, with parsers and printers.

Model files are newline-delimited statements; ``#`` starts a comment that
runs to the end of the line::

    domain john chris tom          # one statement, declaration order matters
    pred mathematician: john chris # extension may be empty
    rel loves/2: (john, john) (chris, john)

Formulas are whitespace-insensitive.  Connective precedence from tightest to
loosest is ``~``, ``&``, ``|``, ``->``; the arrow is right-associative, the
other binaries left-associative::

    formula   := 'all' setarg setarg | 'exists' setarg | implies
    implies   := or ('->' implies)?
    or        := and ('|' and)*
    and       := unary ('&' unary)*
    unary     := '~' unary | primary
    primary   := name '(' name (',' name)* ')' | '(' implies ')'
    setarg    := predname | relname '(' (name ',')* '_' ')' | '(' setexpr ')'
    setexpr   := setand ('|' setand)*
    setand    := setarg ('&' setarg)*

Predicate and relation namespaces are disjoint, so the parser can tell a bare
predicate name from a relation application in set position without lookahead.

Set expressions appear only under the two quantifier keywords; a compound set
expression in argument position must be parenthesized, e.g.
``exists (brown & dog)``.  Partial application of a relation leaves exactly
one open slot, written ``_`` in the last argument position, e.g.
``exists loves(john, _)`` for "there is someone John loves".  Quantifiers are
only legal at the very top of a formula; anywhere else they raise
:class:`EmbeddedQuantifierError`.

``domain``, ``pred``, ``rel``, ``all`` and ``exists`` are reserved words and
cannot name atoms, predicates, or relations.  Names start with a letter and
continue with letters, digits, or underscores.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ArityError,
    DuplicateNameError,
    EmbeddedQuantifierError,
    ParseError,
    UnknownAtomError,
    UnknownNameError,
)
from .model import Model

RESERVED = frozenset({"domain", "pred", "rel", "all", "exists"})


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Atom:
    """Predicate applied to a single named atom."""

    pred: str
    arg: str


@dataclass(frozen=True)
class RelAtom:
    """Relation applied to a full tuple of named atoms, first argument first."""

    rel: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class PredSet:
    """A predicate's extension, used as a set."""

    name: str


@dataclass(frozen=True)
class PartialRel:
    """Relation with all arguments but the last bound; denotes the set of
    atoms that fill the open slot."""

    rel: str
    bound: tuple[str, ...]


@dataclass(frozen=True)
class Intersect:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Union:
    left: "SetExpr"
    right: "SetExpr"


SetExpr = PredSet | PartialRel | Intersect | Union


@dataclass(frozen=True)
class ForAll:
    """Subset assertion: every member of ``subset`` is in ``superset``."""

    subset: SetExpr
    superset: SetExpr


@dataclass(frozen=True)
class Exists:
    """Nonemptiness assertion for a set expression."""

    body: SetExpr


Formula = Atom | RelAtom | Not | And | Or | Implies | ForAll | Exists


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"""(?P<ws>[^\S\n]+)
      | (?P<comment>\#[^\n]*)
      | (?P<newline>\n)
      | (?P<arrow>->)
      | (?P<name>[A-Za-z][A-Za-z0-9_]*)
      | (?P<int>\d+)
      | (?P<underscore>_)
      | (?P<sym>[(),:/~&|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # name | int | underscore | arrow | newline | ( ) , : / ~ & | eof
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        value = match.group()
        column = pos - line_start + 1
        if kind == "newline":
            tokens.append(_Token("newline", value, line, column))
            line += 1
            line_start = match.end()
        elif kind == "sym":
            tokens.append(_Token(value, value, line, column))
        elif kind not in ("ws", "comment"):
            tokens.append(_Token(kind, value, line, column))
        pos = match.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> _Token:
        return self._tokens[self._pos]

    def advance(self) -> _Token:
        token = self._tokens[self._pos]
        if token.kind != "eof":
            self._pos += 1
        return token

    def expect(self, kind: str, what: str | None = None) -> _Token:
        token = self.peek()
        if token.kind != kind:
            expected = what or f"{kind!r}"
            found = repr(token.text) if token.text else "end of input"
            raise ParseError(f"expected {expected}, found {found}", token.line, token.column)
        return self.advance()

    def error(self, message: str) -> ParseError:
        token = self.peek()
        return ParseError(message, token.line, token.column)


def _expect_name(stream: _TokenStream, what: str) -> _Token:
    token = stream.expect("name", what)
    if token.text in RESERVED:
        raise ParseError(f"{token.text!r} is a reserved word", token.line, token.column)
    return token


# ---------------------------------------------------------------------------
# Model format


def parse_model(text: str) -> Model:
    """Parse model text into a validated :class:`Model`."""
    tokens = _tokenize(text)
    statements: list[list[_Token]] = []
    current: list[_Token] = []
    for token in tokens:
        if token.kind in ("newline", "eof"):
            if current:
                statements.append(current)
                current = []
        else:
            current.append(token)

    if not statements:
        raise ParseError("empty model: expected a 'domain' statement", 1, 1)

    stream = _TokenStream(statements[0] + [_Token("eof", "", statements[0][-1].line, 0)])
    head = stream.peek()
    if not (head.kind == "name" and head.text == "domain"):
        raise ParseError("model must start with a 'domain' statement", head.line, head.column)
    stream.advance()
    atom_names: list[str] = []
    while stream.peek().kind != "eof":
        atom_names.append(_expect_name(stream, "an atom name").text)
    if not atom_names:
        raise stream.error("'domain' needs at least one atom name")

    predicates: dict[str, list[str]] = {}
    relations: dict[str, tuple[int, list[tuple[str, ...]]]] = {}
    for statement in statements[1:]:
        stream = _TokenStream(statement + [_Token("eof", "", statement[-1].line, 0)])
        head = stream.peek()
        if head.kind != "name" or head.text not in ("pred", "rel", "domain"):
            raise ParseError(
                "expected a 'pred' or 'rel' statement", head.line, head.column
            )
        if head.text == "domain":
            raise ParseError("only one 'domain' statement is allowed", head.line, head.column)
        stream.advance()
        if head.text == "pred":
            name_token = _expect_name(stream, "a predicate name")
            if name_token.text in predicates or name_token.text in relations:
                raise DuplicateNameError(f"symbol {name_token.text!r} declared twice")
            stream.expect(":")
            extension: list[str] = []
            while stream.peek().kind != "eof":
                extension.append(_expect_name(stream, "an atom name").text)
            predicates[name_token.text] = extension
        else:
            name_token = _expect_name(stream, "a relation name")
            if name_token.text in predicates or name_token.text in relations:
                raise DuplicateNameError(f"symbol {name_token.text!r} declared twice")
            stream.expect("/")
            arity_token = stream.expect("int", "an arity")
            arity = int(arity_token.text)
            if arity < 1:
                raise ArityError(
                    f"relation {name_token.text!r} declared with arity {arity}"
                )
            stream.expect(":")
            tuples: list[tuple[str, ...]] = []
            while stream.peek().kind != "eof":
                stream.expect("(")
                members = [_expect_name(stream, "an atom name").text]
                while stream.peek().kind == ",":
                    stream.advance()
                    members.append(_expect_name(stream, "an atom name").text)
                stream.expect(")")
                if len(members) != arity:
                    raise ArityError(
                        f"tuple {tuple(members)} has length {len(members)}, "
                        f"relation {name_token.text!r} has arity {arity}"
                    )
                tuples.append(tuple(members))
            relations[name_token.text] = (arity, tuples)

    return Model.from_names(atom_names, predicates, relations)


def print_model(m: Model) -> str:
    """Canonical model text; re-parses to an equal model."""
    lines = ["domain " + " ".join(m.atom_names)]
    index_to_name = m.atom_names
    for name in sorted(m.predicates):
        members = " ".join(index_to_name[i] for i in sorted(m.predicates[name]))
        lines.append(f"pred {name}:" + (f" {members}" if members else ""))
    for name in sorted(m.relations):
        decl = m.relations[name]
        tuples = " ".join(
            "(" + ", ".join(index_to_name[i] for i in tup) + ")"
            for tup in sorted(decl.tuples)
        )
        lines.append(f"rel {name}/{decl.arity}:" + (f" {tuples}" if tuples else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Formula parsing


class _FormulaParser:
    def __init__(self, tokens: list[_Token], m: Model):
        self.stream = _TokenStream([t for t in tokens if t.kind != "newline"])
        self.model = m

    def parse(self) -> Formula:
        token = self.stream.peek()
        if token.kind == "name" and token.text in ("all", "exists"):
            self.stream.advance()
            if token.text == "all":
                subset = self.set_arg()
                superset = self.set_arg()
                formula: Formula = ForAll(subset, superset)
            else:
                formula = Exists(self.set_arg())
        else:
            formula = self.implies()
        trailing = self.stream.peek()
        if trailing.kind != "eof":
            raise ParseError(
                f"unexpected trailing input {trailing.text!r}", trailing.line, trailing.column
            )
        return formula

    # -- truth layer ------------------------------------------------------

    def implies(self) -> Formula:
        left = self.or_chain()
        if self.stream.peek().kind == "arrow":
            self.stream.advance()
            return Implies(left, self.implies())
        return left

    def or_chain(self) -> Formula:
        node = self.and_chain()
        while self.stream.peek().kind == "|":
            self.stream.advance()
            node = Or(node, self.and_chain())
        return node

    def and_chain(self) -> Formula:
        node = self.unary()
        while self.stream.peek().kind == "&":
            self.stream.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.stream.peek().kind == "~":
            self.stream.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        token = self.stream.peek()
        if token.kind == "(":
            self.stream.advance()
            inner = self.implies()
            self.stream.expect(")")
            return inner
        if token.kind == "name" and token.text in ("all", "exists"):
            raise EmbeddedQuantifierError(
                f"quantifier {token.text!r} is only allowed at the root of a formula",
                token.line,
                token.column,
            )
        name = _expect_name(self.stream, "a predicate or relation application")
        self.stream.expect("(", "'(' after a predicate or relation name")
        args = [self.atom_name()]
        while self.stream.peek().kind == ",":
            self.stream.advance()
            args.append(self.atom_name())
        self.stream.expect(")")
        return self.bind_application(name, tuple(args))

    def atom_name(self) -> str:
        token = _expect_name(self.stream, "an atom name")
        if token.text not in self.model.atom_names:
            raise UnknownAtomError(token.text)
        return token.text

    def bind_application(self, name: _Token, args: tuple[str, ...]) -> Formula:
        if name.text in self.model.predicates:
            if len(args) != 1:
                raise ArityError(
                    f"predicate {name.text!r} takes 1 argument, got {len(args)}"
                )
            return Atom(name.text, args[0])
        if name.text in self.model.relations:
            arity = self.model.relations[name.text].arity
            if len(args) != arity:
                raise ArityError(
                    f"relation {name.text!r} has arity {arity}, got {len(args)} arguments"
                )
            return RelAtom(name.text, args)
        raise UnknownNameError(name.text, "predicate or relation")

    # -- set layer ---------------------------------------------------------

    def set_arg(self) -> SetExpr:
        token = self.stream.peek()
        if token.kind == "(":
            self.stream.advance()
            inner = self.set_union()
            self.stream.expect(")")
            return inner
        if token.kind == "name" and token.text in ("all", "exists"):
            raise EmbeddedQuantifierError(
                "quantifiers cannot be nested inside set expressions",
                token.line,
                token.column,
            )
        name = _expect_name(self.stream, "a predicate or relation name")
        # Predicates never take arguments in set position, so a following
        # '(' can only open the next quantifier argument.
        if name.text in self.model.predicates:
            return PredSet(name.text)
        if name.text not in self.model.relations:
            raise UnknownNameError(name.text, "predicate or relation")
        if self.stream.peek().kind != "(":
            raise ArityError(
                f"relation {name.text!r} in set position needs bound arguments "
                f"and an open slot, e.g. {name.text}(a, _)"
            )
        self.stream.advance()
        bound: list[str] = []
        while self.stream.peek().kind != "underscore":
            bound.append(self.atom_name())
            self.stream.expect(",", "',' (the open slot '_' must come last)")
        self.stream.expect("underscore")
        next_token = self.stream.peek()
        if next_token.kind == ",":
            raise ParseError(
                "the open slot '_' must be the last argument", next_token.line, next_token.column
            )
        self.stream.expect(")")
        arity = self.model.relations[name.text].arity
        if len(bound) != arity - 1:
            raise ArityError(
                f"partial application of {name.text!r} (arity {arity}) "
                f"needs {arity - 1} bound arguments, got {len(bound)}"
            )
        return PartialRel(name.text, tuple(bound))

    def set_union(self) -> SetExpr:
        node = self.set_intersect()
        while self.stream.peek().kind == "|":
            self.stream.advance()
            node = Union(node, self.set_intersect())
        return node

    def set_intersect(self) -> SetExpr:
        node = self.set_arg()
        while self.stream.peek().kind == "&":
            self.stream.advance()
            node = Intersect(node, self.set_arg())
        return node


def parse_formula(text: str, m: Model) -> Formula:
    """Parse formula text against a model, binding and arity-checking names."""
    return _FormulaParser(_tokenize(text), m).parse()


# ---------------------------------------------------------------------------
# Formula printing

_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4}
_ATOM_PRECEDENCE = 5


def _precedence(f: Formula) -> int:
    return _PRECEDENCE.get(type(f), _ATOM_PRECEDENCE)


def _format_formula(f: Formula) -> str:
    match f:
        case Atom(pred, arg):
            return f"{pred}({arg})"
        case RelAtom(rel, args):
            return f"{rel}({', '.join(args)})"
        case Not(body):
            inner = _format_formula(body)
            if _precedence(body) < _PRECEDENCE[Not]:
                inner = f"({inner})"
            return f"~{inner}"
        case And(left, right) | Or(left, right):
            op = "&" if isinstance(f, And) else "|"
            prec = _PRECEDENCE[type(f)]
            left_text = _format_formula(left)
            if _precedence(left) < prec:
                left_text = f"({left_text})"
            right_text = _format_formula(right)
            if _precedence(right) <= prec:
                right_text = f"({right_text})"
            return f"{left_text} {op} {right_text}"
        case Implies(left, right):
            prec = _PRECEDENCE[Implies]
            left_text = _format_formula(left)
            if _precedence(left) <= prec:
                left_text = f"({left_text})"
            right_text = _format_formula(right)
            if _precedence(right) < prec:
                right_text = f"({right_text})"
            return f"{left_text} -> {right_text}"
        case ForAll(subset, superset):
            return f"all {_format_set_arg(subset)} {_format_set_arg(superset)}"
        case Exists(body):
            return f"exists {_format_set_arg(body)}"
    raise TypeError(f"not a formula node: {f!r}")


def _format_set_arg(e: SetExpr) -> str:
    if isinstance(e, (Intersect, Union)):
        return f"({_format_set_expr(e)})"
    return _format_set_expr(e)


def _format_set_expr(e: SetExpr) -> str:
    match e:
        case PredSet(name):
            return name
        case PartialRel(rel, bound):
            return f"{rel}({', '.join(bound + ('_',))})"
        case Intersect(left, right):
            left_text = _format_set_expr(left)
            if isinstance(left, Union):
                left_text = f"({left_text})"
            right_text = _format_set_expr(right)
            if isinstance(right, (Union, Intersect)):
                right_text = f"({right_text})"
            return f"{left_text} & {right_text}"
        case Union(left, right):
            left_text = _format_set_expr(left)
            right_text = _format_set_expr(right)
            if isinstance(right, Union):
                right_text = f"({right_text})"
            return f"{left_text} | {right_text}"
    raise TypeError(f"not a set expression node: {e!r}")


def print_formula(f: Formula) -> str:
    """Canonical formula text with minimal parentheses; re-parses to ``f``."""
    return _format_formula(f)
