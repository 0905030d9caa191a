"""Expression language for composing operations, and its evaluator.

Grammar (whitespace-insensitive)::

    expr   := add | mul | natadd | ident
    add    := "add(" expr ("," expr)+ ";" "alpha=" num "," "beta=" num ")"
    mul    := "mul(" expr ("," expr)+ ")"
    natadd := "natadd(" expr ("," expr)+ ")"
    num    := integer | decimal | integer "/" integer

Operands of a node are taken in written order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidInput
from ..feasibility import ConstraintSet, IndexTuple
from ..model import OIE, void_oie
from ..ops import ADD, MUL, PAIRWISE, VOID_REASONS, DomainWindow, evaluate_operation, natural_window
from .eventfile import EventFile


class ExpressionSyntaxError(InvalidInput):
    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Ref:
    name: str
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Add:
    children: tuple
    alpha: Fraction
    beta: Fraction
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class NatAdd:
    children: tuple
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Mul:
    children: tuple
    pos: tuple = field(default=(1, 1), compare=False)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>-?\d+(?:\.\d+|/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),;=])
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=i):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            tokens.append((kind, m.group(), (line, i - line_start + 1)))
        i = m.end()
    tokens.append(("eof", "", (line, i - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self, offset=0):
        return self.tokens[min(self.k + offset, len(self.tokens) - 1)]

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ExpressionSyntaxError(f"{message}, found {found}", *tok[2])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] == "eof":
            self.fail(f"expected {value!r}")
        self.k += 1
        return tok

    def number(self) -> Fraction:
        tok = self.peek()
        if tok[0] != "num":
            self.fail("expected a number")
        self.k += 1
        text = tok[1]
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ExpressionSyntaxError("zero denominator", *tok[2])
            return Fraction(int(num), int(den))
        return Fraction(text)

    def keyword_arg(self, name) -> Fraction:
        tok = self.peek()
        if tok[0] != "ident" or tok[1] != name:
            self.fail(f"expected '{name}='")
        self.k += 1
        self.expect("=")
        return self.number()

    def expr(self):
        tok = self.peek()
        if tok[0] != "ident":
            self.fail("expected an operation or event id")
        is_call = self.peek(1)[1] == "("
        if is_call and tok[1] in ("add", "mul", "natadd"):
            return self.call(tok)
        if is_call:
            raise ExpressionSyntaxError(f"unknown operation {tok[1]!r}", *tok[2])
        self.k += 1
        return Ref(tok[1], tok[2])

    def call(self, head):
        self.k += 2
        children = [self.expr()]
        while self.peek()[1] == ",":
            self.k += 1
            children.append(self.expr())
        if len(children) < 2:
            raise ExpressionSyntaxError(f"{head[1]} needs at least two operands", *head[2])
        if head[1] == "add":
            self.expect(";")
            alpha = self.keyword_arg("alpha")
            self.expect(",")
            beta = self.keyword_arg("beta")
            self.expect(")")
            if not alpha < beta:
                raise ExpressionSyntaxError(f"add needs alpha < beta, got {alpha} and {beta}", *head[2])
            return Add(tuple(children), alpha, beta, head[2])
        self.expect(")")
        node = NatAdd if head[1] == "natadd" else Mul
        return node(tuple(children), head[2])


def parse_expression(text: str):
    parser = _Parser(text)
    node = parser.expr()
    if parser.peek()[0] != "eof":
        parser.fail("unexpected trailing input")
    return node


def format_expression(node) -> str:
    if isinstance(node, Ref):
        return node.name
    inner = ", ".join(format_expression(c) for c in node.children)
    if isinstance(node, Add):
        return f"add({inner}; alpha={_num(node.alpha)}, beta={_num(node.beta)})"
    return f"{'natadd' if isinstance(node, NatAdd) else 'mul'}({inner})"


def _num(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Evaluation:
    """Final value plus, for void results, where the plan first became void."""

    result: OIE
    void_step: int | None = None
    void_at: str | None = None
    unused_constraints: tuple = ()

    def describe_void(self) -> str:
        if not self.result.is_void:
            return ""
        if self.void_step is None:
            return "VOID"
        return f"VOID (step {self.void_step} at {self.void_at}: {VOID_REASONS[self.void_step]})"


def evaluate(node, ef: EventFile, *, atom_check: str = PAIRWISE, max_product=None) -> Evaluation:
    """Evaluate bottom-up; the first (innermost, leftmost) void cause is kept."""
    oies = ef.oies()
    cs: ConstraintSet = ef.constraints
    used = set()
    first_void = []

    def note_void(step, n):
        if not first_void:
            first_void.append((step, format_expression(n)))

    def visit(n) -> OIE:
        if isinstance(n, Ref):
            if n.name not in oies:
                raise InvalidInput(f"unknown event id {n.name!r} at line {n.pos[0]}, column {n.pos[1]}")
            return oies[n.name]
        operands = [visit(c) for c in n.children]
        labels = {o.label for o in operands}
        for item in list(cs.forbidden) + list(cs.rules):
            if item.ids <= labels:
                used.add(item)
        idx = IndexTuple.ascending(len(operands))
        if isinstance(n, Mul):
            outcome = evaluate_operation(MUL, operands, idx, None, cs, atom_check=atom_check,
                                         max_product=max_product)
        else:
            if isinstance(n, Add):
                window = DomainWindow(n.alpha, n.beta)
            elif any(o.is_void for o in operands):
                note_void(1, n)
                return void_oie()
            else:
                window = natural_window(operands)
            outcome = evaluate_operation(ADD, operands, idx, window, cs, atom_check=atom_check,
                                         max_product=max_product)
        if outcome.void_step is not None:
            note_void(outcome.void_step, n)
        return outcome.result

    result = visit(node)
    unused = tuple(item for item in list(cs.forbidden) + list(cs.rules) if item not in used)
    if result.is_void and not first_void and isinstance(node, Ref):
        first_void.append((None, node.name))
    step, where = first_void[0] if first_void else (None, None)
    return Evaluation(result, step, where, unused)
