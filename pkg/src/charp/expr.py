"""Expression language for scalars and differential forms.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' (uint | base))?
    base   := int | var | formatom | 'd' '(' expr ')'
            | 'dlog' '(' expr ')' | '(' expr ')' | '-' base

Variables are x1..x4 with letter aliases x, y, z, w; form atoms are
dx1..dx4 aliased dx, dy, dz, dw.  Integers are arbitrary and reduced
mod p.  '^' followed by an unsigned integer is a power (scalars only);
'*' between two 1-forms is the wedge product, as is '^' followed by a
form expression.

Every expression has a unique sort - scalar, 1-form, or 2-form -
inferred bottom-up; mixing them any other way is a SortError.

Matrices for the CLI are ';'-separated rows of ','-separated entries,
each entry an expression of one common sort.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import Context
from .errors import ExprSyntaxError, SortError, UnknownVariable
from .forms import OneForm, TwoForm, d_function, d_oneform, dlog_function, wedge
from .ratfunc import RatFunc

_VAR_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}

SCALAR, ONEFORM, TWOFORM = "scalar", "1-form", "2-form"

Value = "RatFunc | OneForm | TwoForm"


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class FormAtom:
    index: int


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Wedge:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class D:
    operand: object


@dataclass(frozen=True)
class Dlog:
    operand: object


# ---------------------------------------------------------------- tokens

@dataclass(frozen=True)
class Token:
    kind: str  # INT | NAME | OP | END
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("NAME", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^(),;":
            tokens.append(Token("OP", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(Token("END", "", n))
    return tokens


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == text:
            return self.next()
        raise ExprSyntaxError(f"expected {text!r}", tok.pos)

    def at_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text in texts

    def parse_expr(self):
        node = self.parse_term()
        while self.at_op("+", "-"):
            op = self.next().text
            rhs = self.parse_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.at_op("*", "/"):
            op = self.next().text
            rhs = self.parse_factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def parse_factor(self):
        node = self.parse_base()
        if self.at_op("^"):
            self.next()
            tok = self.peek()
            if tok.kind == "INT":
                self.next()
                return Pow(node, int(tok.text))
            # '^' not followed by an unsigned integer: wedge of forms.
            rhs = self.parse_base()
            return Wedge(node, rhs)
        return node

    def parse_base(self):
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return IntLit(int(tok.text))
        if tok.kind == "NAME":
            self.next()
            name = tok.text
            if name == "d" and self.at_op("("):
                self.next()
                inner = self.parse_expr()
                self.expect_op(")")
                return D(inner)
            if name == "dlog":
                self.expect_op("(")
                inner = self.parse_expr()
                self.expect_op(")")
                return Dlog(inner)
            return self._name_atom(name, tok.pos)
        if tok.kind == "OP" and tok.text == "(":
            self.next()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "OP" and tok.text == "-":
            self.next()
            return Neg(self.parse_base())
        raise ExprSyntaxError(
            "expected integer, variable, form atom, '(', '-', 'd(...)' or 'dlog(...)'",
            tok.pos,
        )

    @staticmethod
    def _name_atom(name: str, pos: int):
        if name in _VAR_ALIASES:
            return Var(_VAR_ALIASES[name])
        if name.startswith("x") and name[1:].isdigit():
            return Var(int(name[1:]) - 1)
        if name.startswith("d") and len(name) > 1:
            tail = name[1:]
            if tail in _VAR_ALIASES:
                return FormAtom(_VAR_ALIASES[tail])
            if tail.startswith("x") and tail[1:].isdigit():
                return FormAtom(int(tail[1:]) - 1)
        raise ExprSyntaxError(f"unknown name {name!r}", pos)


def parse(text: str):
    """Parse to an AST without sort checking."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "END":
        raise ExprSyntaxError(f"unexpected trailing input {tail.text!r}", tail.pos)
    return node


# ---------------------------------------------------------------- sorts

def infer_sort(node, ctx: Context) -> str:
    """Bottom-up sort inference; raises SortError / UnknownVariable."""
    if isinstance(node, IntLit):
        return SCALAR
    if isinstance(node, Var):
        _check_var(node.index, ctx)
        return SCALAR
    if isinstance(node, FormAtom):
        _check_var(node.index, ctx)
        return ONEFORM
    if isinstance(node, Neg):
        return infer_sort(node.operand, ctx)
    if isinstance(node, (Add, Sub)):
        ls, rs = infer_sort(node.left, ctx), infer_sort(node.right, ctx)
        if ls != rs:
            raise SortError(f"cannot add {ls} and {rs}")
        return ls
    if isinstance(node, Mul):
        ls, rs = infer_sort(node.left, ctx), infer_sort(node.right, ctx)
        return _mul_sort(ls, rs)
    if isinstance(node, Div):
        ls, rs = infer_sort(node.left, ctx), infer_sort(node.right, ctx)
        if rs != SCALAR:
            raise SortError(f"cannot divide by a {rs}")
        return ls
    if isinstance(node, Pow):
        s = infer_sort(node.base, ctx)
        if s != SCALAR:
            raise SortError(f"cannot raise a {s} to a power")
        return SCALAR
    if isinstance(node, Wedge):
        ls, rs = infer_sort(node.left, ctx), infer_sort(node.right, ctx)
        if ls != ONEFORM or rs != ONEFORM:
            raise SortError(f"wedge needs two 1-forms, got {ls} and {rs}")
        return TWOFORM
    if isinstance(node, D):
        s = infer_sort(node.operand, ctx)
        if s == SCALAR:
            return ONEFORM
        if s == ONEFORM:
            return TWOFORM
        raise SortError("d of a 2-form is not supported")
    if isinstance(node, Dlog):
        if infer_sort(node.operand, ctx) != SCALAR:
            raise SortError("dlog needs a scalar argument")
        return ONEFORM
    raise TypeError(f"unknown AST node {node!r}")


def _check_var(index: int, ctx: Context) -> None:
    if not 0 <= index < ctx.nvars:
        raise UnknownVariable(
            f"variable index {index + 1} outside the {ctx.nvars}-variable context"
        )


def _mul_sort(ls: str, rs: str) -> str:
    if ls == SCALAR and rs == SCALAR:
        return SCALAR
    if {ls, rs} == {SCALAR, ONEFORM}:
        return ONEFORM
    if {ls, rs} == {SCALAR, TWOFORM}:
        return TWOFORM
    if ls == ONEFORM and rs == ONEFORM:
        return TWOFORM  # wedge, written with '*'
    raise SortError(f"cannot multiply {ls} and {rs}")


def parse_expression(text: str, ctx: Context):
    """Parse and sort-check; returns (ast, sort)."""
    node = parse(text)
    return node, infer_sort(node, ctx)


# ---------------------------------------------------------------- evaluation

def evaluate(node, ctx: Context):
    """Evaluate a sort-correct AST to a RatFunc / OneForm / TwoForm."""
    if isinstance(node, IntLit):
        return RatFunc.const(ctx, node.value)
    if isinstance(node, Var):
        _check_var(node.index, ctx)
        return RatFunc.variable(ctx, node.index)
    if isinstance(node, FormAtom):
        _check_var(node.index, ctx)
        return OneForm.dx(ctx, node.index)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ctx)
    if isinstance(node, Add):
        return _combine(evaluate(node.left, ctx), evaluate(node.right, ctx), "+")
    if isinstance(node, Sub):
        return _combine(evaluate(node.left, ctx), evaluate(node.right, ctx), "-")
    if isinstance(node, Mul):
        return _multiply(evaluate(node.left, ctx), evaluate(node.right, ctx))
    if isinstance(node, Div):
        left, right = evaluate(node.left, ctx), evaluate(node.right, ctx)
        if not isinstance(right, RatFunc):
            raise SortError("cannot divide by a form")
        inv = right.inv()
        return left * inv if isinstance(left, RatFunc) else left.scale(inv)
    if isinstance(node, Pow):
        base = evaluate(node.base, ctx)
        if not isinstance(base, RatFunc):
            raise SortError("cannot raise a form to a power")
        return base**node.exponent
    if isinstance(node, Wedge):
        left, right = evaluate(node.left, ctx), evaluate(node.right, ctx)
        if not (isinstance(left, OneForm) and isinstance(right, OneForm)):
            raise SortError("wedge needs two 1-forms")
        return wedge(left, right)
    if isinstance(node, D):
        inner = evaluate(node.operand, ctx)
        if isinstance(inner, RatFunc):
            return d_function(inner)
        if isinstance(inner, OneForm):
            return d_oneform(inner)
        raise SortError("d of a 2-form is not supported")
    if isinstance(node, Dlog):
        inner = evaluate(node.operand, ctx)
        if not isinstance(inner, RatFunc):
            raise SortError("dlog needs a scalar argument")
        return dlog_function(inner)
    raise TypeError(f"unknown AST node {node!r}")


def _combine(left, right, op: str):
    if type(left) is not type(right):
        raise SortError(f"cannot {'add' if op == '+' else 'subtract'} different sorts")
    return left + right if op == "+" else left - right


def _multiply(left, right):
    if isinstance(left, RatFunc) and isinstance(right, RatFunc):
        return left * right
    if isinstance(left, RatFunc):
        return right.scale(left)
    if isinstance(right, RatFunc):
        return left.scale(right)
    if isinstance(left, OneForm) and isinstance(right, OneForm):
        return wedge(left, right)
    raise SortError("cannot multiply these sorts")


def eval_expression(text: str, ctx: Context):
    """Parse, sort-check and evaluate in one go."""
    node, _ = parse_expression(text, ctx)
    return evaluate(node, ctx)


def eval_scalar(text: str, ctx: Context) -> RatFunc:
    value = eval_expression(text, ctx)
    if not isinstance(value, RatFunc):
        raise SortError(f"expected a scalar, got a {_sort_of(value)}")
    return value


def eval_oneform(text: str, ctx: Context) -> OneForm:
    value = eval_expression(text, ctx)
    if isinstance(value, RatFunc):
        if value.is_zero():
            return OneForm.zero(ctx)
        raise SortError("expected a 1-form, got a scalar")
    if not isinstance(value, OneForm):
        raise SortError(f"expected a 1-form, got a {_sort_of(value)}")
    return value


def _sort_of(value) -> str:
    if isinstance(value, RatFunc):
        return SCALAR
    if isinstance(value, OneForm):
        return ONEFORM
    return TWOFORM


# ---------------------------------------------------------------- matrices

def split_matrix_text(text: str) -> list[list[str]]:
    """Split ';'-separated rows of ','-separated entries at paren depth 0."""
    rows = []
    for row_text in _split_top(text, ";"):
        rows.append(_split_top(row_text, ","))
    return rows


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def eval_scalar_matrix(text: str, ctx: Context):
    rows = [[eval_scalar(entry, ctx) for entry in row] for row in split_matrix_text(text)]
    _require_rectangular(rows)
    return tuple(tuple(row) for row in rows)


def eval_oneform_matrix(text: str, ctx: Context):
    rows = [[eval_oneform(entry, ctx) for entry in row] for row in split_matrix_text(text)]
    _require_rectangular(rows)
    return rows


def _require_rectangular(rows) -> None:
    if any(len(row) != len(rows[0]) for row in rows):
        raise ExprSyntaxError("matrix rows have unequal lengths", 0)
