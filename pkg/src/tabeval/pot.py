"""Interpreter for the straight-line code dialect produced by PoT prompting.

The dialect covers exactly what sampled completions contain: assignments of
arithmetic/comparison expressions over numbers and string literals, plus
comments and blank lines. Everything else (loops, calls, indexing, imports)
is a syntax error, so untrusted model output can never reach I/O or
unbounded computation. The program's answer is the final value of ``ans``.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_STATEMENTS = 10_000

_COMPARISON_OPS = {">", "<", ">=", "<=", "==", "!="}
_ADDITIVE_OPS = {"+", "-"}
_MULTIPLICATIVE_OPS = {"*", "/"}

Value = float | str | bool


class PotError(Exception):
    """Base class for interpreter failures; any of these means "no answer"."""

    kind = "Error"


class PotSyntaxError(PotError):
    kind = "SyntaxError"

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PotNameError(PotError):
    kind = "NameError"

    def __init__(self, name: str):
        super().__init__(f"name '{name}' is not assigned")
        self.name = name


class PotTypeError(PotError):
    kind = "TypeError"


class PotDivisionByZero(PotError):
    kind = "DivisionByZero"

    def __init__(self):
        super().__init__("division by zero")


class PotMissingAnswer(PotError):
    kind = "MissingAns"

    def __init__(self):
        super().__init__("variable 'ans' was never assigned")


class PotBudgetExceeded(PotError):
    kind = "BudgetExceeded"

    def __init__(self):
        super().__init__(f"more than {MAX_STATEMENTS} statements")


@dataclass(frozen=True)
class Assignment:
    name: str
    expression: "Expr"
    line: int


@dataclass(frozen=True)
class PotProgram:
    statements: tuple[Assignment, ...]


@dataclass(frozen=True)
class PotAnswer:
    value: Value
    rendered: str


# Expression nodes.
@dataclass(frozen=True)
class Literal:
    value: Value


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Unary:
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Literal | Name | Unary | Binary


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME, NUMBER, STRING, OP
    text: str


def _tokenize_line(line: str, lineno: int) -> list[_Token]:
    tokens = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (line[j].isalnum() or line[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", line[i:j]))
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and line[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (line[j].isdigit() or (line[j] == "." and not seen_dot)):
                if line[j] == ".":
                    seen_dot = True
                j += 1
            tokens.append(_Token("NUMBER", line[i:j]))
            i = j
            continue
        if ch in "'\"":
            j = line.find(ch, i + 1)
            if j < 0:
                raise PotSyntaxError(lineno, "unterminated string literal")
            tokens.append(_Token("STRING", line[i + 1:j]))
            i = j + 1
            continue
        two = line[i:i + 2]
        if two in (">=", "<=", "==", "!="):
            tokens.append(_Token("OP", two))
            i += 2
            continue
        if ch in "+-*/()<>=":
            tokens.append(_Token("OP", ch))
            i += 1
            continue
        raise PotSyntaxError(lineno, f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], lineno: int):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> _Token:
        token = self.peek()
        if token is None:
            raise PotSyntaxError(self.lineno, "unexpected end of line")
        self.pos += 1
        return token

    def expression(self) -> Expr:
        return self.comparison()

    def comparison(self) -> Expr:
        node = self.additive()
        while (t := self.peek()) and t.kind == "OP" and t.text in _COMPARISON_OPS:
            op = self.advance().text
            node = Binary(op, node, self.additive())
        return node

    def additive(self) -> Expr:
        node = self.multiplicative()
        while (t := self.peek()) and t.kind == "OP" and t.text in _ADDITIVE_OPS:
            op = self.advance().text
            node = Binary(op, node, self.multiplicative())
        return node

    def multiplicative(self) -> Expr:
        node = self.unary()
        while (t := self.peek()) and t.kind == "OP" and t.text in _MULTIPLICATIVE_OPS:
            op = self.advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        t = self.peek()
        if t and t.kind == "OP" and t.text == "-":
            self.advance()
            return Unary(self.unary())
        return self.primary()

    def primary(self) -> Expr:
        token = self.advance()
        if token.kind == "NUMBER":
            return Literal(float(token.text))
        if token.kind == "STRING":
            return Literal(token.text)
        if token.kind == "NAME":
            return Name(token.text)
        if token.kind == "OP" and token.text == "(":
            node = self.expression()
            closing = self.advance()
            if closing.kind != "OP" or closing.text != ")":
                raise PotSyntaxError(self.lineno, "expected ')'")
            return node
        raise PotSyntaxError(self.lineno, f"unexpected token {token.text!r}")


def parse_program(source: str) -> PotProgram:
    """Parse source into assignment statements; comments and blanks vanish."""
    statements = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        tokens = _tokenize_line(line, lineno)
        if not tokens:
            continue
        if len(tokens) < 2 or tokens[0].kind != "NAME" \
                or tokens[1] != _Token("OP", "="):
            raise PotSyntaxError(lineno, "expected 'name = expression'")
        parser = _Parser(tokens[2:], lineno)
        expression = parser.expression()
        if parser.peek() is not None:
            raise PotSyntaxError(
                lineno, f"unexpected token {parser.peek().text!r} after expression"
            )
        statements.append(Assignment(tokens[0].text, expression, lineno))
    return PotProgram(tuple(statements))


def evaluate(program: PotProgram) -> PotAnswer:
    """Run a program and return the final value of ``ans``, rendered."""
    if len(program.statements) > MAX_STATEMENTS:
        raise PotBudgetExceeded()
    env: dict[str, Value] = {}
    for statement in program.statements:
        env[statement.name] = _eval_expr(statement.expression, env)
    if "ans" not in env:
        raise PotMissingAnswer()
    value = env["ans"]
    return PotAnswer(value, render(value))


def run(source: str) -> PotAnswer:
    return evaluate(parse_program(source))


def _eval_expr(node: Expr, env: dict[str, Value]) -> Value:
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Name):
        if node.name not in env:
            raise PotNameError(node.name)
        return env[node.name]
    if isinstance(node, Unary):
        operand = _eval_expr(node.operand, env)
        if not _is_number(operand):
            raise PotTypeError("unary '-' needs a number")
        return -operand
    left = _eval_expr(node.left, env)
    right = _eval_expr(node.right, env)
    op = node.op
    if op in _ADDITIVE_OPS or op in _MULTIPLICATIVE_OPS:
        if not (_is_number(left) and _is_number(right)):
            raise PotTypeError(f"'{op}' needs two numbers")
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if right == 0:
            raise PotDivisionByZero()
        return left / right
    if op in ("==", "!="):
        if _kind(left) != _kind(right):
            raise PotTypeError(f"'{op}' needs values of the same kind")
        return (left == right) if op == "==" else (left != right)
    # Order comparisons: two numbers or two texts.
    if not ((_is_number(left) and _is_number(right))
            or (isinstance(left, str) and isinstance(right, str))):
        raise PotTypeError(f"'{op}' needs two numbers or two texts")
    if op == ">":
        return left > right
    if op == "<":
        return left < right
    if op == ">=":
        return left >= right
    return left <= right


def _is_number(value: Value) -> bool:
    return isinstance(value, float) and not isinstance(value, bool)


def _kind(value: Value) -> str:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, float):
        return "number"
    return "text"


def render(value: Value) -> str:
    """Render a runtime value as answer text.

    Numbers round to 12 significant digits with trailing zeros and bare
    decimal points stripped, so integral values render without ".0".
    """
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, float):
        return f"{value:.12g}"
    return value
