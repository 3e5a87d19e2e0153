"""Operator-expression language and suite files.

Expression grammar (ASCII)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUM | "z" | "zb" | "dz" | "dzb" | "s" | "a3" | NAME
            | "(" expr ")" | "[" expr "," expr "]" | "{" expr "," expr "}"
            | "nest" "(" expr ("," expr)* ";" expr ")"

``NUM`` is an integer or a rational literal such as ``176/3``.  ``A+``,
``A-``, ``B+`` and ``B-`` are single tokens when the sign follows the letter
with no whitespace in between.

Suite files are line oriented::

    MODEL E8
    DEF X = A+ - A-
    REL name | lhs = rhs | citation [| report]
    STATECHECK name | kind key=value ... | citation
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .models import ALIASES, ModelCatalog, UnknownModel, build_model
from .scalar import A3, S, Scalar
from .weylalg import DZ, DZB, Z, ZB, Operator, anticommutator, commutator, nested_commutator, op_pow

SYMBOLS = ("z", "zb", "dz", "dzb", "s", "a3")
LADDER_BASES = ("A", "B")
CATALOG_NAMES = ("H", "L1", "L2", "R", "A+", "A-", "B+", "B-", "M", "Q", "S", "T", "U", "W")


class DslSyntaxError(SyntaxError):
    def __init__(self, msg: str, line: int = 1, col: int = 1, source: str = ""):
        super().__init__(f"{source + ':' if source else ''}{line}:{col}: {msg}")
        self.line = line
        self.col = col


class UnboundName(NameError):
    pass


class NegativeOperatorPower(ValueError):
    pass


class DuplicateName(ValueError):
    pass


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Comm:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Anti:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Nest:
    ops: Tuple["Expr", ...]
    core: "Expr"


Expr = Union[Num, Sym, Ref, Add, Sub, Mul, Pow, Neg, Comm, Anti, Nest]


def refs(ast: Expr) -> set:
    """All names referenced by ``ast``."""
    if isinstance(ast, Ref):
        return {ast.name}
    if isinstance(ast, (Num, Sym)):
        return set()
    if isinstance(ast, (Neg,)):
        return refs(ast.operand)
    if isinstance(ast, Pow):
        return refs(ast.base)
    if isinstance(ast, Nest):
        out = refs(ast.core)
        for op in ast.ops:
            out |= refs(op)
        return out
    return refs(ast.left) | refs(ast.right)


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()\[\]{},;])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _lex(text: str, line: int, source: str) -> List[_Tok]:
    out: List[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1, source)
        kind = m.lastgroup
        tok = m.group()
        if kind == "num" and "/" in tok and int(tok.split("/")[1]) == 0:
            raise DslSyntaxError("zero denominator", line, pos + 1, source)
        if kind == "name" and tok in LADDER_BASES and m.end() < len(text) and text[m.end()] in "+-":
            out.append(_Tok("name", tok + text[m.end()], pos + 1))
            pos = m.end() + 1
            continue
        if kind != "ws":
            out.append(_Tok(kind, tok, pos + 1))
        pos = m.end()
    out.append(_Tok("eof", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, line: int = 1, source: str = ""):
        self.toks = _lex(text, line, source)
        self.i = 0
        self.line = line
        self.source = source

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        return DslSyntaxError(msg, self.line, tok.col, self.source)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> _Tok:
        tok = self.peek()
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == text

    def parse(self) -> Expr:
        node = self.expr()
        if self.peek().kind != "eof":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at("*"):
            self.take()
            node = Mul(node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            tok = self.take(kind="num")
            if "/" in tok.text:
                raise self.error("exponent must be an integer", tok)
            exp = sign * int(tok.text)
            if exp < 0 and _syntactically_differential(base):
                raise NegativeOperatorPower(f"negative power of derivative-bearing expression at {self.line}:{tok.col}")
            return Pow(base, exp)
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Num(Fraction(tok.text))
        if tok.kind == "name":
            self.take()
            if tok.text in SYMBOLS:
                return Sym(tok.text)
            if tok.text == "nest" and self.at("("):
                return self.nest()
            return Ref(tok.text)
        if self.at("("):
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if self.at("["):
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return Comm(a, b)
        if self.at("{"):
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("}")
            return Anti(a, b)
        raise self.error("expected an operand" if tok.kind != "eof" else "unexpected end of input")

    def nest(self) -> Expr:
        self.take("(")
        ops = [self.expr()]
        while self.at(","):
            self.take()
            ops.append(self.expr())
        self.take(";")
        core = self.expr()
        self.take(")")
        return Nest(tuple(ops), core)


def _syntactically_differential(ast: Expr) -> bool:
    if isinstance(ast, Sym):
        return ast.name in ("dz", "dzb")
    if isinstance(ast, (Num, Ref)):
        return False
    if isinstance(ast, (Comm, Anti, Nest)):
        return True
    if isinstance(ast, Neg):
        return _syntactically_differential(ast.operand)
    if isinstance(ast, Pow):
        return _syntactically_differential(ast.base)
    return _syntactically_differential(ast.left) or _syntactically_differential(ast.right)


def parse_expr(text: str, known: Optional[Mapping] = None, *, line: int = 1, source: str = "") -> Expr:
    """Parse ``text``; with ``known`` given, every referenced name must be in it."""
    ast = _Parser(text, line, source).parse()
    if known is not None:
        missing = sorted(n for n in refs(ast) if n not in known)
        if missing:
            raise UnboundName(f"unbound name {missing[0]!r}" + (f" at {source}:{line}" if source else ""))
    return ast


# -- printer -----------------------------------------------------------------

_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _prec(ast: Expr) -> int:
    if isinstance(ast, (Add, Sub)):
        return _ADD
    if isinstance(ast, Mul):
        return _MUL
    if isinstance(ast, Neg):
        return _NEG
    if isinstance(ast, Pow):
        return _POW
    return _ATOM


def _wrap(ast: Expr, need: int) -> str:
    text = print_expr(ast)
    return f"({text})" if _prec(ast) < need else text


def print_expr(ast: Expr) -> str:
    """Inverse of :func:`parse_expr` up to whitespace and redundant parentheses."""
    if isinstance(ast, Num):
        return str(ast.value)
    if isinstance(ast, (Sym, Ref)):
        return ast.name
    if isinstance(ast, Add):
        return f"{_wrap(ast.left, _ADD)} + {_wrap(ast.right, _MUL)}"
    if isinstance(ast, Sub):
        return f"{_wrap(ast.left, _ADD)} - {_wrap(ast.right, _MUL)}"
    if isinstance(ast, Mul):
        return f"{_wrap(ast.left, _MUL)}*{_wrap(ast.right, _NEG)}"
    if isinstance(ast, Neg):
        return f"-{_wrap(ast.operand, _NEG)}"
    if isinstance(ast, Pow):
        return f"{_wrap(ast.base, _ATOM)}^{ast.exp}"
    if isinstance(ast, Comm):
        return f"[{print_expr(ast.left)},{print_expr(ast.right)}]"
    if isinstance(ast, Anti):
        return f"{{{print_expr(ast.left)},{print_expr(ast.right)}}}"
    if isinstance(ast, Nest):
        return f"nest({','.join(print_expr(o) for o in ast.ops)};{print_expr(ast.core)})"
    raise TypeError(f"not an expression node: {ast!r}")


# -- elaboration -------------------------------------------------------------

_SYMBOL_OPS = {
    "z": Z,
    "zb": ZB,
    "dz": DZ,
    "dzb": DZB,
    "s": Operator.scalar(S),
    "a3": Operator.scalar(A3),
}


def catalog_env(catalog: ModelCatalog) -> Dict[str, Operator]:
    """DSL names (``A+`` spelling) bound to the catalog's operators."""
    env = {}
    inverse = {v: k for k, v in ALIASES.items()}
    for name, op in catalog.operators.items():
        env[inverse.get(name, name)] = op
    return env


def elaborate(ast: Expr, env: Mapping[str, Operator]) -> Operator:
    """Evaluate ``ast`` to a normal-form :class:`Operator`."""
    if isinstance(ast, Num):
        return Operator.scalar(ast.value)
    if isinstance(ast, Sym):
        return _SYMBOL_OPS[ast.name]
    if isinstance(ast, Ref):
        try:
            return env[ast.name]
        except KeyError:
            raise UnboundName(f"unbound name {ast.name!r}") from None
    if isinstance(ast, Add):
        return elaborate(ast.left, env) + elaborate(ast.right, env)
    if isinstance(ast, Sub):
        return elaborate(ast.left, env) - elaborate(ast.right, env)
    if isinstance(ast, Mul):
        return elaborate(ast.left, env) * elaborate(ast.right, env)
    if isinstance(ast, Neg):
        return -elaborate(ast.operand, env)
    if isinstance(ast, Pow):
        base = elaborate(ast.base, env)
        if ast.exp < 0:
            if not base.is_scalar_monomial():
                raise NegativeOperatorPower(f"cannot raise {print_expr(ast.base)} to {ast.exp}")
            return op_pow(base.inverse(), -ast.exp)
        return op_pow(base, ast.exp)
    if isinstance(ast, Comm):
        return commutator(elaborate(ast.left, env), elaborate(ast.right, env))
    if isinstance(ast, Anti):
        return anticommutator(elaborate(ast.left, env), elaborate(ast.right, env))
    if isinstance(ast, Nest):
        return nested_commutator([elaborate(o, env) for o in ast.ops], elaborate(ast.core, env))
    raise TypeError(f"not an expression node: {ast!r}")


def parse_operator(text: str, env: Mapping[str, Operator] | None = None) -> Operator:
    return elaborate(parse_expr(text), env or {})


# -- suites ------------------------------------------------------------------


@dataclass
class Relation:
    name: str
    lhs: Expr
    rhs: Expr
    citation: str
    expected: str = "zero"  # or "report"
    line: int = 0
    lhs_op: Optional[Operator] = field(default=None, repr=False, compare=False)
    rhs_op: Optional[Operator] = field(default=None, repr=False, compare=False)


@dataclass
class StateCheck:
    name: str
    kind: str
    params: Dict[str, str]
    citation: str
    line: int = 0


@dataclass
class SuiteFile:
    model: str
    definitions: Dict[str, Expr]
    relations: List[Relation]
    state_checks: List[StateCheck]
    env: Dict[str, Operator] = field(default_factory=dict, repr=False)
    path: Optional[str] = None

    @property
    def catalog(self) -> ModelCatalog:
        return build_model(self.model)


def _split(body: str, line: int, source: str, minimum: int) -> List[str]:
    parts = [p.strip() for p in body.split("|")]
    if len(parts) < minimum or any(not p for p in parts[:minimum]):
        raise DslSyntaxError(f"expected {minimum} '|'-separated fields", line, 1, source)
    return parts


def parse_suite(text: str, source: str = "<suite>") -> SuiteFile:
    model: Optional[str] = None
    env: Dict[str, Operator] = {}
    defs: Dict[str, Expr] = {}
    relations: List[Relation] = []
    checks: List[StateCheck] = []
    seen: set = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, body = stripped.partition(" ")
        body = body.strip()
        if keyword == "MODEL":
            if model is not None:
                raise DslSyntaxError("MODEL given twice", lineno, 1, source)
            try:
                catalog = build_model(body)
            except UnknownModel:
                raise UnknownModel(f"{source}:{lineno}: unknown model {body!r}") from None
            model = catalog.model
            env = catalog_env(catalog)
            continue
        if model is None:
            raise DslSyntaxError("MODEL must come first", lineno, 1, source)
        if keyword == "DEF":
            name, eq, expr_text = body.partition("=")
            name = name.strip()
            if not eq or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise DslSyntaxError("expected DEF <name> = <expr>", lineno, 1, source)
            if name in env or name in SYMBOLS or name == "nest":
                raise DuplicateName(f"{source}:{lineno}: {name!r} is already defined")
            ast = parse_expr(expr_text, env, line=lineno, source=source)
            defs[name] = ast
            env[name] = elaborate(ast, env)
        elif keyword == "REL":
            parts = _split(body, lineno, source, 3)
            name, equation, citation = parts[:3]
            flags = parts[3:]
            if name in seen:
                raise DuplicateName(f"{source}:{lineno}: duplicate check name {name!r}")
            seen.add(name)
            lhs_text, eq, rhs_text = equation.partition("=")
            if not eq:
                raise DslSyntaxError("relation needs 'lhs = rhs'", lineno, 1, source)
            expected = "zero"
            for flag in flags:
                if flag != "report":
                    raise DslSyntaxError(f"unknown relation flag {flag!r}", lineno, 1, source)
                expected = "report"
            lhs = parse_expr(lhs_text, env, line=lineno, source=source)
            rhs = parse_expr(rhs_text, env, line=lineno, source=source)
            relations.append(
                Relation(name, lhs, rhs, citation, expected, lineno, elaborate(lhs, env), elaborate(rhs, env))
            )
        elif keyword == "STATECHECK":
            name, spec, citation = _split(body, lineno, source, 3)[:3]
            if name in seen:
                raise DuplicateName(f"{source}:{lineno}: duplicate check name {name!r}")
            seen.add(name)
            kind, *rest = spec.split()
            params = {}
            for item in rest:
                key, eq, value = item.partition("=")
                if not eq:
                    raise DslSyntaxError(f"expected key=value, got {item!r}", lineno, 1, source)
                params[key] = value
            checks.append(StateCheck(name, kind, params, citation, lineno))
        else:
            raise DslSyntaxError(f"unknown section keyword {keyword!r}", lineno, 1, source)

    if model is None:
        raise DslSyntaxError("suite has no MODEL line", 1, 1, source)
    return SuiteFile(model, defs, relations, checks, env)


def load_suite(path) -> SuiteFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read suite {path}: {exc.strerror or exc}") from exc
    suite = parse_suite(text, source=str(path))
    suite.path = str(path)
    return suite


def bundled_suite_path(model: str) -> Path:
    return Path(__file__).with_name("suites") / f"{model.lower()}.suite"
