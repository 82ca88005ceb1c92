"""Integer term language shared by loop programs, Houdini predicates and
synthesis specifications.

Terms are immutable trees. Arithmetic is exact (Python ints); booleans are
Python bools. The concrete syntax is a small s-expression dialect::

    x  -3  true  (+ a b)  (- a b)  (- a)  (* a b)  (mod a b)
    (ite c a b)  (<= a b)  (>= a b)  (< a b)  (> a b)  (= a b)
    (and ...)  (or ...)  (not c)  (f a ...)

``(f ...)`` is the unknown function of a synthesis problem and is only
accepted when parsing a specification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Minus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mod:
    # Python semantics; mod by zero yields the dividend so evaluation is total.
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Ite:
    cond: "Term"
    then: "Term"
    orelse: "Term"


@dataclass(frozen=True)
class Leq:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Geq:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Lt:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Gt:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Eq:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: "Term"


@dataclass(frozen=True)
class App:
    """Application of the unknown function."""

    args: tuple


Term = (
    Var | Const | BoolConst | Plus | Minus | Neg | Mul | Mod | Ite | Leq | Geq
    | Lt | Gt | Eq | And | Or | Not | App
)

_BINARY = {
    "+": Plus, "-": Minus, "*": Mul, "mod": Mod,
    "<=": Leq, ">=": Geq, "<": Lt, ">": Gt, "=": Eq,
}
_SYMBOL = {cls: sym for sym, cls in _BINARY.items()}


def evaluate(term, env: Sequence[int], fn: Callable[..., int] | None = None):
    """Evaluate ``term`` with variable ``i`` bound to ``env[i]``.

    ``fn`` interprets :class:`App` nodes; it receives the evaluated arguments.
    """
    match term:
        case Var(index=i):
            return env[i]
        case Const(value=c) | BoolConst(value=c):
            return c
        case Plus(left=a, right=b):
            return evaluate(a, env, fn) + evaluate(b, env, fn)
        case Minus(left=a, right=b):
            return evaluate(a, env, fn) - evaluate(b, env, fn)
        case Neg(arg=a):
            return -evaluate(a, env, fn)
        case Mul(left=a, right=b):
            return evaluate(a, env, fn) * evaluate(b, env, fn)
        case Mod(left=a, right=b):
            x, y = evaluate(a, env, fn), evaluate(b, env, fn)
            return x % y if y else x
        case Ite(cond=c, then=a, orelse=b):
            return evaluate(a, env, fn) if evaluate(c, env, fn) else evaluate(b, env, fn)
        case Leq(left=a, right=b):
            return evaluate(a, env, fn) <= evaluate(b, env, fn)
        case Geq(left=a, right=b):
            return evaluate(a, env, fn) >= evaluate(b, env, fn)
        case Lt(left=a, right=b):
            return evaluate(a, env, fn) < evaluate(b, env, fn)
        case Gt(left=a, right=b):
            return evaluate(a, env, fn) > evaluate(b, env, fn)
        case Eq(left=a, right=b):
            return evaluate(a, env, fn) == evaluate(b, env, fn)
        case And(args=args):
            return all(evaluate(a, env, fn) for a in args)
        case Or(args=args):
            return any(evaluate(a, env, fn) for a in args)
        case Not(arg=a):
            return not evaluate(a, env, fn)
        case App(args=args):
            if fn is None:
                raise ValueError("unknown function applied outside a specification")
            return fn(*(evaluate(a, env, fn) for a in args))
    raise TypeError(f"not a term: {term!r}")


def size(term) -> int:
    """Node count; conditions and every operator count as one node."""
    match term:
        case Var() | Const() | BoolConst():
            return 1
        case Neg(arg=a) | Not(arg=a):
            return 1 + size(a)
        case Ite(cond=c, then=a, orelse=b):
            return 1 + size(c) + size(a) + size(b)
        case And(args=args) | Or(args=args) | App(args=args):
            return 1 + sum(size(a) for a in args)
        case _:
            return 1 + size(term.left) + size(term.right)


def applications(term) -> list:
    """All :class:`App` nodes in ``term``, outermost first."""
    out = []

    def walk(t):
        match t:
            case App(args=args):
                out.append(t)
                for a in args:
                    walk(a)
            case Var() | Const() | BoolConst():
                pass
            case Neg(arg=a) | Not(arg=a):
                walk(a)
            case Ite(cond=c, then=a, orelse=b):
                walk(c), walk(a), walk(b)
            case And(args=args) | Or(args=args):
                for a in args:
                    walk(a)
            case _:
                walk(t.left), walk(t.right)

    walk(term)
    return out


def to_sexpr(term, names: Sequence[str] | None = None) -> str:
    """Print ``term``; variables print as ``names[i]`` (default ``x0, x1, ...``)."""
    match term:
        case Var(index=i):
            return names[i] if names is not None else f"x{i}"
        case Const(value=c):
            return str(c)
        case BoolConst(value=b):
            return "true" if b else "false"
        case Neg(arg=a):
            return f"(- {to_sexpr(a, names)})"
        case Not(arg=a):
            return f"(not {to_sexpr(a, names)})"
        case Ite(cond=c, then=a, orelse=b):
            return f"(ite {to_sexpr(c, names)} {to_sexpr(a, names)} {to_sexpr(b, names)})"
        case And(args=args) | Or(args=args) | App(args=args):
            head = {And: "and", Or: "or", App: "f"}[type(term)]
            inner = " ".join(to_sexpr(a, names) for a in args)
            return f"({head} {inner})" if inner else f"({head})"
    sym = _SYMBOL[type(term)]
    return f"({sym} {to_sexpr(term.left, names)} {to_sexpr(term.right, names)})"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse(text: str, names: Sequence[str], allow_app: bool = False, arity: int | None = None):
    """Parse an s-expression over the variables ``names``.

    ``arity`` (when given) is enforced on every ``(f ...)`` application.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    index = {n: i for i, n in enumerate(names)}
    pos = 0

    def atom(tok):
        if tok in index:
            return Var(index[tok])
        if tok in ("true", "false"):
            return BoolConst(tok == "true")
        try:
            return Const(int(tok))
        except ValueError:
            raise ParseError(f"unknown symbol {tok!r}") from None

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise ParseError("unexpected ')'")
        if tok != "(":
            return atom(tok)
        if pos >= len(tokens):
            raise ParseError("unexpected end of input")
        head = tokens[pos]
        pos += 1
        args = []
        while pos < len(tokens) and tokens[pos] != ")":
            args.append(expr())
        if pos >= len(tokens):
            raise ParseError("missing ')'")
        pos += 1
        return build(head, args)

    def build(head, args):
        if head == "-" and len(args) == 1:
            return Neg(args[0])
        if head in _BINARY:
            if len(args) != 2:
                raise ParseError(f"{head!r} takes 2 arguments, got {len(args)}")
            return _BINARY[head](*args)
        if head == "ite":
            if len(args) != 3:
                raise ParseError("'ite' takes 3 arguments")
            return Ite(*args)
        if head == "and":
            return And(tuple(args))
        if head == "or":
            return Or(tuple(args))
        if head == "not":
            if len(args) != 1:
                raise ParseError("'not' takes 1 argument")
            return Not(args[0])
        if head == "f":
            if not allow_app:
                raise ParseError("'f' is only allowed in specifications")
            if arity is not None and len(args) != arity:
                raise ParseError(f"'f' applied to {len(args)} arguments, arity is {arity}")
            return App(tuple(args))
        raise ParseError(f"unknown operator {head!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input after position {pos}")
    return result
