"""Partition-logic formulas: parsing, evaluation on partition lattices,
and bounded validity search.

A formula is valid when every assignment of partitions (on any ground
set with at least two elements) evaluates to the discrete partition.
Only a bounded check is possible: `check_validity` sweeps all ground
sizes up to a limit and reports the least counterexample, if any, in a
deterministic order.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Optional, Union

from .errors import BudgetExceeded, FormulaSyntaxError, GroundMismatch, UnboundVariable
from .partitions import (
    GroundSet,
    Partition,
    bell_number,
    discrete_partition,
    enumerate_partitions,
    implication,
    indiscrete_partition,
    join,
    meet,
    notation,
)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Join:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Meet:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Top, Bottom, Join, Meet, Implies]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)"
    r"|(?P<top>1)"
    r"|(?P<bottom>0)"
    r"|(?P<join>\\/|∨)"
    r"|(?P<meet>/\\|∧)"
    r"|(?P<implies>=>|⇒)"
    r"|(?P<lparen>\()"
    r"|(?P<rparen>\)))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {text[at]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent; precedence meet > join > implies, implies
    right-associative."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.at = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.at]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.at]
        self.at += 1
        return tok

    def parse(self) -> Formula:
        f = self.implies_expr()
        kind, text, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected {text!r}", pos)
        return f

    def implies_expr(self) -> Formula:
        left = self.join_expr()
        if self.peek()[0] == "implies":
            self.take()
            return Implies(left, self.implies_expr())
        return left

    def join_expr(self) -> Formula:
        f = self.meet_expr()
        while self.peek()[0] == "join":
            self.take()
            f = Join(f, self.meet_expr())
        return f

    def meet_expr(self) -> Formula:
        f = self.atom()
        while self.peek()[0] == "meet":
            self.take()
            f = Meet(f, self.atom())
        return f

    def atom(self) -> Formula:
        kind, text, pos = self.take()
        if kind == "ident":
            return Var(text)
        if kind == "top":
            return Top()
        if kind == "bottom":
            return Bottom()
        if kind == "lparen":
            f = self.implies_expr()
            kind, text, pos = self.take()
            if kind != "rparen":
                raise FormulaSyntaxError("expected ')'", pos)
            return f
        raise FormulaSyntaxError(
            "unexpected end of formula" if kind == "eof"
            else f"unexpected {text!r}", pos
        )


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# precedence levels for printing: atoms bind tightest
_LEVEL = {Implies: 0, Join: 1, Meet: 2}


def pretty_print(f: Formula) -> str:
    def render(node: Formula, level: int) -> str:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Top):
            return "1"
        if isinstance(node, Bottom):
            return "0"
        own = _LEVEL[type(node)]
        if isinstance(node, Implies):
            text = f"{render(node.left, own + 1)} => {render(node.right, own)}"
        elif isinstance(node, Join):
            text = f"{render(node.left, own)} \\/ {render(node.right, own + 1)}"
        else:
            text = f"{render(node.left, own)} /\\ {render(node.right, own + 1)}"
        if own < level:
            return f"({text})"
        return text

    return render(f, 0)


def variables(f: Formula) -> tuple[str, ...]:
    """Variable names in sorted order."""
    seen: set[str] = set()

    def walk(node: Formula):
        if isinstance(node, Var):
            seen.add(node.name)
        elif isinstance(node, (Join, Meet, Implies)):
            walk(node.left)
            walk(node.right)

    walk(f)
    return tuple(sorted(seen))


def evaluate(
    f: Formula, assignment: dict[str, Partition], ground: GroundSet
) -> Partition:
    """Bottom-up evaluation with the partition lattice operations."""
    for name, pi in assignment.items():
        if pi.ground != ground:
            raise GroundMismatch(
                f"assignment for {name!r} lives on a different ground set"
            )

    def walk(node: Formula) -> Partition:
        if isinstance(node, Var):
            if node.name not in assignment:
                raise UnboundVariable(f"no partition assigned to {node.name!r}")
            return assignment[node.name]
        if isinstance(node, Top):
            return discrete_partition(ground)
        if isinstance(node, Bottom):
            return indiscrete_partition(ground)
        if isinstance(node, Join):
            return join(walk(node.left), walk(node.right))
        if isinstance(node, Meet):
            return meet(walk(node.left), walk(node.right))
        return implication(walk(node.left), walk(node.right))

    return walk(f)


def boolean_tautology(f: Formula) -> bool:
    """Evaluate over the two-element Boolean algebra instead; partition
    validity implies this, so a failure here is a cheap classical
    counterexample certificate."""
    names = variables(f)

    def walk(node: Formula, env: dict[str, bool]) -> bool:
        if isinstance(node, Var):
            return env[node.name]
        if isinstance(node, Top):
            return True
        if isinstance(node, Bottom):
            return False
        if isinstance(node, Join):
            return walk(node.left, env) or walk(node.right, env)
        if isinstance(node, Meet):
            return walk(node.left, env) and walk(node.right, env)
        return (not walk(node.left, env)) or walk(node.right, env)

    for mask in range(1 << len(names)):
        env = {name: bool(mask >> i & 1) for i, name in enumerate(names)}
        if not walk(f, env):
            return False
    return True


@dataclass(frozen=True)
class Counterexample:
    n: int
    assignment: dict[str, Partition]
    value: Partition


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the bounded search: either no counterexample up to the
    bound, or the least witness in (n, assignment) order."""

    status: str  # "valid-up-to-bound" | "counterexample"
    bound: int
    witness: Optional[Counterexample] = None

    @property
    def is_valid_up_to_bound(self) -> bool:
        return self.status == "valid-up-to-bound"

    def to_json(self) -> dict:
        data: dict = {"status": self.status, "bound": self.bound}
        if self.witness is not None:
            data["witness"] = {
                "n": self.witness.n,
                "assignment": {
                    name: notation(pi)
                    for name, pi in sorted(self.witness.assignment.items())
                },
                "value": notation(self.witness.value),
            }
        return data


DEFAULT_BUDGET = 1_000_000


def _ground_for(n: int) -> GroundSet:
    return GroundSet(tuple(string.ascii_lowercase[:n]))


def check_validity(
    f: Formula, max_n: int, budget: int = DEFAULT_BUDGET
) -> ValidityReport:
    """Search all assignments over ground sizes 2..max_n for an
    evaluation below the top.  Deterministic: smallest n first, then
    enumeration order per variable.  A pass is only a bounded claim."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    names = variables(f)
    spent = 0
    for n in range(2, max_n + 1):
        cost = bell_number(n) ** len(names)
        if spent + cost > budget:
            raise BudgetExceeded(
                f"assignment budget {budget} exhausted before n={n}",
                bound_reached=n - 1,
            )
        spent += cost
        ground = _ground_for(n)
        top = discrete_partition(ground)
        parts = list(enumerate_partitions(ground, max_n=max(n, 10)))
        def search(prefix: dict[str, Partition], rest: tuple[str, ...]):
            if not rest:
                value = evaluate(f, prefix, ground)
                if value != top:
                    return Counterexample(n, dict(prefix), value)
                return None
            name = rest[0]
            for pi in parts:
                prefix[name] = pi
                hit = search(prefix, rest[1:])
                if hit is not None:
                    return hit
            del prefix[name]
            return None

        witness = search({}, names)
        if witness is not None:
            return ValidityReport("counterexample", n, witness)
    return ValidityReport("valid-up-to-bound", max_n)
