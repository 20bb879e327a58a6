"""CNF formulas whose clauses hold three literals of distinct variables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .model import InputError

Clause = tuple[int, int, int]
Assignment = Mapping[int, bool]


@dataclass(frozen=True)
class Formula:
    """Variables are 1..n_vars; a negative literal negates its variable."""

    n_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.n_vars < 0:
            raise InputError("variable count must be non-negative")
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise InputError("every clause must hold exactly three literals")
            if any(not isinstance(lit, int) or lit == 0 for lit in c):
                raise InputError("literals must be non-zero integers")
            if any(abs(lit) > self.n_vars for lit in c):
                raise InputError("literal outside the declared variable range")
            if len({abs(lit) for lit in c}) != 3:
                raise InputError("clause variables must be pairwise distinct")


def evaluate(formula: Formula, assignment: Assignment) -> bool:
    return all(
        any(assignment[abs(lit)] == (lit > 0) for lit in clause)
        for clause in formula.clauses
    )


def assignments(n_vars: int) -> Iterator[dict[int, bool]]:
    for bits in itertools.product((False, True), repeat=n_vars):
        yield {i + 1: b for i, b in enumerate(bits)}


def satisfying_assignment(formula: Formula) -> Optional[dict[int, bool]]:
    for a in assignments(formula.n_vars):
        if evaluate(formula, a):
            return a
    return None


def is_satisfiable(formula: Formula) -> bool:
    return satisfying_assignment(formula) is not None


def all_clauses(n_vars: int) -> list[Clause]:
    """Every admissible clause over ``1..n_vars``, lexicographically."""
    out = []
    for vs in itertools.combinations(range(1, n_vars + 1), 3):
        for signs in itertools.product((1, -1), repeat=3):
            out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF, restricted to three-literal clauses."""
    n_vars = n_clauses = None
    lits: list[int] = []
    clauses: list[Clause] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"bad problem line: {line!r}")
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputError(f"bad problem line: {line!r}") from None
            continue
        if n_vars is None:
            raise InputError("clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InputError(f"bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(lits))
                lits = []
            else:
                lits.append(lit)
    if n_vars is None:
        raise InputError("missing problem line")
    if lits:
        raise InputError("unterminated clause")
    if len(clauses) != n_clauses:
        raise InputError(
            f"problem line declares {n_clauses} clauses, found {len(clauses)}"
        )
    return Formula(n_vars, tuple(clauses))


def emit_dimacs(formula: Formula) -> str:
    lines = [f"p cnf {formula.n_vars} {len(formula.clauses)}"]
    for c in formula.clauses:
        lines.append(" ".join(str(lit) for lit in c) + " 0")
    return "\n".join(lines) + "\n"


def random_formula(rng, n_vars: int, n_clauses: int) -> Formula:
    """Uniform clauses: three distinct variables, independent signs."""
    if n_vars < 3:
        raise InputError("need at least three variables")
    clauses = []
    for _ in range(n_clauses):
        vs = sorted(rng.sample(range(1, n_vars + 1), 3))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Formula(n_vars, tuple(clauses))
