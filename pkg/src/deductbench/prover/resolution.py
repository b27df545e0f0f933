"""Given-clause saturation with binary resolution and factoring.

Clause selection is smallest-first (symbol count, then age). Tautologies are
deleted, and subsumed clauses are dropped both forwards (new clauses against
the active set) and backwards (active clauses against each new given clause).
Every derived clause is recorded as a :class:`ProofStep`, so a refutation can
be replayed independently with :func:`check_proof`.
"""

from __future__ import annotations

import enum
import heapq
import time
from dataclasses import dataclass, field
from typing import Optional, Union

from ..core import Atom, Constant, Function, Variable
from .clausify import Clause, Literal, rename_literals


@dataclass(frozen=True)
class ProverBudget:
    max_clauses: int = 100_000
    max_seconds: float = 10.0

    def __post_init__(self):
        if self.max_clauses <= 0 or self.max_seconds <= 0:
            raise ValueError("prover budget limits must be positive")

    def to_dict(self) -> dict:
        return {"max_clauses": self.max_clauses, "max_seconds": self.max_seconds}

    @classmethod
    def from_dict(cls, d: dict) -> "ProverBudget":
        return cls(int(d.get("max_clauses", 100_000)), float(d.get("max_seconds", 10.0)))


DEFAULT_BUDGET = ProverBudget()


class Reason(str, enum.Enum):
    Saturated = "Saturated"
    BudgetExhausted = "BudgetExhausted"


@dataclass(frozen=True)
class BudgetUsed:
    clauses: int
    given: int


@dataclass(frozen=True)
class ProofStep:
    """One clause of a derivation.

    ``rule`` is ``input``, ``resolve`` or ``factor``; ``detail`` holds the
    literal indices the inference used, in parent order.
    """

    id: int
    clause: Clause
    rule: str
    parents: tuple = ()
    detail: tuple = ()

    def __str__(self) -> str:
        if self.rule == "input":
            return f"{self.id}. {self.clause}  [{self.clause.provenance}]"
        return f"{self.id}. {self.clause}  [{self.rule} {', '.join(map(str, self.parents))}]"


@dataclass(frozen=True)
class Entailed:
    proof: tuple
    budget_used: BudgetUsed = field(compare=False, default=BudgetUsed(0, 0))
    external: bool = False

    entailed = True
    status = "Entailed"

    def to_dict(self) -> dict:
        return {"status": self.status, "proof_length": len(self.proof)}


@dataclass(frozen=True)
class NotEntailed:
    reason: Reason
    budget_used: BudgetUsed = field(compare=False, default=BudgetUsed(0, 0))

    entailed = False
    status = "NotEntailed"

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason.value}


ProofOutcome = Union[Entailed, NotEntailed]


# --- Unification ---------------------------------------------------------


def _walk(t, sub: dict):
    while isinstance(t, Variable) and t.name in sub:
        t = sub[t.name]
    return t


def _occurs(name: str, t, sub: dict) -> bool:
    t = _walk(t, sub)
    if isinstance(t, Variable):
        return t.name == name
    if isinstance(t, Function):
        return any(_occurs(name, a, sub) for a in t.args)
    return False


def unify_terms(s, t, sub: dict) -> Optional[dict]:
    s, t = _walk(s, sub), _walk(t, sub)
    if isinstance(s, Variable):
        if isinstance(t, Variable) and t.name == s.name:
            return sub
        if _occurs(s.name, t, sub):
            return None
        return {**sub, s.name: t}
    if isinstance(t, Variable):
        return unify_terms(t, s, sub)
    if isinstance(s, Constant) and isinstance(t, Constant):
        return sub if s.name == t.name else None
    if isinstance(s, Function) and isinstance(t, Function):
        if s.name != t.name or len(s.args) != len(t.args):
            return None
        for a, b in zip(s.args, t.args):
            sub = unify_terms(a, b, sub)
            if sub is None:
                return None
        return sub
    return None


def unify_atoms(a: Atom, b: Atom, sub: Optional[dict] = None) -> Optional[dict]:
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    sub = {} if sub is None else sub
    for s, t in zip(a.args, b.args):
        sub = unify_terms(s, t, sub)
        if sub is None:
            return None
    return sub


def apply_term(t, sub: dict):
    t = _walk(t, sub)
    if isinstance(t, Function):
        return Function(t.name, tuple(apply_term(a, sub) for a in t.args))
    return t


def apply_literal(lit: Literal, sub: dict) -> Literal:
    if not sub:
        return lit
    return Literal(lit.sign, Atom(lit.atom.pred, tuple(apply_term(t, sub) for t in lit.atom.args)))


# --- Inferences ----------------------------------------------------------


def _apart(c: Clause) -> tuple:
    names = c.variables()
    if not names:
        return c.literals
    return rename_literals(c.literals, {v: f"Y{i}" for i, v in enumerate(names)})


def resolve(c1: Clause, c2: Clause, i: int, j: int) -> Optional[Clause]:
    """Binary resolvent on literal ``i`` of ``c1`` and ``j`` of ``c2``, if any."""
    lits2 = _apart(c2)
    a, b = c1.literals[i], lits2[j]
    if a.sign == b.sign:
        return None
    sub = unify_atoms(a.atom, b.atom)
    if sub is None:
        return None
    rest = [lit for k, lit in enumerate(c1.literals) if k != i]
    rest += [lit for k, lit in enumerate(lits2) if k != j]
    return Clause(tuple(apply_literal(lit, sub) for lit in rest), "resolve")


def factor(c: Clause, i: int, j: int) -> Optional[Clause]:
    a, b = c.literals[i], c.literals[j]
    if a.sign != b.sign:
        return None
    sub = unify_atoms(a.atom, b.atom)
    if sub is None:
        return None
    return Clause(tuple(apply_literal(lit, sub) for k, lit in enumerate(c.literals) if k != j), "factor")


def _match_term(p, t, sub: dict) -> Optional[dict]:
    """One-way matching: bind variables of ``p`` only."""
    if isinstance(p, Variable):
        if p.name in sub:
            return sub if sub[p.name] == t else None
        return {**sub, p.name: t}
    if isinstance(p, Constant):
        return sub if p == t else None
    if not isinstance(t, Function) or p.name != t.name or len(p.args) != len(t.args):
        return None
    for a, b in zip(p.args, t.args):
        sub = _match_term(a, b, sub)
        if sub is None:
            return None
    return sub


def _match_literal(p: Literal, t: Literal, sub: dict) -> Optional[dict]:
    if p.sign != t.sign or p.atom.pred != t.atom.pred or len(p.atom.args) != len(t.atom.args):
        return None
    for a, b in zip(p.atom.args, t.atom.args):
        sub = _match_term(a, b, sub)
        if sub is None:
            return None
    return sub


def subsumes(c: Clause, d: Clause) -> bool:
    """True iff some substitution maps every literal of ``c`` into ``d``."""
    if len(c.literals) > len(d.literals):
        return False
    if not c.heads <= d.heads:
        return False
    if not c._variables:
        return c.literal_set <= d.literal_set
    # Matching binds variables of c only, so clashing names in d are harmless.
    pattern = c.literals

    def search(k: int, sub: dict) -> bool:
        if k == len(pattern):
            return True
        for lit in d.literals:
            s = _match_literal(pattern[k], lit, sub)
            if s is not None and search(k + 1, s):
                return True
        return False

    return search(0, {})


def is_tautology(c: Clause) -> bool:
    pos = {lit.atom for lit in c.literals if lit.sign}
    return bool(pos) and any(not lit.sign and lit.atom in pos for lit in c.literals)


def _term_size(t) -> int:
    if isinstance(t, Function):
        return 1 + sum(_term_size(a) for a in t.args)
    return 1


def weight(c: Clause) -> int:
    return sum(1 + sum(_term_size(t) for t in lit.atom.args) for lit in c.literals)


# --- Saturation ----------------------------------------------------------


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, budget: ProverBudget):
        self.budget = budget
        self.steps = []
        self.passive = []
        self.active = []
        self.seen = set()
        self.given = 0
        self.deadline = time.monotonic() + budget.max_seconds

    def add(self, clause: Clause, rule: str, parents=(), detail=()) -> Optional[ProofStep]:
        if is_tautology(clause) or clause.literals in self.seen:
            return None
        if rule != "input" and any(subsumes(self.steps[a].clause, clause) for a in self.active):
            return None
        if len(self.steps) >= self.budget.max_clauses:
            raise _Budget()
        step = ProofStep(len(self.steps), clause, rule, tuple(parents), tuple(detail))
        self.steps.append(step)
        self.seen.add(clause.literals)
        heapq.heappush(self.passive, (weight(clause), step.id))
        return step

    def used(self) -> BudgetUsed:
        return BudgetUsed(len(self.steps), self.given)

    def proof(self, last: ProofStep) -> tuple:
        needed = set()
        stack = [last.id]
        while stack:
            i = stack.pop()
            if i not in needed:
                needed.add(i)
                stack.extend(self.steps[i].parents)
        return tuple(self.steps[i] for i in sorted(needed))

    def infer(self, g: ProofStep):
        """Yield (clause, rule, parents, detail) for all inferences with ``g``."""
        c = g.clause
        n = len(c.literals)
        for i in range(n):
            for j in range(i + 1, n):
                f = factor(c, i, j)
                if f is not None:
                    yield f, "factor", (g.id,), (i, j)
        for a in self.active:
            other = self.steps[a].clause
            for i, lit in enumerate(c.literals):
                for j, olit in enumerate(other.literals):
                    if lit.sign == olit.sign or lit.atom.pred != olit.atom.pred:
                        continue
                    r = resolve(c, other, i, j)
                    if r is not None:
                        yield r, "resolve", (g.id, a), (i, j)

    def run(self, clauses) -> ProofOutcome:
        try:
            for c in clauses:
                step = self.add(c, "input")
                if step is not None and c.is_empty:
                    return Entailed(self.proof(step), self.used())
            while self.passive:
                if time.monotonic() > self.deadline:
                    return NotEntailed(Reason.BudgetExhausted, self.used())
                _, gid = heapq.heappop(self.passive)
                g = self.steps[gid]
                if any(subsumes(self.steps[a].clause, g.clause) for a in self.active):
                    continue
                self.given += 1
                self.active = [a for a in self.active if not subsumes(g.clause, self.steps[a].clause)]
                self.active.append(gid)
                for clause, rule, parents, detail in self.infer(g):
                    step = self.add(clause, rule, parents, detail)
                    if step is not None and clause.is_empty:
                        return Entailed(self.proof(step), self.used())
        except _Budget:
            return NotEntailed(Reason.BudgetExhausted, self.used())
        return NotEntailed(Reason.Saturated, self.used())


def saturate(clauses, budget: ProverBudget = DEFAULT_BUDGET) -> ProofOutcome:
    """Search for the empty clause among consequences of ``clauses``."""
    return _Search(budget).run(list(clauses))


def check_proof(proof, inputs=None) -> bool:
    """Replay a derivation: every step must follow from its parents and the
    last clause must be empty. ``inputs`` optionally restricts input steps."""
    if not proof:
        return False
    by_id = {}
    allowed = None if inputs is None else {c.literals for c in inputs}
    for step in proof:
        if step.rule == "input":
            if allowed is not None and step.clause.literals not in allowed:
                return False
        elif step.rule == "resolve":
            if len(step.parents) != 2 or any(p not in by_id for p in step.parents):
                return False
            i, j = step.detail
            c1, c2 = by_id[step.parents[0]], by_id[step.parents[1]]
            if not (0 <= i < len(c1.literals) and 0 <= j < len(c2.literals)):
                return False
            if resolve(c1, c2, i, j) != step.clause:
                return False
        elif step.rule == "factor":
            if len(step.parents) != 1 or step.parents[0] not in by_id:
                return False
            i, j = step.detail
            c = by_id[step.parents[0]]
            if not (0 <= i < j < len(c.literals)) or factor(c, i, j) != step.clause:
                return False
        else:
            return False
        by_id[step.id] = step.clause
    return proof[-1].clause.is_empty
