"""SAT solver backends.

Two interchangeable backends solve CnfFormula instances:

* ExternalSolver shells out to any DIMACS solver that prints SAT-competition
  "s ..."/"v ..." output (splr, kissat, cadical, glucose, ...).
* InProcessSolver is a self-contained CDCL solver, useful where no solver
  binary is installed.

Both return a SolveResult with the same semantics, so callers never depend on
which backend ran.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Protocol, Sequence

from .cnf import Assignment, CnfFormula, SolveStatus, parse_model, write_dimacs

SOLVER_ENV_VAR = "GSSYNTH_SOLVER"


@dataclass
class SolveResult:
    status: SolveStatus
    assignment: Optional[Assignment]
    seconds: float
    detail: str = ""


class SolverBackend(Protocol):
    name: str

    def solve(self, formula: CnfFormula, timeout: Optional[float] = None) -> SolveResult:
        ...


class SolverNotFoundError(RuntimeError):
    pass


# --- external backend --------------------------------------------------------


class ExternalSolver:
    """Run a solver binary on a DIMACS file and parse its stdout.

    The solver runs inside a fresh temporary directory so solvers that drop
    answer files never pollute the caller's working directory.  Exit status is
    ignored; only the "s"/"v" lines are trusted.
    """

    def __init__(self, command: Sequence[str], name: Optional[str] = None) -> None:
        if not command:
            raise ValueError("empty solver command")
        resolved = shutil.which(command[0])
        if resolved is None:
            raise SolverNotFoundError(f"solver binary {command[0]!r} not on PATH")
        self.command = [resolved, *command[1:]]
        self.name = name or os.path.basename(command[0])

    def solve(self, formula: CnfFormula, timeout: Optional[float] = None) -> SolveResult:
        start = time.monotonic()
        with tempfile.TemporaryDirectory(prefix="gssynth-") as tmp:
            path = os.path.join(tmp, "problem.cnf")
            with open(path, "w") as fh:
                fh.write(write_dimacs(formula))
            try:
                proc = subprocess.run(
                    [*self.command, path],
                    cwd=tmp,
                    capture_output=True,
                    text=True,
                    timeout=timeout,
                )
            except subprocess.TimeoutExpired:
                return SolveResult(
                    SolveStatus.UNKNOWN,
                    None,
                    time.monotonic() - start,
                    detail="timeout",
                )
            status, assignment = parse_model(proc.stdout, formula.num_vars)
        return SolveResult(status, assignment, time.monotonic() - start)


# solvers probed for on PATH, with the flags that make them print a model
_KNOWN_SOLVERS = (
    ("kissat", ["-q"]),
    ("cadical", ["-q"]),
    ("cadical-dimacs", []),
    ("glucose", ["-model"]),
    ("varisat", []),
    ("splr", ["-q", "-r", "-"]),
)


def resolve_backend(spec: Optional[str] = None) -> SolverBackend:
    """Pick a backend.

    Order: explicit `spec` command line, then the GSSYNTH_SOLVER environment
    variable, then the first known solver binary on PATH, then the in-process
    solver.  `spec="builtin"` forces the in-process solver.
    """
    spec = spec if spec is not None else os.environ.get(SOLVER_ENV_VAR)
    if spec is not None:
        spec = spec.strip()
        if spec == "builtin":
            return InProcessSolver()
        parts = shlex.split(spec)
        if not parts:
            raise ValueError("empty solver command")
        base = os.path.basename(parts[0])
        if len(parts) == 1:
            for name, args in _KNOWN_SOLVERS:
                if base == name:
                    return ExternalSolver([parts[0], *args], name=name)
        return ExternalSolver(parts)
    for name, args in _KNOWN_SOLVERS:
        if shutil.which(name):
            return ExternalSolver([name, *args], name=name)
    return InProcessSolver()


# --- in-process backend -------------------------------------------------------


class InProcessSolver:
    """Conflict-driven clause learning solver.

    Two-literal watching, first-UIP learning, exponential-decay variable
    activities with phase saving, and Luby-sequence restarts.  Deterministic:
    no randomized heuristics, so repeated runs give identical models.
    """

    name = "builtin"

    def __init__(self, restart_base: int = 128, activity_decay: float = 0.95) -> None:
        self.restart_base = restart_base
        self.activity_decay = activity_decay

    def solve(self, formula: CnfFormula, timeout: Optional[float] = None) -> SolveResult:
        start = time.monotonic()
        deadline = start + timeout if timeout is not None else None
        search = _Search(formula, self.restart_base, self.activity_decay)
        status, model = search.run(deadline)
        return SolveResult(
            status,
            model,
            time.monotonic() - start,
            detail="timeout" if status is SolveStatus.UNKNOWN else "",
        )


def _luby(i: int) -> int:
    """i-th term (1-based) of the Luby restart sequence 1 1 2 1 1 2 4 ..."""
    x = i - 1
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return 1 << seq


class _Search:
    def __init__(self, formula: CnfFormula, restart_base: int, decay: float) -> None:
        self.nv = formula.num_vars
        self.restart_base = restart_base
        self.decay = decay
        self.assign = [0] * (self.nv + 1)  # 0 free, 1 true, -1 false
        self.level = [0] * (self.nv + 1)
        self.reason: List[Optional[List[int]]] = [None] * (self.nv + 1)
        self.saved_phase = [False] * (self.nv + 1)
        self.activity = [0.0] * (self.nv + 1)
        self.act_inc = 1.0
        self.watches: Dict[int, List[List[int]]] = {}
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.root_conflict = False
        for clause in formula.clauses:
            self._add_clause(sorted(set(clause), key=abs))

    # clause setup -------------------------------------------------------

    def _add_clause(self, clause: List[int]) -> None:
        if any(-lit in clause for lit in clause):
            return  # tautology
        if not clause:
            self.root_conflict = True
            return
        if len(clause) == 1:
            if not self._enqueue(clause[0], None):
                self.root_conflict = True
            return
        self._attach(clause)

    def _attach(self, clause: List[int]) -> None:
        self.watches.setdefault(clause[0], []).append(clause)
        self.watches.setdefault(clause[1], []).append(clause)

    # assignment ---------------------------------------------------------

    def _value(self, lit: int) -> int:
        a = self.assign[lit if lit > 0 else -lit]
        if a == 0:
            return 0
        return a if lit > 0 else -a

    def _enqueue(self, lit: int, reason: Optional[List[int]]) -> bool:
        val = self._value(lit)
        if val != 0:
            return val > 0
        var = abs(lit)
        self.assign[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)
        return True

    def _cancel_until(self, target_level: int) -> None:
        while len(self.trail_lim) > target_level:
            mark = self.trail_lim.pop()
            for lit in self.trail[mark:]:
                var = abs(lit)
                self.saved_phase[var] = lit > 0
                self.assign[var] = 0
                self.reason[var] = None
            del self.trail[mark:]
        self.qhead = min(self.qhead, len(self.trail))

    # propagation --------------------------------------------------------

    def _propagate(self) -> Optional[List[int]]:
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watchers = self.watches.get(false_lit)
            if not watchers:
                continue
            kept: List[List[int]] = []
            idx = 0
            total = len(watchers)
            while idx < total:
                clause = watchers[idx]
                idx += 1
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._value(first) > 0:
                    kept.append(clause)
                    continue
                for k in range(2, len(clause)):
                    if self._value(clause[k]) >= 0:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches.setdefault(clause[1], []).append(clause)
                        break
                else:
                    kept.append(clause)
                    if self._value(first) < 0:
                        kept.extend(watchers[idx:])
                        self.watches[false_lit] = kept
                        return clause
                    self._enqueue(first, clause)
            self.watches[false_lit] = kept
        return None

    # learning -----------------------------------------------------------

    def _bump(self, var: int) -> None:
        self.activity[var] += self.act_inc
        if self.activity[var] > 1e100:
            for v in range(1, self.nv + 1):
                self.activity[v] *= 1e-100
            self.act_inc *= 1e-100

    def _analyze(self, conflict: List[int]) -> tuple[List[int], int]:
        """First-UIP learned clause and the level to backjump to."""
        current = len(self.trail_lim)
        seen = [False] * (self.nv + 1)
        learned: List[int] = [0]  # slot 0 gets the asserting literal
        counter = 0
        clause: Optional[List[int]] = conflict
        index = len(self.trail) - 1
        pivot = 0
        while True:
            assert clause is not None
            for lit in clause:
                var = abs(lit)
                # the pivot literal itself drops out of the resolvent
                if lit == pivot or seen[var] or self.level[var] == 0:
                    continue
                seen[var] = True
                self._bump(var)
                if self.level[var] == current:
                    counter += 1
                else:
                    learned.append(lit)
            while not seen[abs(self.trail[index])]:
                index -= 1
            pivot = self.trail[index]
            var = abs(pivot)
            seen[var] = False
            index -= 1
            counter -= 1
            if counter == 0:
                break
            clause = self.reason[var]
        learned[0] = -pivot
        if len(learned) == 1:
            return learned, 0
        # watch the highest-level non-asserting literal so the clause stays
        # correct after the backjump
        back_pos = max(range(1, len(learned)), key=lambda i: self.level[abs(learned[i])])
        learned[1], learned[back_pos] = learned[back_pos], learned[1]
        return learned, self.level[abs(learned[1])]

    # main loop ----------------------------------------------------------

    def _pick_branch_var(self) -> int:
        best = 0
        best_act = -1.0
        for var in range(1, self.nv + 1):
            if self.assign[var] == 0 and self.activity[var] > best_act:
                best = var
                best_act = self.activity[var]
        return best

    def run(self, deadline: Optional[float]) -> tuple[SolveStatus, Optional[Assignment]]:
        if self.root_conflict or self._propagate() is not None:
            return SolveStatus.UNSAT, None
        conflicts = 0
        restart_count = 1
        restart_limit = self.restart_base * _luby(restart_count)
        conflicts_since_restart = 0
        while True:
            conflict = self._propagate()
            if conflict is not None:
                if not self.trail_lim:
                    return SolveStatus.UNSAT, None
                conflicts += 1
                conflicts_since_restart += 1
                learned, back_level = self._analyze(conflict)
                self._cancel_until(back_level)
                if len(learned) > 1:
                    self._attach(learned)
                self._enqueue(learned[0], learned if len(learned) > 1 else None)
                self.act_inc /= self.decay
                if conflicts % 256 == 0 and deadline is not None:
                    if time.monotonic() > deadline:
                        return SolveStatus.UNKNOWN, None
                if conflicts_since_restart >= restart_limit:
                    restart_count += 1
                    restart_limit = self.restart_base * _luby(restart_count)
                    conflicts_since_restart = 0
                    self._cancel_until(0)
                continue
            var = self._pick_branch_var()
            if var == 0:
                model = {v: self.assign[v] > 0 for v in range(1, self.nv + 1)}
                return SolveStatus.SAT, model
            if deadline is not None and time.monotonic() > deadline:
                return SolveStatus.UNKNOWN, None
            self.trail_lim.append(len(self.trail))
            self._enqueue(var if self.saved_phase[var] else -var, None)
