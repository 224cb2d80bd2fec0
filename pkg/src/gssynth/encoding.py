"""CNF encoding of bounded reachability between graph states.

An unrolling with `num_states` states lays out variables as follows (DIMACS
variables are 1-based):

* one edge variable per vertex pair per state, state-major in lexicographic
  pair order: state s occupies variables s*P+1 .. (s+1)*P where P = n(n-1)/2;
* per transition t (between states t and t+1), a selector block after all the
  edge variables: `sel_bits` y-bits choosing the operation argument, then two
  z-bits choosing the operation kind, both least-significant-bit first.

Kinds: z=0 local complementation, z=1 vertex deletion, z=2 edge flip of the
y-th designated pair, z=3 identity.

Each operation relation is a clause set over the edge variables of two
consecutive states.  A transition is the conjunction of every relation widened
by its selector guard: a clause c of the relation for argument k and kind val
becomes neq(y, k) + neq(z, val) + c, so the relation only bites when the
selectors pick it.  A domain constraint keeps the selectors meaningful:
z in {0,1} forces y < n, z=2 forces y < |D| (or is forbidden outright when
D is empty), z=3 forces y = 0.

The full formula conjoins unit clauses pinning state 0 to the source graph,
all transitions, and unit clauses pinning the last state to the target.  With
the identity available, satisfiability is monotone in the number of states, so
the formula is satisfiable iff the target is reachable in at most
num_states - 1 operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

from .cnf import Clause, CnfFormula
from .graphs import Edge, Graph, normalize_edge, pair_count, pair_index, pairs

KIND_LC = 0
KIND_VD = 1
KIND_EF = 2
KIND_ID = 3


def selector_bits(n: int, num_designated: int) -> int:
    """Width of the y register: enough bits for any vertex or designated index.

    Equals ceil(log2(max(n, |D|) + 1)).
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    return max(n, num_designated).bit_length()


@dataclass(frozen=True)
class SynthesisInstance:
    """Source graph, target graph, and the designated pairs EF may flip."""

    source: Graph
    target: Graph
    designated: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.source.n != self.target.n:
            raise ValueError("source and target must have the same vertex count")
        norm = tuple(normalize_edge(u, v) for u, v in self.designated)
        for u, v in norm:
            if v >= self.source.n:
                raise ValueError(f"designated pair ({u}, {v}) out of range")
        if len(set(norm)) != len(norm):
            raise ValueError("designated pairs must be distinct")
        object.__setattr__(self, "designated", norm)

    @property
    def n(self) -> int:
        return self.source.n


@dataclass(frozen=True)
class StepLayout:
    """Variable numbering for one unrolling."""

    n: int
    num_states: int
    num_designated: int = 0

    def __post_init__(self) -> None:
        if self.num_states < 1:
            raise ValueError("need at least one state")

    @property
    def pairs_per_state(self) -> int:
        return pair_count(self.n)

    @property
    def sel_bits(self) -> int:
        return selector_bits(self.n, self.num_designated)

    @property
    def num_transitions(self) -> int:
        return self.num_states - 1

    @property
    def selector_block(self) -> int:
        """Variables per transition selector block (y bits plus two z bits)."""
        return self.sel_bits + 2

    @property
    def total_vars(self) -> int:
        return self.num_states * self.pairs_per_state + self.num_transitions * self.selector_block

    def edge_var(self, step: int, u: int, v: int) -> int:
        if not 0 <= step < self.num_states:
            raise ValueError(f"step {step} out of range")
        u, v = normalize_edge(u, v)
        return 1 + step * self.pairs_per_state + pair_index(self.n, u, v)

    def _selector_base(self, transition: int) -> int:
        if not 0 <= transition < self.num_transitions:
            raise ValueError(f"transition {transition} out of range")
        return self.num_states * self.pairs_per_state + transition * self.selector_block

    def y_vars(self, transition: int) -> List[int]:
        base = self._selector_base(transition)
        return [base + 1 + j for j in range(self.sel_bits)]

    def z_vars(self, transition: int) -> List[int]:
        base = self._selector_base(transition) + self.sel_bits
        return [base + 1, base + 2]


# --- primitive clause builders ------------------------------------------------


def encode_neq(variables: Sequence[int], value: int) -> Clause:
    """One clause forcing the register (LSB first) to differ from value."""
    if not 0 <= value < 1 << len(variables):
        raise ValueError(f"value {value} out of range for {len(variables)} bits")
    return [-var if value >> j & 1 else var for j, var in enumerate(variables)]


def encode_leq(variables: Sequence[int], bound: int) -> List[Clause]:
    """Clauses forcing the register (LSB first) to be at most bound."""
    if not 0 <= bound < 1 << len(variables):
        raise ValueError(f"bound {bound} out of range for {len(variables)} bits")
    clauses: List[Clause] = []
    for j, var in enumerate(variables):
        if bound >> j & 1:
            continue
        clause = [-var]
        clause.extend(
            -variables[i] for i in range(j + 1, len(variables)) if bound >> i & 1
        )
        clauses.append(clause)
    return clauses


def encode_graph_constraint(g: Graph, step: int, layout: StepLayout) -> List[Clause]:
    """Unit clauses pinning one state to a concrete graph."""
    if g.n != layout.n:
        raise ValueError("graph size does not match layout")
    units: List[Clause] = []
    for u, v in pairs(g.n):
        var = layout.edge_var(step, u, v)
        units.append([var] if g.has_edge(u, v) else [-var])
    return units


# --- operation relations ------------------------------------------------------
#
# Each encode_* below relates the edge variables of states t and t+1,
# unconditionally; encode_transition adds the selector guards.


def encode_vd(k: int, transition: int, layout: StepLayout) -> List[Clause]:
    """Vertex deletion at k: pairs touching k go absent, the rest are copied."""
    t, n = transition, layout.n
    clauses: List[Clause] = []
    for u, v in pairs(n):
        pre = layout.edge_var(t, u, v)
        post = layout.edge_var(t + 1, u, v)
        if k in (u, v):
            clauses.append([-post])
        else:
            clauses.append([post, -pre])
            clauses.append([-post, pre])
    return clauses


def encode_lc(k: int, transition: int, layout: StepLayout) -> List[Clause]:
    """Local complementation at k.

    A pair (u, v) avoiding k flips exactly when both u and v are neighbors of
    k in the pre-state; pairs touching k are copied unchanged.
    """
    t, n = transition, layout.n
    clauses: List[Clause] = []
    for u, v in pairs(n):
        pre = layout.edge_var(t, u, v)
        post = layout.edge_var(t + 1, u, v)
        if k in (u, v):
            clauses.append([post, -pre])
            clauses.append([-post, pre])
            continue
        uk = layout.edge_var(t, *normalize_edge(u, k))
        vk = layout.edge_var(t, *normalize_edge(v, k))
        clauses.append([-uk, -vk, post, pre])
        clauses.append([-uk, -vk, -post, -pre])
        clauses.append([uk, post, -pre])
        clauses.append([vk, post, -pre])
        clauses.append([uk, -post, pre])
        clauses.append([vk, -post, pre])
    return clauses


def encode_ef(designated_pair: Edge, transition: int, layout: StepLayout) -> List[Clause]:
    """Edge flip of one designated pair: it toggles, the rest are copied."""
    t, n = transition, layout.n
    flip = normalize_edge(*designated_pair)
    clauses: List[Clause] = []
    for u, v in pairs(n):
        pre = layout.edge_var(t, u, v)
        post = layout.edge_var(t + 1, u, v)
        if (u, v) == flip:
            clauses.append([post, pre])
            clauses.append([-post, -pre])
        else:
            clauses.append([post, -pre])
            clauses.append([-post, pre])
    return clauses


def encode_identity(transition: int, layout: StepLayout) -> List[Clause]:
    """Copy the state unchanged whenever the kind selector picks identity.

    Unlike the other relations the z-guard is built in, because identity is
    selected by kind alone (no argument).
    """
    t = transition
    guard = encode_neq(layout.z_vars(t), KIND_ID)
    clauses: List[Clause] = []
    for u, v in pairs(layout.n):
        pre = layout.edge_var(t, u, v)
        post = layout.edge_var(t + 1, u, v)
        clauses.append([*guard, post, -pre])
        clauses.append([*guard, -post, pre])
    return clauses


def _selector_domain(transition: int, layout: StepLayout) -> List[Clause]:
    """Constrain selectors to meaningful values.

    z in {0,1} implies y < n; z = 2 implies y < |D| (z=2 outlawed entirely when
    no pairs are designated); z = 3 implies y = 0 so padded steps decode
    uniquely.
    """
    y = layout.y_vars(transition)
    z0, z1 = layout.z_vars(transition)
    clauses: List[Clause] = []
    # z1 true covers both z=2 and z=3, so appending z1 limits the scope of the
    # y-bound to z in {0,1}
    for clause in encode_leq(y, layout.n - 1):
        clauses.append([*clause, z1])
    if layout.num_designated > 0:
        for clause in encode_leq(y, layout.num_designated - 1):
            clauses.append([*clause, z0, -z1])
    else:
        clauses.append([z0, -z1])
    for var in y:
        clauses.append([-z0, -z1, -var])
    return clauses


def encode_transition(
    inst: SynthesisInstance, transition: int, layout: StepLayout
) -> List[Clause]:
    """All relations between states t and t+1, widened by selector guards."""
    t = transition
    y = layout.y_vars(t)
    z = layout.z_vars(t)
    clauses: List[Clause] = []
    for k in range(layout.n):
        arg_guard = encode_neq(y, k)
        guard = [*arg_guard, *encode_neq(z, KIND_LC)]
        for clause in encode_lc(k, t, layout):
            clauses.append([*guard, *clause])
        guard = [*arg_guard, *encode_neq(z, KIND_VD)]
        for clause in encode_vd(k, t, layout):
            clauses.append([*guard, *clause])
    for i, pair in enumerate(inst.designated):
        guard = [*encode_neq(y, i), *encode_neq(z, KIND_EF)]
        for clause in encode_ef(pair, t, layout):
            clauses.append([*guard, *clause])
    clauses.extend(encode_identity(t, layout))
    clauses.extend(_selector_domain(t, layout))
    return clauses


# --- whole-instance encoding ---------------------------------------------------


def encode_bmc(inst: SynthesisInstance, num_states: int) -> Tuple[CnfFormula, StepLayout]:
    """Reachability formula: SAT iff target reachable in <= num_states - 1 ops.

    With a single state the formula is just the union of the source and target
    unit constraints on that state (duplicates merged), which is satisfiable
    exactly when source equals target.
    """
    layout = StepLayout(inst.n, num_states, len(inst.designated))
    formula = CnfFormula(layout.total_vars)
    if num_states == 1:
        seen = set()
        for clause in encode_graph_constraint(
            inst.source, 0, layout
        ) + encode_graph_constraint(inst.target, 0, layout):
            if clause[0] not in seen:
                seen.add(clause[0])
                formula.add_clause(clause)
        return formula, layout
    formula.add_clauses(encode_graph_constraint(inst.source, 0, layout))
    for t in range(layout.num_transitions):
        formula.add_clauses(encode_transition(inst, t, layout))
    formula.add_clauses(encode_graph_constraint(inst.target, num_states - 1, layout))
    return formula, layout


class TransitionBound(NamedTuple):
    variables: int
    clauses: float


def clause_bound(n: int, num_designated: int) -> TransitionBound:
    """Closed-form per-transition size: exact variable count, clause ceiling.

    Variables: n(n-1) edge variables across the two states plus the m-bit
    argument register and 2 kind bits.  Clauses: 3.5*n^3 + 2*m*n^2 + 0.5*n^2
    + 0.5*|D|*n^2, loose for small n; holds across the supported sizes.
    """
    m = selector_bits(n, num_designated)
    clauses = 3.5 * n**3 + 2 * m * n**2 + 0.5 * n**2 + 0.5 * num_designated * n**2
    return TransitionBound(n * (n - 1) + m + 2, clauses)


# --- layout sidecar format ------------------------------------------------------
#
# A small key-value text file describing the variable layout of an emitted
# DIMACS file, so other tools can decode models without this package.


def layout_to_text(layout: StepLayout) -> str:
    lines = [
        f"n {layout.n}",
        f"num_states {layout.num_states}",
        f"num_designated {layout.num_designated}",
        f"sel_bits {layout.sel_bits}",
        f"pairs_per_state {layout.pairs_per_state}",
        "edge_vars_start 1",
        f"selector_vars_start {layout.num_states * layout.pairs_per_state + 1}",
        f"selector_block {layout.selector_block}",
        f"total_vars {layout.total_vars}",
    ]
    return "\n".join(lines) + "\n"


def layout_from_text(text: str) -> StepLayout:
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        fields[key] = int(value)
    try:
        layout = StepLayout(fields["n"], fields["num_states"], fields["num_designated"])
    except KeyError as exc:
        raise ValueError(f"layout text missing field {exc.args[0]!r}") from exc
    for key, expect in (
        ("sel_bits", layout.sel_bits),
        ("pairs_per_state", layout.pairs_per_state),
        ("selector_block", layout.selector_block),
        ("total_vars", layout.total_vars),
    ):
        if key in fields and fields[key] != expect:
            raise ValueError(f"layout field {key} is {fields[key]}, expected {expect}")
    return layout
