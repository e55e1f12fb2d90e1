"""Two-valued (dispersion-free) states: enumeration, separation, embedding.

A two-valued state assigns 0/1 to every atom so that each block carries
exactly one 1.  For a plain block logic the full set is found by backtracking
with constraint propagation; for a partition logic the model's states are the
valuations induced by its ground states (one per ground state, merged when
two ground states are indistinguishable by the cells).
"""

from __future__ import annotations

from dataclasses import dataclass

from .logics import (
    Logic,
    PartitionLogic,
    builtin,
    builtin_logic,
    from_partitions,
    merged_cells,
    validate_logic,
)


@dataclass(frozen=True)
class StateSet:
    """All two-valued states of a logic, sorted descending lexicographically."""

    logic: Logic
    states: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.states)


def _canonical(states) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(states), reverse=True))


def block_states(logic: Logic) -> StateSet:
    """Enumerate every exactly-one-per-block assignment of a valid logic.

    Backtracking branches on the lowest-index unassigned atom inside the
    most-constrained open block; setting a 1 zeroes its blockmates, and a
    block reduced to a single open atom with no 1 forces that atom.
    An empty result is legal: the logic then admits no dispersion-free state.
    """
    diags = validate_logic(logic)
    if not diags.ok:
        raise ValueError(f"invalid logic: {diags.violations}")
    n = len(logic.atoms)
    blocks = logic.blocks
    atom_blocks: list[tuple[int, ...]] = [
        tuple(b for b, blk in enumerate(blocks) if i in blk) for i in range(n)
    ]
    assign: list[int | None] = [None] * n
    ones = [0] * len(blocks)
    open_count = [len(blk) for blk in blocks]
    found: list[tuple[int, ...]] = []

    def set_atom(i: int, val: int, trail: list[int]) -> bool:
        stack = [(i, val)]
        while stack:
            j, v = stack.pop()
            if assign[j] is not None:
                if assign[j] != v:
                    return False
                continue
            assign[j] = v
            trail.append(j)
            for b in atom_blocks[j]:
                open_count[b] -= 1
                ones[b] += v
                if ones[b] > 1:
                    return False
                if v == 1:
                    for t in blocks[b]:
                        if assign[t] is None:
                            stack.append((t, 0))
                elif ones[b] == 0:
                    if open_count[b] == 0:
                        return False
                    if open_count[b] == 1:
                        last = next(t for t in blocks[b] if assign[t] is None)
                        stack.append((last, 1))
        return True

    def undo(trail: list[int]) -> None:
        while trail:
            j = trail.pop()
            v = assign[j]
            assign[j] = None
            for b in atom_blocks[j]:
                open_count[b] += 1
                ones[b] -= v

    def choose() -> int | None:
        best_b = None
        best_u = None
        for b in range(len(blocks)):
            if ones[b] == 0:
                u = open_count[b]
                if best_u is None or u < best_u:
                    best_u, best_b = u, b
        return best_b

    def search() -> None:
        b = choose()
        if b is None:
            # every block holds a 1; propagation already fixed all atoms
            found.append(tuple(assign))
            return
        i = min(t for t in blocks[b] if assign[t] is None)
        for v in (1, 0):
            trail: list[int] = []
            if set_atom(i, v, trail):
                search()
            undo(trail)

    search()
    return StateSet(logic=logic, states=_canonical(found))


def model_states(p: PartitionLogic, atom_names: list[str] | None = None) -> StateSet:
    """States of the partition model: valuations induced by the ground states."""
    logic = from_partitions(p, atom_names=atom_names)
    cells = merged_cells(p)
    states = [
        tuple(1 if g in cell else 0 for cell in cells) for g in p.ground_states
    ]
    return StateSet(logic=logic, states=_canonical(states))


def enumerate_states(structure: Logic | PartitionLogic) -> StateSet:
    """All two-valued states of a logic, or of a partition model."""
    if isinstance(structure, PartitionLogic):
        return model_states(structure)
    return block_states(structure)


def builtin_states(name: str) -> StateSet:
    """State set of a builtin, over the conventionally named logic."""
    obj = builtin(name)
    if isinstance(obj, PartitionLogic):
        return model_states(obj, atom_names=list(builtin_logic(name).atoms))
    return block_states(obj)


def is_separating(s: StateSet) -> tuple[bool, tuple[str, str] | None]:
    """Whether every pair of distinct atoms is told apart by some state.

    On failure the first undistinguished pair is returned as witness; an
    empty state set distinguishes nothing.
    """
    atoms = s.logic.atoms
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            if all(st[i] == st[j] for st in s.states):
                return False, (atoms[i], atoms[j])
    return True, None


def is_unital(s: StateSet) -> tuple[bool, str | None]:
    """Whether every atom receives value 1 in some state."""
    for i, name in enumerate(s.logic.atoms):
        if not any(st[i] == 1 for st in s.states):
            return False, name
    return True, None


def boolean_embedding(s: StateSet) -> dict[str, frozenset[int]]:
    """Map each atom to the 1-based indices of the states valuing it 1.

    Within every block the images partition the full state-index set; for a
    partition model this reconstructs the ground-state cell of each atom up
    to the canonical reindexing of states.
    """
    if not s.states:
        raise ValueError("empty state set has no Boolean embedding")
    return {
        name: frozenset(k + 1 for k, st in enumerate(s.states) if st[i] == 1)
        for i, name in enumerate(s.logic.atoms)
    }


def truth_table(s: StateSet) -> str:
    """Plain-text truth table: one row per state, one column per atom."""
    atoms = s.logic.atoms
    widths = [max(len(a), 1) for a in atoms]
    idx_w = max(len(str(len(s.states))), 1)
    header = "#".ljust(idx_w + 2) + "  ".join(a.ljust(w) for a, w in zip(atoms, widths))
    lines = [header]
    for k, st in enumerate(s.states, start=1):
        row = str(k).ljust(idx_w + 2) + "  ".join(
            str(v).ljust(w) for v, w in zip(st, widths)
        )
        lines.append(row.rstrip())
    return "\n".join(lines)


def stateset_to_json(s: StateSet, indent: int | None = 2) -> str:
    import json

    doc = {"atoms": list(s.logic.atoms), "states": [list(st) for st in s.states]}
    return json.dumps(doc, indent=indent)
