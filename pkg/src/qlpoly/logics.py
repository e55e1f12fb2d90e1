"""Event structures: block logics, partition logics, and their conversions.

A Logic is the combinatorial skeleton of an orthologic: a list of atoms plus
a list of contexts (blocks), each block being an exhaustive set of mutually
exclusive outcomes.  A PartitionLogic is the same structure presented as a
family of partitions of a finite ground set (automaton states or urn ball
types); each partition is one context and each cell one atom.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class LogicParseError(ValueError):
    """Malformed logic document; ``position`` is a character offset when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class InvalidPartitionError(ValueError):
    pass


class UnknownBuiltinError(KeyError):
    pass


@dataclass(frozen=True)
class Logic:
    """Atoms plus blocks (contexts), blocks as tuples of atom indices."""

    atoms: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]

    def atom_index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise KeyError(f"unknown atom {name!r}") from None

    def block_names(self, b: int) -> tuple[str, ...]:
        return tuple(self.atoms[i] for i in self.blocks[b])


@dataclass(frozen=True)
class PartitionLogic:
    """Ground states plus partitions; cells keep their input order."""

    ground_states: tuple[str, ...]
    partitions: tuple[tuple[tuple[str, ...], ...], ...]


@dataclass(frozen=True)
class LogicDiagnostics:
    """Invariant violations as (rule, detail) pairs; empty means valid."""

    violations: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _load_document(text: str, required_keys: set[str]) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise LogicParseError(f"syntax error at position {e.pos}: {e.msg}", position=e.pos) from e
    if not isinstance(doc, dict):
        raise LogicParseError("top-level value must be an object")
    unknown = set(doc) - required_keys
    if unknown:
        raise LogicParseError(f"unknown keys: {sorted(unknown)}")
    missing = required_keys - set(doc)
    if missing:
        raise LogicParseError(f"missing keys: {sorted(missing)}")
    return doc


def parse_logic(text: str) -> Logic:
    """Parse the JSON logic format.  Atom order equals file order.

    Only well-formedness is checked here; structural invariants are the job
    of validate_logic.
    """
    doc = _load_document(text, {"atoms", "blocks"})
    atoms = doc["atoms"]
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise LogicParseError("'atoms' must be a list of strings")
    seen: set[str] = set()
    for a in atoms:
        if a in seen:
            raise LogicParseError(f"duplicate atom {a!r}")
        seen.add(a)
    index = {a: i for i, a in enumerate(atoms)}
    blocks = doc["blocks"]
    if not isinstance(blocks, list):
        raise LogicParseError("'blocks' must be a list")
    out_blocks = []
    for bi, block in enumerate(blocks):
        if not isinstance(block, list) or not all(isinstance(a, str) for a in block):
            raise LogicParseError(f"block {bi} must be a list of atom names")
        for a in block:
            if a not in index:
                raise LogicParseError(f"unknown atom {a!r} in block {bi}")
        out_blocks.append(tuple(index[a] for a in block))
    return Logic(atoms=tuple(atoms), blocks=tuple(out_blocks))


def parse_partitions(text: str) -> PartitionLogic:
    """Parse the JSON partition-logic format (ground states + partitions)."""
    doc = _load_document(text, {"states", "partitions"})
    states = doc["states"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise LogicParseError("'states' must be a list of strings")
    if len(set(states)) != len(states):
        raise LogicParseError("duplicate ground state")
    known = set(states)
    parts = doc["partitions"]
    if not isinstance(parts, list):
        raise LogicParseError("'partitions' must be a list")
    out = []
    for pi, part in enumerate(parts):
        if not isinstance(part, list):
            raise LogicParseError(f"partition {pi} must be a list of cells")
        cells = []
        for cell in part:
            if not isinstance(cell, list) or not all(isinstance(s, str) for s in cell):
                raise LogicParseError(f"partition {pi} cells must be lists of state names")
            for s in cell:
                if s not in known:
                    raise LogicParseError(f"unknown state {s!r} in partition {pi}")
            cells.append(tuple(cell))
        out.append(tuple(cells))
    return PartitionLogic(ground_states=tuple(states), partitions=tuple(out))


def logic_to_json(logic: Logic, indent: int | None = 2) -> str:
    doc = {
        "atoms": list(logic.atoms),
        "blocks": [[logic.atoms[i] for i in block] for block in logic.blocks],
    }
    return json.dumps(doc, indent=indent)


def partitions_to_json(p: PartitionLogic, indent: int | None = 2) -> str:
    doc = {
        "states": list(p.ground_states),
        "partitions": [[list(cell) for cell in part] for part in p.partitions],
    }
    return json.dumps(doc, indent=indent)


def validate_logic(logic: Logic) -> LogicDiagnostics:
    """Diagnose violations of the Logic invariants; empty result means valid."""
    violations: list[tuple[str, str]] = []
    n = len(logic.atoms)
    if len(set(logic.atoms)) != n:
        dupes = sorted({a for a in logic.atoms if logic.atoms.count(a) > 1})
        violations.append(("duplicate-atom-identifier", ", ".join(dupes)))
    used: set[int] = set()
    for bi, block in enumerate(logic.blocks):
        used.update(block)
        if any(i < 0 or i >= n for i in block):
            violations.append(("atom-index-out-of-range", f"block {bi}"))
            continue
        if len(set(block)) != len(block):
            violations.append(("duplicate-atom-in-block", f"block {bi}"))
        if len(set(block)) < 2:
            violations.append(("block-too-small", f"block {bi} has {len(set(block))} atom(s)"))
    for i in range(n):
        if i not in used:
            violations.append(("atom-not-in-any-block", logic.atoms[i]))
    for bi in range(len(logic.blocks)):
        for bj in range(bi + 1, len(logic.blocks)):
            shared = set(logic.blocks[bi]) & set(logic.blocks[bj])
            if len(shared) > 1:
                names = ", ".join(logic.atoms[i] for i in sorted(shared))
                violations.append(
                    ("blocks-share-multiple-atoms", f"blocks {bi} and {bj} share {{{names}}}")
                )
    return LogicDiagnostics(violations=tuple(violations))


def validate_partitions(p: PartitionLogic) -> LogicDiagnostics:
    """Check that every partition's cells are nonempty, disjoint and covering."""
    violations: list[tuple[str, str]] = []
    ground = set(p.ground_states)
    for pi, part in enumerate(p.partitions):
        seen: set[str] = set()
        for cell in part:
            if not cell:
                violations.append(("empty-cell", f"partition {pi}"))
            if seen & set(cell):
                violations.append(("overlapping-cells", f"partition {pi}"))
            seen.update(cell)
        if seen != ground:
            violations.append(("non-covering", f"partition {pi}"))
    return LogicDiagnostics(violations=tuple(violations))


def merged_cells(p: PartitionLogic) -> list[frozenset[str]]:
    """Distinct cells in first-appearance order (partition order, cell order)."""
    cells: list[frozenset[str]] = []
    seen: set[frozenset[str]] = set()
    for part in p.partitions:
        for cell in part:
            key = frozenset(cell)
            if key not in seen:
                seen.add(key)
                cells.append(key)
    return cells


def _cell_name(cell: frozenset[str], ground_order: tuple[str, ...]) -> str:
    members = [s for s in ground_order if s in cell]
    return "{" + ",".join(members) + "}"


def from_partitions(p: PartitionLogic, atom_names: list[str] | None = None) -> Logic:
    """Build the block logic of a partition logic.

    One block per partition, one atom per cell; cells equal as sets of ground
    states are identified across partitions.  Default atom names are the cell
    contents in set notation; ``atom_names`` overrides them in first-appearance
    order.  Structural defects of the result (e.g. blocks sharing two atoms)
    are left to validate_logic.
    """
    diags = validate_partitions(p)
    if not diags.ok:
        raise InvalidPartitionError("; ".join(f"{rule}: {detail}" for rule, detail in diags.violations))
    cells = merged_cells(p)
    index = {cell: i for i, cell in enumerate(cells)}
    if atom_names is None:
        names = [_cell_name(cell, p.ground_states) for cell in cells]
    else:
        if len(atom_names) != len(cells):
            raise ValueError(f"expected {len(cells)} atom names, got {len(atom_names)}")
        names = list(atom_names)
    blocks = tuple(
        tuple(index[frozenset(cell)] for cell in part) for part in p.partitions
    )
    return Logic(atoms=tuple(names), blocks=blocks)


# Ground-state sets of the 13-atom, 7-block logic (hexagon plus diagonal).
_KS14_CELLS: dict[str, tuple[int, ...]] = {
    "a1": (1, 2, 3),
    "a2": (4, 5, 6, 7, 8, 9),
    "a3": (10, 11, 12, 13, 14),
    "a4": (2, 6, 7, 8),
    "a5": (1, 3, 4, 5, 9),
    "a6": (2, 6, 8, 11, 12, 14),
    "a7": (7, 10, 13),
    "a8": (3, 5, 8, 9, 11, 14),
    "a9": (1, 2, 4, 6, 12),
    "a10": (3, 9, 13, 14),
    "a11": (5, 7, 8, 10, 11),
    "a12": (4, 6, 9, 12, 13, 14),
    "a13": (1, 4, 5, 10, 11, 12),
}

_KS14_BLOCKS: tuple[tuple[str, ...], ...] = (
    ("a1", "a2", "a3"),
    ("a3", "a4", "a5"),
    ("a5", "a6", "a7"),
    ("a7", "a8", "a9"),
    ("a9", "a10", "a11"),
    ("a11", "a12", "a1"),
    ("a4", "a13", "a10"),
)

_MO3_PARTITIONS: tuple[tuple[tuple[str, ...], ...], ...] = (
    (("1",), ("2", "3")),
    (("2",), ("1", "3")),
    (("3",), ("1", "2")),
)

BUILTIN_NAMES = ("mo3", "ks14", "ch-classical")


def _mo3_partition_logic() -> PartitionLogic:
    return PartitionLogic(ground_states=("1", "2", "3"), partitions=_MO3_PARTITIONS)


def _ks14_partition_logic() -> PartitionLogic:
    ground = tuple(str(k) for k in range(1, 15))
    partitions = tuple(
        tuple(tuple(str(k) for k in _KS14_CELLS[a]) for a in block) for block in _KS14_BLOCKS
    )
    return PartitionLogic(ground_states=ground, partitions=partitions)


def _ch_classical_logic() -> Logic:
    # Four independent yes/no events; primes are complements.
    atoms = ("A1", "A1'", "A2", "A2'", "B1", "B1'", "B2", "B2'")
    blocks = ((0, 1), (2, 3), (4, 5), (6, 7))
    return Logic(atoms=atoms, blocks=blocks)


def builtin(name: str) -> Logic | PartitionLogic:
    """Return a named builtin structure.

    ``mo3`` and ``ks14`` come as partition logics (their dispersion-free
    states are the ground-state valuations); ``ch-classical`` is the plain
    four-context logic of two binary observables per side.
    """
    if name == "mo3":
        return _mo3_partition_logic()
    if name == "ks14":
        return _ks14_partition_logic()
    if name == "ch-classical":
        return _ch_classical_logic()
    raise UnknownBuiltinError(name)


def builtin_logic(name: str) -> Logic:
    """The block logic of a builtin, with its conventional atom names."""
    if name == "mo3":
        return from_partitions(
            _mo3_partition_logic(), atom_names=["a1", "a1'", "a2", "a2'", "a3", "a3'"]
        )
    if name == "ks14":
        names = [f"a{k}" for k in range(1, 14)]
        logic = from_partitions(_ks14_partition_logic(), atom_names=names)
        return logic
    if name == "ch-classical":
        return _ch_classical_logic()
    raise UnknownBuiltinError(name)
