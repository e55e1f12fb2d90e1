"""State enumeration against a brute-force oracle, plus separation,
unitality, and the Boolean embedding."""

import itertools

import pytest
from hypothesis import given, settings

from qlpoly.logics import Logic, builtin, builtin_logic, from_partitions
from qlpoly.states import (
    block_states,
    boolean_embedding,
    builtin_states,
    enumerate_states,
    is_separating,
    is_unital,
    model_states,
    stateset_to_json,
    truth_table,
)
from strategies import partition_logics

KS14_TABLE = (
    (1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1),
    (0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0),
    (0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0),
    (0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0),
    (0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0),
)


def brute_force_states(logic: Logic) -> set[tuple[int, ...]]:
    """Independent oracle: filter all 2^n assignments."""
    out = set()
    for bits in itertools.product((0, 1), repeat=len(logic.atoms)):
        if all(sum(bits[i] for i in block) == 1 for block in logic.blocks):
            out.add(bits)
    return out


class TestEnumeration:
    def test_mo3_model_states(self):
        states = enumerate_states(builtin("mo3"))
        assert len(states) == 3
        logic = states.logic
        idx = [logic.atoms.index(a) for a in ("{1}", "{2}", "{3}")]
        restriction = {tuple(st[i] for i in idx) for st in states.states}
        assert restriction == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    def test_mo3_block_structure_is_larger(self):
        # the bare block structure of three disconnected contexts admits
        # 2^3 valuations; the partition model keeps only the induced three
        assert len(block_states(builtin_logic("mo3"))) == 8

    def test_ks14_matches_table(self):
        states = enumerate_states(builtin("ks14"))
        assert len(states) == 14
        assert set(states.states) == set(KS14_TABLE)

    def test_ks14_block_enumeration_agrees_with_model(self):
        model = enumerate_states(builtin("ks14"))
        block = block_states(builtin_logic("ks14"))
        assert set(model.states) == set(block.states)

    def test_single_block(self):
        logic = Logic(atoms=("x", "y"), blocks=((0, 1),))
        states = enumerate_states(logic)
        assert states.states == ((1, 0), (0, 1))

    def test_zero_state_logic_returned_not_errored(self):
        # exactly one of each pair among three atoms is unsatisfiable
        triangle = Logic(atoms=("a", "b", "c"), blocks=((0, 1), (0, 2), (1, 2)))
        states = enumerate_states(triangle)
        assert states.states == ()

    def test_invalid_logic_rejected(self):
        bad = Logic(atoms=("a", "b"), blocks=((0, 1), (0, 1)))
        with pytest.raises(ValueError):
            block_states(bad)

    def test_oracle_ks14(self):
        logic = builtin_logic("ks14")
        assert set(block_states(logic).states) == brute_force_states(logic)

    def test_canonical_order_is_descending(self):
        logic = Logic(atoms=("x", "y"), blocks=((0, 1),))
        assert enumerate_states(logic).states == ((1, 0), (0, 1))


@settings(max_examples=60, deadline=None)
@given(partition_logics())
def test_enumeration_matches_brute_force(p):
    logic = from_partitions(p)
    assert set(block_states(logic).states) == brute_force_states(logic)


@settings(max_examples=60, deadline=None)
@given(partition_logics())
def test_model_states_are_induced_valuations(p):
    states = model_states(p)
    induced = set()
    from qlpoly.logics import merged_cells

    cells = merged_cells(p)
    for g in p.ground_states:
        induced.add(tuple(1 if g in cell else 0 for cell in cells))
    assert set(states.states) == induced
    # each induced valuation satisfies every block exactly once
    for st in states.states:
        for block in states.logic.blocks:
            assert sum(st[i] for i in block) == 1


class TestSeparation:
    def test_mo3_separating(self):
        ok, witness = is_separating(builtin_states("mo3"))
        assert ok and witness is None

    def test_ks14_separating(self):
        states = builtin_states("ks14")
        ok, witness = is_separating(states)
        assert ok and witness is None
        # brute-force confirmation over all 78 pairs
        n = len(states.logic.atoms)
        for i in range(n):
            for j in range(i + 1, n):
                assert any(st[i] != st[j] for st in states.states)

    def test_empty_state_set_not_separating(self):
        triangle = Logic(atoms=("a", "b", "c"), blocks=((0, 1), (0, 2), (1, 2)))
        ok, witness = is_separating(block_states(triangle))
        assert not ok
        assert witness == ("a", "b")


class TestUnitality:
    def test_ks14_unital(self):
        ok, witness = is_unital(builtin_states("ks14"))
        assert ok and witness is None

    def test_mo3_unital(self):
        ok, _ = is_unital(builtin_states("mo3"))
        assert ok

    def test_empty_states_not_unital(self):
        triangle = Logic(atoms=("a", "b", "c"), blocks=((0, 1), (0, 2), (1, 2)))
        ok, witness = is_unital(block_states(triangle))
        assert not ok
        assert witness == "a"


class TestBooleanEmbedding:
    def test_one_block_logic(self):
        logic = Logic(atoms=("x", "y"), blocks=((0, 1),))
        emb = boolean_embedding(block_states(logic))
        assert emb["x"] == frozenset({1})
        assert emb["y"] == frozenset({2})

    def test_block_images_partition_the_index_set(self):
        states = builtin_states("ks14")
        emb = boolean_embedding(states)
        full = frozenset(range(1, len(states) + 1))
        for block in states.logic.blocks:
            images = [emb[states.logic.atoms[i]] for i in block]
            assert frozenset().union(*images) == full
            assert sum(len(img) for img in images) == len(full)

    def test_ks14_reproduces_ground_state_labels(self):
        states = builtin_states("ks14")
        emb = boolean_embedding(states)
        # map canonical state index -> table row number (= ground state)
        reindex = {
            states.states.index(row) + 1: k for k, row in enumerate(KS14_TABLE, start=1)
        }
        relabeled = {a: frozenset(reindex[i] for i in v) for a, v in emb.items()}
        assert relabeled["a1"] == frozenset({1, 2, 3})
        assert relabeled["a5"] == frozenset({1, 3, 4, 5, 9})
        assert relabeled["a13"] == frozenset({1, 4, 5, 10, 11, 12})

    def test_mo3_reproduces_cells(self):
        states = builtin_states("mo3")
        emb = boolean_embedding(states)
        sizes = sorted(len(emb[a]) for a in states.logic.atoms)
        assert sizes == [1, 1, 1, 2, 2, 2]

    def test_empty_states_error(self):
        triangle = Logic(atoms=("a", "b", "c"), blocks=((0, 1), (0, 2), (1, 2)))
        with pytest.raises(ValueError):
            boolean_embedding(block_states(triangle))


class TestOutputs:
    def test_truth_table_layout(self):
        text = truth_table(builtin_states("ks14"))
        lines = text.splitlines()
        assert len(lines) == 15
        assert lines[0].startswith("#")
        assert "a13" in lines[0]

    def test_json_shape(self):
        import json

        doc = json.loads(stateset_to_json(builtin_states("mo3")))
        assert set(doc) == {"atoms", "states"}
        assert len(doc["states"]) == 3
        assert all(v in (0, 1) for st in doc["states"] for v in st)
