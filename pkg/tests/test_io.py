import pytest
from hypothesis import given

from proum.io import (
    GenParams,
    ParseError,
    format_pattern,
    generate,
    parse_dataset,
    parse_profits,
    serialize_dataset,
    serialize_profits,
    write_generated,
    write_results,
)
from proum.miner import MiningResult, MiningStats
from proum.model import Pattern, QSequence, QSequenceDatabase, database_utility

from .conftest import EXAMPLE_DATA, EXAMPLE_PROFITS, a, b, c, d, e, f, small_databases

S1_LINE = "1:2 3:1 -1 3:2 -1 2:10 6:3 -1 1:2 5:1 -2"


def test_parse_s1(S):
    (s1,) = parse_dataset(S1_LINE + "\n")
    assert s1 == QSequence.of(1, [(a, 2), (c, 1)], [(c, 2)], [(b, 10), (f, 3)], [(a, 2), (e, 1)])
    assert s1.elements == S[1].elements


def test_parse_normalizes_item_order_and_accepts_trailing_element_marker():
    (s,) = parse_dataset("3:1 1:2 -1 -2")
    assert s.elements[0].items == (1, 3)


def test_parse_empty():
    assert parse_dataset("") == []
    assert parse_profits("") == {}


@pytest.mark.parametrize("text, where", [
    ("1:0 -2", "line 1, column 1"),
    ("1:1 -1 2:x -2", "column 8"),
    ("1:1 1:2 -2", "column 5"),
    ("1:1 -1", "line 1"),
    ("1:1 -2 2:1", "column 8"),
    ("1 -2", "column 1"),
    ("1:1 -2\n-1 -2", "line 2"),
])
def test_parse_errors(text, where):
    with pytest.raises(ParseError, match=where):
        parse_dataset(text)


def test_parse_profits(db):
    table = parse_profits("1\t3\n2\t2\n3\t10\n4\t4\n5\t6\n6\t1\n")
    assert dict(table) == {a: 3, b: 2, c: 10, d: 4, e: 6, f: 1}
    assert table == db.profits


@pytest.mark.parametrize("text", ["1\tx\n", "1\t3\n1\t4\n", "1 3\n", "1\t-2\n"])
def test_parse_profits_errors(text):
    with pytest.raises(ParseError):
        parse_profits(text)


def test_example_round_trip(db):
    text = EXAMPLE_DATA.read_text()
    assert serialize_dataset(parse_dataset(text)) == text
    assert serialize_profits(parse_profits(EXAMPLE_PROFITS.read_text())) == EXAMPLE_PROFITS.read_text()


@given(small_databases())
def test_round_trip(db):
    sequences = parse_dataset(serialize_dataset(db.sequences))
    renumbered = [QSequence(k, s.elements) for k, s in enumerate(db.sequences, start=1)]
    assert sequences == renumbered
    assert parse_profits(serialize_profits(db.profits)) == db.profits


def test_write_results():
    stats = MiningStats(nodes_visited=3, husp_count=2, elapsed=1.5)
    result = MiningResult({Pattern.of([b], [a]): 5, Pattern.of([a], [b]): 69, Pattern.of([a, b]): 1}, stats)
    lines = write_results(result).splitlines()
    assert lines[:3] == ["1 2 -1\t1", "1 -1 2 -1\t69", "2 -1 1 -1\t5"]
    assert "# nodes_visited=3" in lines
    assert not any("elapsed" in line for line in lines)
    assert write_results(result, stats=False).count("\n") == 3


def test_write_results_empty():
    text = write_results(MiningResult({}, MiningStats()))
    assert text and all(line.startswith("# ") for line in text.splitlines())


def test_format_pattern():
    assert format_pattern(Pattern.of([a], [b])) == "1 -1 2 -1"


def test_generator_is_deterministic(tmp_path):
    params = GenParams(seed=42)
    one = write_generated(generate(params), tmp_path / "one")
    two = write_generated(generate(params), tmp_path / "two")
    assert [p.read_bytes() for p in one] == [p.read_bytes() for p in two]
    assert serialize_dataset(generate(GenParams(seed=43)).sequences) != one[0].read_text()


def test_generator_single_item_universe():
    db = generate(GenParams(sequence_count=20, item_universe_size=1, seed=1))
    assert all(v.items == (1,) for s in db.sequences for v in s.elements)


def test_generator_regression_value():
    db = generate(GenParams(sequence_count=100, item_universe_size=20, mean_elements=4, mean_items=2,
                            max_quantity=5, profit_min=1, profit_max=10, seed=7))
    assert database_utility(db) == GENERATED_TOTAL


@pytest.mark.parametrize("params", [
    dict(item_universe_size=0),
    dict(max_quantity=0),
    dict(profit_min=5, profit_max=1),
    dict(mean_elements=0.5),
])
def test_generator_rejects_degenerate_params(params):
    with pytest.raises(ValueError):
        GenParams(**params)


def test_generated_output_parses(tmp_path):
    db = generate(GenParams(sequence_count=50, item_universe_size=8, seed=3, item_skew=1.0, max_items=3))
    data, profits = write_generated(db, tmp_path)
    again = QSequenceDatabase(tuple(parse_dataset(data.read_text())), parse_profits(profits.read_text()))
    assert again == db
    assert max(len(v) for s in db.sequences for v in s.elements) <= 3


# database_utility of the generator output above, frozen as a regression value
GENERATED_TOTAL = 9471
