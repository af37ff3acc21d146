from pathlib import Path

import pytest
from hypothesis import strategies as st

from proum.io import load_database
from proum.model import ProfitTable, QSequence, QSequenceDatabase

DATA = Path(__file__).parent / "data"
EXAMPLE_DATA = DATA / "example.txt"
EXAMPLE_PROFITS = DATA / "example_profits.tsv"

# running-example item letters
a, b, c, d, e, f = 1, 2, 3, 4, 5, 6


@pytest.fixture(scope="session")
def db():
    return load_database(EXAMPLE_DATA, EXAMPLE_PROFITS)


@pytest.fixture(scope="session")
def profits(db):
    return db.profits


@pytest.fixture(scope="session")
def S(db):
    """Sequences of the running example keyed 1..5."""
    return {s.sid: s for s in db.sequences}


@st.composite
def small_databases(draw, max_sequences=5, max_items=5, max_elements=4, max_element_size=3):
    n_items = draw(st.integers(1, max_items))
    profits = {i: draw(st.integers(0, 10)) for i in range(1, n_items + 1)}
    element = st.dictionaries(
        st.integers(1, n_items), st.integers(1, 5), min_size=1, max_size=min(max_element_size, n_items)
    )
    raw = draw(st.lists(st.lists(element, min_size=1, max_size=max_elements), min_size=1, max_size=max_sequences))
    sequences = tuple(QSequence.of(sid, *[e.items() for e in elems]) for sid, elems in enumerate(raw, start=1))
    return QSequenceDatabase(sequences, ProfitTable(profits))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
