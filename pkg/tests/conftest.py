import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from subswap.corpus_io import SentencePair, read_conllu  # noqa: E402
from subswap.eligibility import LabelConfig, check_pair  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
PRO_DROP = LabelConfig(allow_missing_subject=True)


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def load_example_pairs():
    en = read_conllu(fixture_path("example_pairs.en.conllu"))
    hu = read_conllu(fixture_path("example_pairs.hu.conllu"))
    return [SentencePair(e, h, doc_id="ex", pair_id=e.meta["sent_id"]) for e, h in zip(en, hu)]


@pytest.fixture(scope="session")
def example_pairs():
    return load_example_pairs()


@pytest.fixture(scope="session")
def example_eligible(example_pairs):
    """Pairs keyed by (table, 1|2); the pro-drop pair needs allow_missing_subject."""
    out = {}
    for pair in example_pairs:
        table = pair.src.meta["table"]
        idx = 1 if (table, 1) not in out else 2
        out[(table, idx)] = check_pair(pair, PRO_DROP)
    return out


@pytest.fixture(scope="session")
def misc_sentences():
    return {s.meta["sent_id"]: s for s in read_conllu(fixture_path("misc.en.conllu"))}


_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    ok = report.passed
    prev = _criteria.get(marker, True)
    _criteria[marker] = prev and ok


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _criteria[n] else 'FAIL'}")
