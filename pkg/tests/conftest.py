import json
from pathlib import Path

import pytest

from logsynth.automaton import load_model_file
from logsynth.patterns import load_patterns_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def toy():
    return load_model_file(FIXTURES / "toy4.json")


@pytest.fixture(scope="session")
def toy_model(toy):
    return toy[0]


def load_fixture(name):
    model, catalog = load_model_file(FIXTURES / f"{name}.json")
    patterns = load_patterns_file(FIXTURES / f"{name}_patterns.json", set(model.alphabet))
    return model, catalog, patterns


@pytest.fixture(scope="session")
def fixture_models():
    return {name: load_fixture(name) for name in ("m1", "m2", "m3")}


def toy_document():
    return json.loads((FIXTURES / "toy4.json").read_text())
