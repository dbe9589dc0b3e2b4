from __future__ import annotations

import time
from pathlib import Path

import pytest

from ftag import bundled_grammar

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def bundled():
    return bundled_grammar("bundled.ftag")


@pytest.fixture(scope="session")
def grammars():
    names = ("figure1", "extraposition", "ppx", "indirect", "bundled")
    out = {n: bundled_grammar(n + ".ftag") for n in names}
    out["extraposition.mc"] = bundled_grammar("extraposition.mctag")
    out["ppx.mc"] = bundled_grammar("ppx.mctag")
    return out


@pytest.fixture
def report(capsys, request):
    """Print one PASS/FAIL line for an acceptance item, then assert it."""
    start = time.perf_counter()

    def emit(item: str, ok: bool, detail: str = ""):
        took = time.perf_counter() - start
        line = f"{'PASS' if ok else 'FAIL'}  {item}  [{took:.1f}s]"
        if detail:
            line += f"  {detail}"
        with capsys.disabled():
            print("\n" + line, flush=True)
        assert ok, line

    return emit
