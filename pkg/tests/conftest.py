import sys
from functools import lru_cache

import pytest

from gcx import build_gcs, corpus_path, parse_model_file
from gcx.report import RunConfig, analyze

CORPUS = [
    "torus2",
    "torus2_symplectic",
    "torus4",
    "torus4_complex",
    "torus6",
    "kt_symplectic",
    "kt_complex",
    "kt_spinor",
    "iwasawa",
]


@lru_cache(maxsize=None)
def load(name):
    return parse_model_file(str(corpus_path(name)))


@lru_cache(maxsize=None)
def gcs_of(name):
    model, spec = load(name)
    return build_gcs(model, spec)


@lru_cache(maxsize=None)
def analysis(name, oracle=False):
    model, spec = load(name)
    return analyze(model, spec, name, RunConfig(oracle=oracle))


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    RESULTS = module.RESULTS
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
