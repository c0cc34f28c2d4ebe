import pytest

# criterion number -> (status, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")


@pytest.fixture(scope="session")
def gens_cache():
    from althecke.klrgen import GeneratorSet

    cache = {}

    def get(n, e):
        if (n, e) not in cache:
            cache[n, e] = GeneratorSet(n, e)
        return cache[n, e]
    return get
