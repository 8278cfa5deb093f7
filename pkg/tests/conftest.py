import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")


import pytest  # noqa: E402

# criterion number -> (title, passed, detail); filled by the acceptance tests
ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or (rep.when == "setup" and rep.passed) or rep.when == "teardown":
        return
    num, title = m.args
    detail = getattr(item, "detail", "")
    if rep.failed and call.excinfo is not None:
        msg = str(call.excinfo.value).strip().splitlines()
        detail = (detail + "; " if detail else "") + (msg[0] if msg else call.excinfo.typename)
    ACCEPTANCE[num] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line("criterion %2d %s  %s  [%s]" % (num, "PASS" if ok else "FAIL", title, detail))
