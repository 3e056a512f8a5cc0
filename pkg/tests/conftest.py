import re

_CRITERIA: dict[int, list] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m or report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
    _CRITERIA.setdefault(int(m.group(1)), []).append((report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        results = _CRITERIA[num]
        status = "PASS" if all(o == "passed" for o, _ in results) else "FAIL"
        detail = " | ".join(d for _, d in results if d)
        tr.write_line(f"criterion {num}: {status}  {detail}")
