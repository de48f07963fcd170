"""Folds acceptance-test outcomes into one PASS/FAIL line per criterion."""
import re

CRITERIA = {
    1: "factorization identity: closed form equals oracle on the 200-sequence corpus",
    2: "constancy of g_(k-1) and numeric lambda_min across d_k = 2..6 for 20 prefixes",
    3: "multiplicity d_k - 1 of -sqrt 3 for (1,3,n), numeric and structural",
    4: "interlacing chain with gamma_k = -2 and beta > gamma_(k-1) on 50 random sequences",
    5: "simple zeros of every g_i on 50 random sequences",
    6: "divisibility by lambda + 2 across the corpus",
    7: "rooted composition formulas on 100 random rooted trees",
    8: "critical-factor identity across the corpus",
    9: "lambda_min depends on d_(k-1) for 20 pairs",
    10: "corona report gives one consistent convention",
    11: "named constants (-1 - sqrt 5) / 2 and -sqrt 3 to 12 digits",
}

_NODE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_outcomes: dict[int, list[bool]] = {}
_notes: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    m = _NODE.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        _outcomes.setdefault(n, []).append(report.passed)
    for key, value in report.user_properties:
        if report.when == "call" and key == "corona_verdict":
            _notes.setdefault(n, []).append(f"matching convention {value}")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, text in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
            text += f" ({sum(results)}/{len(results)} cases)"
        extra = "; ".join(_notes.get(n, []))
        tr.write_line(f"criterion {n:2d} {status}: {text}" + (f" [{extra}]" if extra else ""))
