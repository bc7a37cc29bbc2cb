import os

from hypothesis import HealthCheck, settings

# three admissible aspect ratios per family; thin families only exist on narrow windows
FAMILY_RATIOS = {
    "3": (1.5, 2.0, 3.0),
    "4": (1.5, 2.0, 3.0),
    "4i": (1.5, 2.0, 3.0),
    "5": (1.2, 1.5, 2.0),
    "5i": (1.1, 1.2, 1.4),
    "6": (1.5, 2.0, 3.0),
    "6i": (2.2, 2.5, 3.0),
    "6ii": (1.5, 2.0, 3.0),
    "7": (1.2, 1.5, 2.0),
    "7i": (1.2, 1.5, 2.0),
    "7ii": (1.1, 1.2, 1.3),
    "8": (1.2, 2.0, 3.0),
    "8i": (2.8, 3.0, 3.5),
    "8ii": (1.2, 1.5, 2.0),
    "8iii": (1.1, 1.3, 1.5),
}

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(RESULTS):
        ok, detail = RESULTS[i]
        doc = CRITERIA[i].__doc__.splitlines()[0]
        terminalreporter.write_line(f"criterion {i}: {'PASS' if ok else 'FAIL'}  {doc}  [{detail}]")
