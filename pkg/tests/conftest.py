import pytest
from hypothesis import settings, strategies as st

from ncwell.symalg import FLAT_NC, HEISENBERG, PARAMETERS, GaussianRational, OpExpr, ParamScalar

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_fraction = st.fractions(min_value=-3, max_value=3, max_denominator=4)
coefficient = st.builds(GaussianRational, small_fraction, small_fraction)
exponents = st.tuples(*[st.integers(-1, 2)] * len(PARAMETERS))
param_scalar = st.dictionaries(exponents, coefficient, max_size=2).map(ParamScalar)


def op_exprs(ctx, max_terms=3, max_len=3):
    word = st.lists(st.integers(0, len(ctx.generators) - 1), max_size=max_len).map(tuple)
    return st.dictionaries(word, param_scalar, max_size=max_terms).map(lambda d: OpExpr(ctx, d))


contexts = st.sampled_from([HEISENBERG, FLAT_NC])


# Acceptance bookkeeping: every test marked ``acceptance(name)`` contributes to
# one criterion, which passes only when all of its tests pass.
_ACCEPTANCE: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): test belongs to the named acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _ACCEPTANCE.setdefault(marker, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        outcome.get_result().acceptance = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, results in _ACCEPTANCE.items():
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({sum(results)}/{len(results)} checks)")
