from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mmm_calc.algebra import GradedPolynomial, RingPresentation

settings.register_profile(
    "exact",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
nonzero_rationals = rationals.filter(bool)


@st.composite
def homogeneous(draw, ring: RingPresentation, degrees):
    """Random nonzero homogeneous element of one of the given degrees (reduced)."""
    d = draw(st.sampled_from([d for d in degrees if ring.basis(d)]))
    acc = ring.zero()
    for b in ring.basis(d):
        acc = acc + b.scale(draw(nonzero_rationals))
    return acc


@st.composite
def polynomials(draw, ring: RingPresentation, max_degree: int):
    """Random (inhomogeneous) polynomial over the free generators, not reduced."""
    from mmm_calc.algebra import enumerate_monomials

    terms = {}
    for d in range(max_degree + 1):
        for mono in enumerate_monomials(ring.table, d):
            if draw(st.booleans()):
                terms[mono] = draw(rationals)
    return GradedPolynomial(ring.table, terms)


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        n = int(report.nodeid.split("test_criterion_")[1][:2])
        _criteria[n] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {_criteria[n]}")
