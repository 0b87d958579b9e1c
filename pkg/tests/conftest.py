import pytest
from hypothesis import settings

from rees_quot.polyalg import GF
from rees_quot.reesfam import RootData, make_rab
from rees_quot.ringcore import define_quotient_ring

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

from helpers import CRITERIA


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def ex1_ring():
    return define_quotient_ring(GF(2), ["x", "y"], "degrevlex", ["x*y"])


@pytest.fixture
def ex1(ex1_ring):
    """The two branches I = (y) and I = (x) over F2[x,y]/(xy), a = x, b = y^2, with roots y+x, y."""
    R = ex1_ring
    x, y = R.var("x"), R.var("y")
    out = {}
    for name, g in (("y", y), ("x", x)):
        rr = make_rab(R, R.ideal([g]), x, y * y)
        rr.attach_roots(RootData.make(rr.a, rr.b, y + x))
        out[name] = rr
    return out


@pytest.fixture
def ex2_ring():
    return define_quotient_ring(GF(3), ["x", "y"], "degrevlex", ["x*y"])


@pytest.fixture
def ex2(ex2_ring):
    """F3[x,y]/(xy), I = (x, y), a = 0, b = -y^2 (no roots attached)."""
    R = ex2_ring
    x, y = R.var("x"), R.var("y")
    return make_rab(R, R.ideal([x, y]), 0, -y * y)
