import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bvloop import loops
from bvloop.spaces import SpaceSpec, UnsupportedSpaceError

SPACES = [SpaceSpec.hp(1), SpaceSpec.hp(2), SpaceSpec.hp(3), SpaceSpec.op2()]
PASCAL = oracles.pascal(30)


@given(st.integers(0, 15), st.integers(0, 15))
def test_divided_power_product_is_binomial(i, j):
    assert loops.divided_power_product(i, j) == (PASCAL[i + j][i], i + j)


def test_coproduct_on_small_elements():
    E = loops.DividedPowerBasisElement
    assert loops.coproduct(E(0, 1)) == {(E(0, 1), E(0)): 1, (E(0), E(0, 1)): 1}
    assert set(loops.coproduct(E(2))) == {(E(0), E(2)), (E(1), E(1)), (E(2), E(0))}


@pytest.mark.parametrize("space", SPACES, ids=str)
def test_hopf_axioms(space):
    assert loops.coassociativity_defects(space, 6) == []
    assert loops.algebra_map_defects(space, 6) == []


@pytest.mark.parametrize("space", SPACES, ids=str)
def test_dualize(space):
    table = loops.dualize(space, 6)
    x1, t = loops.DualBasisElement("x", 1), loops.DualBasisElement("z", 0)
    assert table.product(t, t) == {}
    assert table.product(x1, t) == {loops.DualBasisElement("z", 1): 1}
    assert table.product(t, x1) == {loops.DualBasisElement("z", 1): 1}
    x2 = loops.DualBasisElement("x", 2)
    assert table.product(x1, x1) == {x2: 1}


def test_dualize_errors():
    with pytest.raises(ValueError):
        loops.dualize(SpaceSpec.hp(2), 1)
    with pytest.raises(UnsupportedSpaceError):
        loops.dualize(SpaceSpec.parse("s8"), 6)
    with pytest.raises(UnsupportedSpaceError):
        loops.based_loop_ring(SpaceSpec.parse("s8"))


def test_based_loop_ring():
    ring = loops.based_loop_ring(SpaceSpec.op2())
    assert [(g.name, g.loop_degree) for g in ring.generators] == [("x", 22), ("t", 7)]
    assert (ring.gen("t") * ring.gen("t")).is_zero()
