import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bvloop.linalg import AbelianGroup
from bvloop.ring import GeneratorInfo, GradedPresentation, RingError, build_presentation, monomials_up_to
from bvloop.spaces import SpaceSpec

SPACES = [SpaceSpec.hp(n) for n in range(1, 5)] + [SpaceSpec.op2(), SpaceSpec.parse("s8")]


def brute(space, k):
    ring = build_presentation(space)
    gens = [(g.name, g.loop_degree) for g in ring.generators]
    return oracles.brute_force_group(gens, ring.monomial_relations, ring.torsion_relations, k)


@pytest.mark.parametrize("space", SPACES, ids=str)
def test_additive_group_matches_brute_force(space):
    ring = build_presentation(space)
    for k in range(-space.dim - 2, 2 * space.x_degree + 3):
        rank, torsion = brute(space, k)
        assert ring.additive_group(k) == AbelianGroup(rank, torsion), k


def test_known_groups():
    hp2 = build_presentation(SpaceSpec.hp(2))
    assert hp2.additive_group(2) == AbelianGroup(0, (3,))
    assert hp2.additive_group(-8) == AbelianGroup(1)
    assert hp2.additive_group(1) == AbelianGroup()
    op2 = build_presentation(SpaceSpec.op2())
    for m in range(1, 5):
        assert op2.additive_group(22 * m - 16) == AbelianGroup(0, (3,))
    assert op2.additive_group(0) == AbelianGroup(1)


def test_presentation_shape():
    ring = build_presentation(SpaceSpec.hp(3))
    assert [(g.name, g.loop_degree, g.parity) for g in ring.generators] == [
        ("a", -4, "even"), ("b", -1, "odd"), ("x", 14, "even")]
    assert ring.ambient_shift == 12
    assert ring.torsion_relations == ((4, (3, 0, 1)),)
    op2 = build_presentation(SpaceSpec.op2())
    assert [g.loop_degree for g in op2.generators] == [-8, -1, 22]
    assert op2.torsion_relations == ((3, (2, 0, 1)),)


def test_parse_and_render():
    ring = build_presentation(SpaceSpec.hp(2))
    assert str(ring.parse("a*b*x")) == "a*b*x"
    assert str(ring.parse("x^2 a")) == "a*x^2"
    assert str(ring.parse("1")) == "1"
    assert ring.parse("a^3").is_zero()
    assert ring.parse("a^2*b").is_zero()
    assert ring.parse("b*b").is_zero()
    with pytest.raises(RingError):
        ring.parse("y")
    with pytest.raises(RingError):
        ring.parse("a^")


def test_koszul_sign_in_normal_form():
    ring = GradedPresentation(
        "E", (GeneratorInfo("u", 1), GeneratorInfo("v", 3)), monomial_relations=((2, 0), (0, 2)))
    assert ring.parse("v*u") == -ring.parse("u*v")
    assert ring.gen("v") * ring.gen("u") == -(ring.gen("u") * ring.gen("v"))


def test_odd_generators_need_square_relation():
    with pytest.raises(RingError):
        GradedPresentation("bad", (GeneratorInfo("u", 1),))


def test_torsion_reduction():
    ring = build_presentation(SpaceSpec.hp(2))
    e = ring.mono((2, 0, 1), 7)
    assert e == ring.mono((2, 0, 1), 1)
    assert ring.mono((2, 0, 1), 3).is_zero()
    assert ring.torsion_modulus((2, 0, 4)) == 3
    assert ring.torsion_modulus((1, 0, 4)) == 0
    assert ring.torsion_modulus((2, 0, 0)) == 0


monomial_triples = st.tuples(*(st.tuples(st.integers(0, 3), st.integers(0, 1), st.integers(0, 4)) for _ in range(3)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SPACES), monomial_triples)
def test_product_is_associative_and_graded_commutative(space, triple):
    ring = build_presentation(space)
    x, y, z = (ring.mono(m) for m in triple)
    assert (x * y) * z == x * (y * z)
    if not x.is_zero() and not y.is_zero():
        sign = -1 if (x.degree * y.degree) % 2 else 1
        assert x * y == sign * (y * x)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPACES), st.integers(-50, 50), st.integers(-50, 50))
def test_element_arithmetic(space, c1, c2):
    ring = build_presentation(space)
    x = ring.mono((1, 0, 1), c1) + ring.mono((0, 1, 0), c2)
    assert x - x == ring.zero()
    assert x + (-x) == ring.zero()
    assert 2 * x == x + x
    assert x * ring.one() == x


def test_monomials_up_to_counts():
    ring = build_presentation(SpaceSpec.hp(2))
    # a^p x^q (p<=2), a^p b x^q (p<=1)
    assert len(monomials_up_to(ring, 6)) == 7 * 5
