import pytest

from bvloop.spaces import SpaceSpec, UnsupportedSpaceError


@pytest.mark.parametrize("n", range(1, 7))
def test_quaternionic_degrees(n):
    s = SpaceSpec.hp(n)
    assert (s.dim, s.a_degree, s.b_degree, s.x_degree, s.t_degree) == (4 * n, -4, -1, 4 * n + 2, 3)
    assert s.euler_multiple == n + 1
    assert s.sphere_bundle_dim == 8 * n - 1
    for l in range(1, 5):
        assert s.thom_shift(l) == 4 * n * (l - 1) + 2 * l + 1


def test_octonionic_plane():
    s = SpaceSpec.op2()
    assert (s.dim, s.a_degree, s.x_degree, s.t_degree, s.top) == (16, -8, 22, 7, 2)
    assert s.euler_multiple == 3
    assert [s.thom_shift(l) for l in (1, 2, 3)] == [7, 29, 51]


def test_parse():
    assert SpaceSpec.parse("hp:3") == SpaceSpec.hp(3)
    assert SpaceSpec.parse(" OP2 ") == SpaceSpec.op2()
    assert SpaceSpec.parse("s4") == SpaceSpec.hp(1)
    s8 = SpaceSpec.parse("s8")
    assert (s8.dim, s8.top, s8.x_degree, s8.euler_multiple) == (8, 1, 14, 2)
    for bad in ("hp:0", "cp:2", "s6", "s5", "", "hp:x"):
        with pytest.raises(UnsupportedSpaceError):
            SpaceSpec.parse(bad)


def test_labels_round_trip():
    for s in (SpaceSpec.hp(2), SpaceSpec.op2(), SpaceSpec.parse("s8")):
        assert SpaceSpec.parse(s.label) == s
    assert str(SpaceSpec.hp(2)) == "HP^2"
    assert str(SpaceSpec.op2()) == "OP^2"
