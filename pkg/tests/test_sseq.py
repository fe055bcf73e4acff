import pytest

from bvloop import sseq
from bvloop.linalg import AbelianGroup
from bvloop.ring import build_presentation
from bvloop.spaces import SpaceSpec

HP2 = SpaceSpec.hp(2)
OP2 = SpaceSpec.op2()
Z, Z3, ZERO = AbelianGroup(1), AbelianGroup(0, (3,)), AbelianGroup()


def test_e2_layout():
    page = sseq.build_e2(HP2, 30)
    assert page.group(0, 0) == Z
    assert page.group(-8, 3) == Z       # a^2 (x) t
    assert page.group(-4, 10) == Z      # a (x) x
    assert page.group(-2, 0) == ZERO
    assert all(p in (0, -4, -8) for p, _ in page.entries)


def test_differential_shape_and_square():
    page = sseq.install_differentials(sseq.build_e2(HP2, 40), HP2)
    assert page.r == 8
    assert page.target((0, 3)) == (-8, 10)
    M = page.differential((0, 3))
    assert M.shape == (1, 1) and int(M[0, 0]) == 3
    assert page.differential((-4, 3)).shape == (0, 1)  # target column p = -12 is off the page
    assert sseq.check_d_squared(page) == []


def test_differentials_go_on_bare_e2_only():
    page = sseq.install_differentials(sseq.build_e2(HP2, 20), HP2)
    with pytest.raises(sseq.WrongPageError):
        sseq.install_differentials(page, HP2)


def test_einfty_hp2():
    page = sseq.run_to_infinity(HP2, 40)
    assert page.final
    assert page.group(-8, 10) == Z3
    assert page.group(0, 3) == ZERO
    assert page.total_group(2) == Z3
    assert page.total_group(-8) == Z


def test_window_guard():
    with pytest.raises(sseq.WindowError):
        sseq.run_to_infinity(HP2, 20, margin=0)


@pytest.mark.parametrize("space", [SpaceSpec.hp(1), HP2, SpaceSpec.hp(3), OP2, SpaceSpec.parse("s8")], ids=str)
def test_einfty_matches_ring(space):
    assert sseq.einfty_vs_ring(space, range(-space.dim - 1, 3 * space.x_degree)) == []


@pytest.mark.parametrize("space", [HP2, OP2], ids=str)
def test_euler_characteristic_is_page_invariant(space):
    e2 = sseq.build_e2(space, 60)
    einf = sseq.turn_page(sseq.install_differentials(e2, space))
    assert sseq.euler_characteristic(e2) == sseq.euler_characteristic(einf)


def test_gysin_small_case():
    # S(eta) over S^4 is the Stiefel manifold V_2(R^5): Z, 0, 0, Z_2, 0, 0, 0, Z
    H = sseq.gysin_sphere_bundle(1)
    assert [str(H[i]) for i in range(8)] == ["Z", "0", "0", "Z_2", "0", "0", "0", "Z"]


def test_gysin_octonionic():
    H = sseq.gysin_homology(OP2)
    nonzero = {i: str(g) for i, g in H.items() if not g.is_trivial}
    assert nonzero == {0: "Z", 8: "Z", 15: "Z_3", 23: "Z", 31: "Z"}


def test_op2_closed_table_matches_splitting():
    split = sseq.splitting_additive(OP2, range(0, 140))
    assert all(split[k] == sseq.op2_table(k) for k in range(0, 140))
    assert [k for k in range(0, 100) if split[k] == Z3] == [22, 44, 66, 88]


def test_wrong_scalar_breaks_agreement():
    assert not sseq.compare_einfty_vs_splitting(HP2, range(0, 41), scalar=1).passed
    assert not sseq.compare_einfty_vs_splitting(HP2, range(0, 41), scalar=0).passed


def test_shift_convention():
    # H_k(LM) picks up H_(k - shift)(S(eta)); first sphere-bundle class sits at k = shift(1)
    split = sseq.splitting_additive(HP2, range(0, 12))
    ring = build_presentation(HP2)
    assert HP2.thom_shift(1) == 3
    assert split[3] == Z and ring.additive_group(3 - HP2.dim) == Z
