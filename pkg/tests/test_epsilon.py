import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))
from reference_data import CRITERION2_DISCS, EPSILON_COLUMNS  # noqa: E402

from cmcount.epsilon import (commutator_subgroup, delta_tau, epsilon_table, epsilon_tau,  # noqa: E402
                             format_table, mat, mul, phi, sl2_z4)
from cmcount.errors import UnitGroupError  # noqa: E402
from cmcount.quadorder import QuadElem, disc_info  # noqa: E402


def test_sl2_sizes():
    assert len(sl2_z4()) == 48
    assert len(commutator_subgroup()) == 12


@pytest.mark.parametrize("M,k", [(mat(1, 1, 0, 1), 1), (mat(1, 0, 0, 1), 0), (mat(1, 2, 0, 1), 2),
                                 (mat(3, 0, 0, 3), 2)])
def test_phi_examples(M, k):
    assert phi(M) == k


def test_phi_homomorphism_all_pairs():
    G = sl2_z4()
    for M, N in itertools.product(G, G):
        assert phi(mul(M, N)) == (phi(M) + phi(N)) % 4


def test_phi_kills_commutators():
    assert all(phi(M) == 0 for M in commutator_subgroup())


def test_epsilon_examples():
    assert epsilon_tau(-7, QuadElem.from_uv(disc_info(-7), 2, 1)) == 0
    assert epsilon_tau(-8, QuadElem.from_uv(disc_info(-8), 3, 2)) == 0
    assert epsilon_tau(-20, QuadElem.from_uv(disc_info(-20), 4, 1)) == 1
    assert delta_tau(-7, QuadElem.from_uv(disc_info(-7), -1, 0)) == 2
    assert epsilon_tau(-7, QuadElem.from_uv(disc_info(-7), 1, 0)) == 0


@pytest.mark.parametrize("D", sorted(EPSILON_COLUMNS))
def test_tables_against_transcription(D):
    table = epsilon_table(D)
    for k, labels in EPSILON_COLUMNS[D].items():
        for cls, val in table.items():
            lbl = (cls ** 3).label() if D % 2 else cls.label()
            if lbl in labels:
                assert val == k, (D, lbl)


@pytest.mark.parametrize("D", CRITERION2_DISCS)
def test_unit_invariance(D):
    t = epsilon_table(D)
    assert all((t[-c] - t[c]) % 4 == 2 for c in t)
    assert t[disc_info(D).one().reduce(4)] == 0


@pytest.mark.parametrize("D", [D for D in CRITERION2_DISCS if disc_info(D).fundamental])
def test_multiplicative_for_fundamental(D):
    t = epsilon_table(D)
    assert all(t[a * b] == (t[a] + t[b]) % 4 for a in t for b in t)


@given(st.sampled_from([-7, -8, -11, -20, -24, -16, -28]), st.integers(-40, 40), st.integers(-40, 40))
def test_conjugation_for_r_3_mod_4(D, a, b):
    disc = disc_info(D)
    lam = QuadElem.from_basis(disc, a, b)
    if lam.norm() % 2 == 0:
        return
    assert delta_tau(disc, lam, 3) == (-delta_tau(disc, lam, 1)) % 4


@given(st.sampled_from([-7, -8, -20, -16]), st.integers(-40, 40), st.integers(-40, 40))
def test_epsilon_depends_on_class_mod_4(D, a, b):
    disc = disc_info(D)
    lam = QuadElem.from_basis(disc, a, b)
    if lam.norm() % 2 == 0:
        return
    shifted = lam + QuadElem.from_basis(disc, 4 * a + 8, -4 * b)
    assert epsilon_tau(disc, lam) == epsilon_tau(disc, shifted)


def test_small_unit_groups_rejected():
    for D in (-3, -4):
        with pytest.raises(UnitGroupError):
            epsilon_table(D)


def test_format_rows():
    rows = format_table(-8)
    assert len(rows) == 8 and any(r.startswith("1 ") for r in rows)
