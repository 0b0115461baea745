import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sshent import model
from sshent.linalg import eigh_symmetric

from conftest import two_defect_chain


def test_fully_dimerized_minimal_ring():
    """N=4, delta=1 ring: only the two strong bonds survive, eigenvalues +-2."""
    spec = model.ChainSpec(n_sites=4, hopping=1.0, dimerization=1.0)
    h = model.build_hamiltonian(spec)
    assert h[1, 2] == pytest.approx(-2.0)
    assert h[3, 0] == pytest.approx(-2.0)
    assert h[0, 1] == 0.0 and h[2, 3] == 0.0
    w = np.linalg.eigvalsh(h)
    np.testing.assert_allclose(w, [-2.0, -2.0, 2.0, 2.0], atol=1e-14)


@pytest.mark.parametrize("delta", [0.1, 0.3, 0.7])
def test_dispersion_matches_diagonalization(delta):
    spec = model.ChainSpec(n_sites=80, dimerization=delta)
    w = np.linalg.eigvalsh(model.build_hamiltonian(spec))
    np.testing.assert_allclose(w, model.dispersion_eigenvalues(spec), atol=1e-12)
    gap = 2.0 * np.min(np.abs(w))
    assert gap == pytest.approx(4.0 * delta, abs=1e-12)


def test_two_defects_host_two_zero_modes():
    spec = two_defect_chain(0.3)
    w = eigh_symmetric(model.build_hamiltonian(spec)).eigenvalues
    assert int(np.sum(np.abs(w) < 1e-6)) == 2


def test_bond_amplitudes_only_two_values():
    spec = two_defect_chain(0.3, kinds=("one_site", "three_site"))
    amps = model.bond_amplitudes(spec)
    assert set(np.round(amps, 12)) == {-0.7, -1.3}


def test_one_site_defect_pattern():
    """Two consecutive weak bonds around the defect site, for both defects."""
    spec = two_defect_chain(0.4)
    amps = model.bond_amplitudes(spec)
    weak = -0.6
    for _, sites in model.defect_sites(spec):
        s = sites[0]  # 1-based defect site; adjacent bonds are s-1 and s
        assert amps[s - 2] == pytest.approx(weak)
        assert amps[s - 1] == pytest.approx(weak)


def test_three_site_defect_pattern():
    spec = two_defect_chain(0.4, kinds=("three_site", "three_site"))
    amps = model.bond_amplitudes(spec)
    strong = -1.4
    for _, sites in model.defect_sites(spec):
        assert len(sites) == 3
        a, b, c = sites
        assert amps[a - 1] == pytest.approx(strong)
        assert amps[b - 1] == pytest.approx(strong)


def test_trimer_adds_band_external_pair():
    spec = two_defect_chain(0.3, kinds=("one_site", "three_site"))
    w = eigh_symmetric(model.build_hamiltonian(spec)).eigenvalues
    assert int(np.sum(w > 2.0 + 1e-9)) == 1
    assert int(np.sum(w < -2.0 - 1e-9)) == 1
    assert int(np.sum(np.abs(w) < 1e-6)) == 2


def test_pbc_rejects_odd_defect_count():
    with pytest.raises(ValueError, match="even number"):
        model.ChainSpec(n_sites=40, dimerization=0.5,
                        defects=(model.DefectSpec(5),))


def test_defect_cell_out_of_range_rejected():
    with pytest.raises(ValueError, match="out of the supported range"):
        model.ChainSpec(n_sites=40, dimerization=0.5,
                        defects=(model.DefectSpec(3), model.DefectSpec(20)))


def test_localization_length_limits():
    assert model.localization_length(0.999) < 0.14
    assert model.localization_length(1e-4) > 1e3
    deltas = [0.1, 0.3, 0.5, 0.9, 0.999]
    xs = [model.localization_length(d) for d in deltas]
    assert all(b < a for a, b in zip(xs, xs[1:]))
    with pytest.raises(ValueError):
        model.localization_length(0.0)


def test_window_case_labels(chain03):
    assert model.window_case(chain03, 175, 20) == "topological"
    assert model.window_case(chain03, 90, 20) == "trivial"
    assert model.window_case(chain03, 41, 20) == "defect"


def test_window_wraps_under_pbc(chain03):
    sites = model.window_sites(chain03, 195, 10)
    assert sites[0] == 2 * 195 - 2
    assert sites[-1] == 2 * 4 - 1  # cell 4 after wrapping past cell 200


def test_json_round_trip(chain_mixed):
    text = chain_mixed.to_json()
    data = json.loads(text)
    assert set(data) == {"n_sites", "t", "delta", "boundary", "defects"}
    assert model.ChainSpec.from_json(text) == chain_mixed


@st.composite
def chain_specs(draw):
    n_cells = draw(st.integers(min_value=6, max_value=16))
    delta = draw(
        st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
    )
    boundary = draw(st.sampled_from(["periodic", "open"]))
    n_defects = draw(st.sampled_from([0, 2]))
    defects = []
    if n_defects:
        cells = draw(
            st.lists(
                st.integers(min_value=2, max_value=n_cells - 2),
                min_size=2, max_size=2, unique=True,
            )
        )
        cells.sort()
        if cells[1] - cells[0] < 2:
            n_defects = 0
        else:
            kinds = draw(
                st.lists(
                    st.sampled_from(["one_site", "three_site"]),
                    min_size=2, max_size=2,
                )
            )
            defects = [
                model.DefectSpec(c, k) for c, k in zip(cells, kinds)
            ]
    return model.ChainSpec(
        n_sites=2 * n_cells,
        dimerization=delta,
        boundary=boundary,
        defects=tuple(defects),
    )


@given(chain_specs())
@settings(max_examples=60, deadline=None)
def test_spectrum_chiral_symmetric(spec):
    """Bipartite hopping: the spectrum is symmetric about zero."""
    h = model.build_hamiltonian(spec)
    # only odd-even couplings present
    for i in range(spec.n_sites):
        for j in range(spec.n_sites):
            if h[i, j] != 0.0:
                assert (i + j) % 2 == 1
    w = np.linalg.eigvalsh(h)
    np.testing.assert_allclose(w, -w[::-1], atol=1e-10)


@given(chain_specs())
@settings(max_examples=30, deadline=None)
def test_hamiltonian_symmetric_with_expected_amplitudes(spec):
    h = model.build_hamiltonian(spec)
    np.testing.assert_allclose(h, h.T, atol=0.0)
    t, d = spec.hopping, spec.dimerization
    allowed = {0.0, round(-t * (1 - d), 12), round(-t * (1 + d), 12)}
    assert set(np.round(h.ravel(), 12)) <= allowed
