import numpy as np
import pytest

from sshent import model
from sshent.groundstate import OccupationPolicy, localized_zero_modes
from sshent.linalg import eigh_symmetric
from sshent.specialfn import EllipticParams

# the standard two-defect ring used throughout: N = 400, defects at L/4, 3L/4
DEFECT_CELLS = (50, 150)
ELL = 20
DEFECT_WINDOW = (41, ELL)  # contains the first defect (cell 50)
TOP_WINDOW = (175, ELL)
TRIV_WINDOW = (90, ELL)


def two_defect_chain(delta, kinds=("one_site", "one_site"), n_sites=400):
    return model.ChainSpec(
        n_sites=n_sites,
        hopping=1.0,
        dimerization=delta,
        boundary="periodic",
        defects=tuple(
            model.DefectSpec(cell, kind) for cell, kind in zip(DEFECT_CELLS, kinds)
        ),
    )


@pytest.fixture(scope="session")
def chain03():
    return two_defect_chain(0.3)


@pytest.fixture(scope="session")
def eig03(chain03):
    return eigh_symmetric(model.build_hamiltonian(chain03))


@pytest.fixture(scope="session")
def chain_dimerized():
    return two_defect_chain(1.0)


@pytest.fixture(scope="session")
def eig_dimerized(chain_dimerized):
    return eigh_symmetric(model.build_hamiltonian(chain_dimerized))


@pytest.fixture(scope="session")
def chain_mixed():
    return two_defect_chain(0.3, kinds=("one_site", "three_site"))


@pytest.fixture(scope="session")
def eig_mixed(chain_mixed):
    return eigh_symmetric(model.build_hamiltonian(chain_mixed))


@pytest.fixture(scope="session")
def params03():
    return EllipticParams.from_dimerization(0.3)


@pytest.fixture(scope="session")
def zero_pair03(eig03, chain03):
    return localized_zero_modes(eig03, chain03)


@pytest.fixture(scope="session")
def below_half():
    return OccupationPolicy.below_half()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
