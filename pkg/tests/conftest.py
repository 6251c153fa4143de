from __future__ import annotations

import numpy as np
import pytest

from pwldyn import BcnfParams, bcnf, real_eigen

# Two-piece normal form with the left piece sharing the eigenvalue 0.2
# with the right piece (right spectrum {0.2, -1.5}, left {2, 0.2}).
SHARED_2D = BcnfParams(dim=2, tl=2.2, dl=0.4, tr=-1.3, dr=-0.3)

# Left piece singular (zero determinant), left fixed point admissible.
FLAT_LEFT_2D = BcnfParams(dim=2, tl=1.3, dl=0.0, tr=-1.4, dr=1.5)

# Three-dimensional analogue with a singular left piece.
FLAT_LEFT_3D = BcnfParams(dim=3, tl=1.6, dl=0.0, sl=0.8, tr=-1.5, dr=1.0, sr=0.0)


def shared_3d_params() -> BcnfParams:
    """Tune the left determinant so the left piece picks up the real
    eigenvalue of the right piece (tl=0, sl=-1 makes that determinant
    lam**3 - lam)."""
    a_r = bcnf(BcnfParams(dim=3, tl=0.0, dl=0.0, sl=-1.0, tr=0.0, dr=-0.6, sr=3.0)).A_R
    reals = real_eigen(a_r).real_values()
    assert len(reals) == 1
    lam = reals[0]
    return BcnfParams(dim=3, tl=0.0, dl=lam**3 - lam, sl=-1.0, tr=0.0, dr=-0.6, sr=3.0)


@pytest.fixture
def shared_map():
    return bcnf(SHARED_2D)


@pytest.fixture
def flat_left_map():
    return bcnf(FLAT_LEFT_2D)


@pytest.fixture
def flat_left_map_3d():
    return bcnf(FLAT_LEFT_3D)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
