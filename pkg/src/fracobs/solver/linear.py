import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from ..errors import NumericalFailureError
from .instance import as_contact_set
from .residuals import check_dimensions


def solve_reduced_system(op, inst, contact):
    """u = psi on the contact set; L_FF u_F = f_F - L_FC psi_C on the free set."""
    check_dimensions(op, inst)
    N = inst.size
    contact = as_contact_set(contact, N)
    free = np.ones(N, dtype=bool)
    free[contact] = False

    u = np.array(inst.psi, dtype=float)
    if not free.any():
        return u

    L = op.matrix
    rhs = inst.f[free] - L[np.ix_(free, ~free)] @ inst.psi[~free]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(L[np.ix_(free, free)])
    if np.any(np.diag(lu) == 0.0):
        raise NumericalFailureError(
            f"reduced system on {int(free.sum())} free nodes is singular"
        )
    u[free] = lu_solve((lu, piv), rhs)
    if not np.all(np.isfinite(u)):
        raise NumericalFailureError("reduced system produced non-finite values")
    return u
