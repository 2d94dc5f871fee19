"""Matrix-free conjugate gradients for the symmetric problems donflow solves."""
from __future__ import annotations
import logging
from typing import Callable

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from ..exceptions import LinearSolveError

logger = logging.getLogger(__name__)

Matvec = Callable[[np.ndarray], np.ndarray]


def solve_spd(
    name: str,
    matvec: Matvec,
    rhs: np.ndarray,
    preconditioner: Matvec | None = None,
    rtol: float = 1e-11,
    atol: float = 0.0,
    maxiter: int = 1000,
) -> np.ndarray:
    """Solve H x = rhs for a symmetric positive (semi)definite H given by ``matvec``.

    Singular H is fine as long as ``rhs`` lies in its range.

    Args:
        name (str): Label for logs and errors.
        matvec (Matvec): x ↦ H x on flat float vectors.
        rhs (np.ndarray): Right-hand side.
        preconditioner (Matvec | None): Approximation of x ↦ H⁻¹ x.
        rtol (float): Relative residual target.
        atol (float): Absolute residual target; the solve stops at the looser
            of the two, so a right-hand side that is only round-off is accepted
            as zero.
        maxiter (int): Iteration cap.

    Returns:
        np.ndarray: The solution.

    Raises:
        LinearSolveError: If CG stops before reaching ``rtol`` or ``atol``.
    """
    size = rhs.size
    operator = LinearOperator((size, size), matvec=matvec, dtype=float)
    inverse = (
        LinearOperator((size, size), matvec=preconditioner, dtype=float)
        if preconditioner is not None
        else None
    )
    iterations = 0

    def count(_: np.ndarray) -> None:
        nonlocal iterations
        iterations += 1

    solution, info = cg(
        operator, rhs, rtol=rtol, atol=atol, maxiter=maxiter, M=inverse, callback=count
    )
    if info != 0:
        raise LinearSolveError(name, info)
    logger.debug("%s: CG converged in %d iterations", name, iterations)
    return solution
