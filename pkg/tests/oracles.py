"""Independent oracle routes used to validate the package's closed forms.

Everything here is deliberately implemented through different mathematics or
different numerics than the package itself: transfer-matrix eigenvalue angles
for the zero phases, arbitrary-precision simultaneous root iteration for the
unit-circle certificates, matrix-exponential state-vector evolution for the
twisted pair state, and the textbook non-Hermitian eigenvalue formulation of
the spin-flip spectrum.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def transfer_phases(n_spins: int, beta_lambda: float) -> np.ndarray:
    """Zero phases of the ring polynomial from transfer-matrix eigen-angles.

    Writing the two transfer eigenvalues at angle alpha as r e^{+-i alpha},
    the partition function vanishes when cos(n_spins * alpha) = 0 and
    sin^2(alpha_k) = sin^2(gamma_k) + q cos^2(gamma_k) with
    gamma_k = (2k-1) pi / (2 n_spins), q = exp(-4 beta_lambda); the phase of
    the corresponding fugacity root is 2 pi - 2 alpha_k.
    """
    q = np.exp(-4.0 * beta_lambda)
    k = np.arange(1, n_spins + 1)
    gamma = (2.0 * k - 1.0) * np.pi / (2.0 * n_spins)
    s = np.sqrt(np.sin(gamma) ** 2 + q * np.cos(gamma) ** 2)
    alpha = np.where(gamma <= 0.5 * np.pi, np.arcsin(s), np.pi - np.arcsin(s))
    return np.sort(2.0 * np.pi - 2.0 * alpha)


def highprecision_roots(coefficients: np.ndarray, dps: int = 50):
    """All roots of the (float) coefficient vector at dps decimal digits.

    Returns (moduli, phases) with phases sorted in (0, 2 pi].  Uses mpmath's
    simultaneous iteration, which keeps clustered roots resolvable where the
    double-precision companion eigensolver loses them.
    """
    import mpmath as mp

    with mp.workdps(dps):
        coeffs = [mp.mpf(float(c)) for c in np.asarray(coefficients)[::-1]]
        roots = mp.polyroots(coeffs, maxsteps=200, extraprec=80)
        moduli = np.array([float(abs(r)) for r in roots])
        phases = np.array([float(mp.arg(r)) for r in roots])
    phases = np.mod(phases, 2.0 * np.pi)
    phases[phases == 0.0] = 2.0 * np.pi
    order = np.argsort(phases)
    return moduli[order], phases[order]


@lru_cache(maxsize=None)
def _twist_generator(n: int):
    """Eigendecomposition of Jx^2 on the full 2^n space plus the start vector.

    Jx is assembled site by site as an explicit dense matrix; no symmetric
    subspace, no product shortcut.  Cached so many angles reuse one solve.
    """
    dim = 1 << n
    sx = 0.5 * np.array([[0.0, 1.0], [1.0, 0.0]])
    jx = np.zeros((dim, dim))
    for site in range(n):
        op = np.array([[1.0]])
        for other in range(n):
            op = np.kron(op, sx if other == site else np.eye(2))
        jx += op
    evals, vecs = np.linalg.eigh(jx @ jx)
    psi0 = np.zeros(dim)
    psi0[-1] = 1.0
    return evals, vecs, vecs.T @ psi0


def exact_pair_state(n: int, theta: float) -> np.ndarray:
    """Two-qubit reduced state of exp(-i theta Jx^2 / 2) |1...1> by brute force.

    Propagates the full 2^n state vector through the diagonalized generator
    and partial-traces all but the first two qubits.  No Hadamard shortcut,
    no symmetry assumptions.
    """
    evals, vecs, c0 = _twist_generator(n)
    psi = vecs @ (np.exp(-0.5j * theta * evals) * c0)
    block = psi.reshape(4, (1 << n) // 4)
    return block @ block.conj().T


def wootters_reference(rho: np.ndarray) -> float:
    """Concurrence via the textbook non-Hermitian eigenvalue route.

    lambda_i are square roots of the eigenvalues of rho * rho_tilde; distinct
    numerics from any singular-value formulation.
    """
    rho = np.asarray(rho, dtype=complex)
    sy2 = np.array(
        [
            [0, 0, 0, -1],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
        ],
        dtype=complex,
    )
    product = rho @ (sy2 @ rho.conj() @ sy2)
    evals = np.linalg.eigvals(product)
    lams = np.sort(np.sqrt(np.clip(evals.real, 0.0, None)))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))
