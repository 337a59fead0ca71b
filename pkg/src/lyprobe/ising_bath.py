"""Partition-function zeros of the periodic ferromagnetic Ising ring.

The partition function of a ring of ``n_spins`` Ising spins with ferromagnetic
nearest-neighbour coupling, written in the fugacity ``z = exp(-2*beta*h)``, is a
palindromic polynomial with strictly positive coefficients.  All of its roots
therefore lie on the unit circle, and their phases control how fast a probe
coupled to the ring loses coherence: each phase maps to a time at which the
probe's dephasing factor passes through zero.

This module computes the polynomial coefficients (closed form and brute-force
enumeration), extracts the unit-circle zero phases, and evaluates the dephasing
factor along the imaginary-field axis in both its coefficient-sum and
zero-product forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

TWO_PI = 2.0 * np.pi

# Relative tolerance used to decide whether a coefficient vector belongs to the
# ferromagnetic-ring family (verify-then-use, see lee_yang_zeros).
_RING_MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class IsingRing:
    """Periodic chain of Ising spins with uniform ferromagnetic coupling.

    Attributes:
        n_spins: number of spins on the ring, at least 3.
        coupling: nearest-neighbour coupling strength, strictly positive
            (ferromagnetic).  Antiferromagnetic rings have zeros off the unit
            circle and are rejected.
        inverse_temperature: beta >= 0.  beta = 0 is allowed and degenerates
            the zero set to a single phase at pi.
        longitudinal_field: physical field h.  The zero phases and zero times
            do not depend on it (it only rescales the fugacity prefactor); it
            is stored so that a ring fully specifies its partition function.
    """

    n_spins: int
    coupling: float = 1.0
    inverse_temperature: float = 1.0
    longitudinal_field: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.n_spins, (int, np.integer)):
            raise ValueError(f"n_spins must be an integer, got {self.n_spins!r}")
        if self.n_spins < 3:
            raise ValueError(f"n_spins must be at least 3, got {self.n_spins}")
        for name in ("coupling", "inverse_temperature", "longitudinal_field"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.coupling <= 0.0:
            raise ValueError(
                f"coupling must be positive (ferromagnetic), got {self.coupling}"
            )
        if self.inverse_temperature < 0.0:
            raise ValueError(
                f"inverse_temperature must be >= 0, got {self.inverse_temperature}"
            )


@dataclass(frozen=True)
class PartitionPolynomial:
    """Fugacity polynomial of a ring, normalized so both end coefficients are 1.

    ``coefficients[n]`` multiplies z**n where z = exp(-2*beta*h) is the
    fugacity; the overall factor exp(scale_log) restores the physical
    normalization.  ``beta`` is the inverse temperature the coefficients were
    generated at; the dephasing factor needs it to convert a field argument
    into a rotation angle.

    Invariants enforced at construction: palindromic coefficient vector,
    strictly positive entries, end coefficients equal to 1 within 1e-12,
    degree >= 3, everything finite.
    """

    coefficients: np.ndarray
    scale_log: float
    beta: float

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.ndim != 1 or coeffs.size < 4:
            raise ValueError(
                f"coefficients must be a 1-D vector of degree >= 3, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if not np.all(coeffs > 0.0):
            raise ValueError("coefficients must be strictly positive")
        if abs(coeffs[0] - 1.0) > 1e-12 or abs(coeffs[-1] - 1.0) > 1e-12:
            raise ValueError("end coefficients must equal 1 (normalized polynomial)")
        if not np.allclose(coeffs, coeffs[::-1], rtol=0.0, atol=1e-12 * coeffs.max()):
            raise ValueError("coefficients must be palindromic")
        if not np.isfinite(self.scale_log):
            raise ValueError(f"scale_log must be finite, got {self.scale_log!r}")
        if not np.isfinite(self.beta) or self.beta < 0.0:
            raise ValueError(f"beta must be finite and >= 0, got {self.beta!r}")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1


@dataclass(frozen=True)
class LeeYangZeroSet:
    """Unit-circle zero phases of a partition polynomial, sorted ascending.

    ``phases`` are the arguments phi_n of the roots exp(i*phi_n) in (0, 2*pi),
    closed under conjugation (phi <-> 2*pi - phi).  ``residual_bound`` is the
    largest normalized polynomial residual |P(exp(i*phi_n))| / P(1) over the
    set, a backward-error certificate for the phases.  ``beta`` is inherited
    from the polynomial so the product-form dephasing factor can be evaluated.
    """

    phases: np.ndarray
    residual_bound: float
    beta: float

    def __post_init__(self) -> None:
        phases = np.asarray(self.phases, dtype=float)
        if phases.ndim != 1 or phases.size == 0:
            raise ValueError("phases must be a non-empty 1-D vector")
        if not np.all(np.isfinite(phases)):
            raise ValueError("phases must be finite")
        if np.any(phases <= 0.0) or np.any(phases >= TWO_PI):
            raise ValueError("phases must lie strictly inside (0, 2*pi)")
        if np.any(np.diff(phases) < 0.0):
            raise ValueError("phases must be sorted ascending")
        # conjugate closure: the multiset must map onto itself under phi -> 2pi - phi
        mirrored = np.sort(TWO_PI - phases)
        if not np.allclose(phases, mirrored, rtol=0.0, atol=1e-9):
            raise ValueError("phases must be closed under conjugation")
        if not (np.isfinite(self.residual_bound) and self.residual_bound >= 0.0):
            raise ValueError(f"residual_bound must be >= 0, got {self.residual_bound!r}")
        if not np.isfinite(self.beta) or self.beta < 0.0:
            raise ValueError(f"beta must be finite and >= 0, got {self.beta!r}")
        phases.flags.writeable = False
        object.__setattr__(self, "phases", phases)


@dataclass(frozen=True)
class DephasingFactor:
    """Value of the probe dephasing factor at one field argument.

    ``value`` is A evaluated at imaginary field i*x; it is real for the
    symmetric ring polynomial but stored complex so that consumers can check
    the imaginary part is numerical noise.  |value| <= 1 always.
    """

    value: complex
    argument: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.argument):
            raise ValueError(f"argument must be finite, got {self.argument!r}")
        if not np.isfinite(self.value.real) or not np.isfinite(self.value.imag):
            raise ValueError(f"value must be finite, got {self.value!r}")
        if abs(self.value) > 1.0 + 1e-9:
            raise ValueError(f"|value| must not exceed 1, got {abs(self.value)}")


def _ring_closed_form(n_spins: int, wall_weight: float) -> np.ndarray:
    """Normalized coefficients of the ring polynomial for q = wall_weight.

    The coefficient of z**n counts configurations with n down spins, weighted
    by q per pair of domain walls: n down spins arranged in m circular blocks
    contribute (N/m) C(n-1, m-1) C(N-n-1, m-1) q**m.  Evaluated with a
    multiplicative term recurrence; all terms are positive, so the sum is
    stable.
    """
    nb = n_spins
    q = wall_weight
    coeffs = np.zeros(nb + 1)
    coeffs[0] = coeffs[nb] = 1.0
    for n in range(1, nb // 2 + 1):
        m_max = min(n, nb - n)
        term = nb * q
        total = term
        for m in range(1, m_max):
            term *= (n - m) * (nb - n - m) * q / (m * (m + 1))
            total += term
        coeffs[n] = total
        coeffs[nb - n] = total
    return coeffs


def partition_coefficients(ring: IsingRing) -> PartitionPolynomial:
    """Closed-form normalized coefficients of the ring's fugacity polynomial.

    Returns the polynomial with end coefficients 1 and
    scale_log = beta * coupling * n_spins absorbed into the prefactor.
    beta = 0 yields exactly the binomial coefficients C(N, n) (all spin
    configurations weighted equally).

    Raises:
        ValueError: if beta * coupling is so large that interior coefficients
            underflow to zero in double precision (beta * coupling > ~186).
    """
    k = ring.inverse_temperature * ring.coupling
    q = np.exp(-4.0 * k)
    coeffs = _ring_closed_form(ring.n_spins, q)
    if np.any(coeffs <= 0.0):
        raise ValueError(
            "inverse_temperature * coupling too large: interior coefficients "
            "underflow to zero in double precision"
        )
    return PartitionPolynomial(
        coefficients=coeffs,
        scale_log=k * ring.n_spins,
        beta=ring.inverse_temperature,
    )


def partition_coefficients_bruteforce(ring: IsingRing) -> PartitionPolynomial:
    """Coefficients by direct enumeration of all 2**n_spins configurations.

    Independent of the closed form: walks every spin configuration, counts
    down spins and domain walls with bit operations, and accumulates the
    Boltzmann weights.  Intended as a cross-check; limited to n_spins <= 24.
    """
    nb = ring.n_spins
    if nb > 24:
        raise ValueError(f"brute force limited to n_spins <= 24, got {nb}")
    k = ring.inverse_temperature * ring.coupling
    counts = np.zeros(nb + 1)
    # chunk the configuration range to bound memory at large n_spins
    chunk = 1 << min(nb, 20)
    for start in range(0, 1 << nb, chunk):
        x = np.arange(start, start + chunk, dtype=np.uint64)
        rotated = (x >> np.uint64(1)) | ((x & np.uint64(1)) << np.uint64(nb - 1))
        walls = np.bitwise_count(x ^ rotated).astype(np.int64)
        down = np.bitwise_count(x).astype(np.int64)
        counts += np.bincount(down, weights=np.exp(-2.0 * k * walls), minlength=nb + 1)
    return PartitionPolynomial(
        coefficients=counts,
        scale_log=k * nb,
        beta=ring.inverse_temperature,
    )


def _detect_ring_weight(poly: PartitionPolynomial) -> float | None:
    """Return the wall weight q if the coefficients match the ring family.

    The first interior coefficient of the closed form is N*q, so a candidate
    q is read off and the full closed form recomputed for comparison.  Only a
    verified match (relative error <= 1e-9 on every coefficient) is used; on
    mismatch the caller falls back to coefficient-space evaluation.
    """
    nb = poly.degree
    q = float(poly.coefficients[1]) / nb
    if not (0.0 < q <= 1.0 + 1e-12):
        return None
    reference = _ring_closed_form(nb, min(q, 1.0))
    if np.allclose(poly.coefficients, reference, rtol=_RING_MATCH_RTOL, atol=0.0):
        return min(q, 1.0)
    return None


def _transfer_angle(phi: float, k: float) -> float:
    """Eigenvalue angle gamma(phi) of the ring transfer matrix at field i*phi/(2*beta).

    On the arc where sin^2(phi/2) > exp(-4k) the two transfer eigenvalues are
    complex conjugates r * exp(+-i*gamma) and the symmetrized polynomial is
    2 r^N cos(N*gamma); gamma increases monotonically from 0 at the arc edge
    to pi/2 at phi = pi.  Off the arc both eigenvalues are real and the
    polynomial is strictly positive.
    """
    half = 0.5 * phi
    disc = np.exp(-2.0 * k) - np.exp(2.0 * k) * np.sin(half) ** 2
    if disc >= 0.0:
        return 0.0
    return float(np.arctan2(np.sqrt(-disc), np.exp(k) * np.cos(half)))


def _zeros_from_transfer(nb: int, q: float) -> np.ndarray:
    """Upper-half zero phases for a verified ring polynomial via its transfer form.

    Brackets each zero of cos(N*gamma(phi)) between the arc edge (gamma = 0)
    and pi (gamma = pi/2) using the monotone angle function, then refines with
    brentq.  Conditioning is uniform in N and beta because the bracket is
    exact for every zero.
    """
    k = -0.25 * np.log(q)
    arc_edge = 2.0 * np.arcsin(min(1.0, np.sqrt(q)))
    phases = []
    for idx in range(1, nb // 2 + 1):
        gamma_target = (2 * idx - 1) * np.pi / (2 * nb)
        if gamma_target >= 0.5 * np.pi:
            break
        root = brentq(
            lambda phi: _transfer_angle(phi, k) - gamma_target,
            arc_edge,
            np.pi,
            xtol=1e-15,
            rtol=8.9e-16,
        )
        phases.append(root)
    if nb % 2 == 1:
        phases.append(np.pi)
    return np.asarray(sorted(phases))


def _symmetrized_values(coeffs: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Real symmetric combination sum_n f_n cos((n - N/2) * phi), normalized.

    Equals exp(-i*N*phi/2) P(exp(i*phi)) / P(1); real by palindromy, so zeros
    on the circle are sign changes of this function where they have odd
    multiplicity.
    """
    nb = coeffs.size - 1
    offsets = np.arange(nb + 1) - 0.5 * nb
    return np.cos(np.outer(phis, offsets)) @ coeffs / coeffs.sum()


def _zeros_from_coefficients(poly: PartitionPolynomial) -> np.ndarray:
    """Upper-half zero phases by sign-change bracketing of the coefficient sum.

    Scans (0, pi] on a uniform grid of 8 * degree points, refines each
    sign-change bracket with brentq, and doubles the grid (up to 512 * degree)
    until the expected count ceil(degree / 2) is reached.  Fails if the count
    is still short, which signals either a non-ferromagnetic input or zeros
    clustered below double-precision resolution.
    """
    nb = poly.degree
    coeffs = poly.coefficients
    expected = (nb + 1) // 2
    density = 8
    while True:
        grid = np.linspace(0.0, np.pi, density * nb + 1)[1:]
        values = _symmetrized_values(coeffs, grid)
        roots: list[float] = []
        if nb % 2 == 1:
            # phi = pi is a guaranteed zero for odd rings; exclude its bracket
            grid = grid[:-1]
            values = values[:-1]
            roots.append(np.pi)
        signs = np.sign(values)
        lo = np.concatenate(([0.0], grid[:-1]))
        lo_sign = np.concatenate(([1.0], signs[:-1]))  # polynomial positive at phi -> 0+
        flips = np.nonzero(lo_sign * signs < 0.0)[0]
        for i in flips:
            roots.append(
                brentq(
                    lambda phi: float(_symmetrized_values(coeffs, np.array([phi]))[0]),
                    lo[i],
                    grid[i],
                    xtol=1e-15,
                    rtol=8.9e-16,
                )
            )
        exact = np.nonzero(signs == 0.0)[0]
        roots.extend(grid[exact])
        if len(roots) == expected:
            return np.asarray(sorted(roots))
        if density >= 512:
            raise RuntimeError(
                f"found {len(roots)} zero phases in (0, pi], expected {expected}: "
                "input is not a ferromagnetic ring polynomial or its zeros are "
                "clustered below double-precision resolution"
            )
        density *= 2


def lee_yang_zeros(poly: PartitionPolynomial) -> LeeYangZeroSet:
    """All unit-circle zero phases of a normalized palindromic polynomial.

    For coefficient vectors that match the ferromagnetic-ring closed form the
    sign function is evaluated through the ring's exact two-eigenvalue
    factorization, which stays conditioned at any degree; other palindromic
    inputs use direct coefficient-sum bracketing.  The returned phases are
    sorted, closed under conjugation, and carry a normalized residual bound.

    Raises:
        RuntimeError: if fewer than ceil(degree / 2) phases are found in
            (0, pi], which signals non-ferromagnetic input.
    """
    nb = poly.degree
    q = _detect_ring_weight(poly)
    if q is not None and q >= 1.0 - 4e-16:
        # infinite-temperature limit: binomial coefficients, all zeros at -1
        # with full multiplicity
        upper = np.full(nb, np.pi)
    elif q is not None:
        upper = _zeros_from_transfer(nb, q)
    else:
        upper = _zeros_from_coefficients(poly)

    interior = upper[upper < np.pi - 1e-12]
    at_pi = upper[upper >= np.pi - 1e-12]
    phases = np.sort(np.concatenate([interior, at_pi, TWO_PI - interior]))
    if phases.size != nb:
        raise RuntimeError(
            f"reconstructed {phases.size} phases for degree {nb}; zero set incomplete"
        )

    roots = np.exp(1j * phases)
    residuals = np.abs(np.polyval(poly.coefficients[::-1], roots)) / poly.coefficients.sum()
    return LeeYangZeroSet(
        phases=phases,
        residual_bound=float(residuals.max()),
        beta=poly.beta,
    )


def companion_roots(poly: PartitionPolynomial) -> np.ndarray:
    """All complex roots via the companion-matrix eigenproblem (diagnostic route).

    Independent of the bracketing solver; useful for cross-checks.  Accuracy
    degrades for clustered roots at high degree: beyond degree ~40 at small
    beta the rounded coefficient vector itself no longer pins the roots to the
    unit circle.
    """
    return np.roots(poly.coefficients[::-1])


def _factor_values(coeffs: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Dephasing factor for an array of rotation angles w = beta * x.

    A(w) = exp(i*N*w) * sum_n f_n exp(-2*i*n*w) / sum_n f_n.  Chunked so large
    time grids do not materialize a grid-by-degree matrix all at once.
    """
    nb = coeffs.size - 1
    offsets = nb - 2.0 * np.arange(nb + 1)
    norm = coeffs.sum()
    out = np.empty(angles.shape, dtype=complex)
    chunk = max(1, 8_388_608 // (nb + 1))
    flat = angles.ravel()
    flat_out = out.ravel()
    for start in range(0, flat.size, chunk):
        block = flat[start : start + chunk]
        flat_out[start : start + chunk] = (
            np.exp(1j * np.outer(block, offsets)) @ coeffs / norm
        )
    return out


def dephasing_factor(poly: PartitionPolynomial, x: float) -> DephasingFactor:
    """Probe dephasing factor at imaginary field i*x, coefficient-sum form.

    Real and even in x for the symmetric ring polynomial; |A| <= 1 with
    equality at x = 0.  Periodic in beta*x with period pi.
    """
    if not np.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    w = poly.beta * x
    value = complex(_factor_values(poly.coefficients, np.array([w]))[0])
    return DephasingFactor(value=value, argument=float(x))


def dephasing_factor_product(zeros: LeeYangZeroSet, x: float) -> DephasingFactor:
    """Probe dephasing factor from the zero phases, product form.

    A = exp(i*N*w) * prod_n (exp(-2*i*w) - exp(i*phi_n)) / (1 - exp(i*phi_n))
    with w = beta * x.  Agrees with the coefficient-sum form wherever both are
    well conditioned.

    Raises:
        ValueError: if any phase sits at the positive real axis (the
            denominator 1 - exp(i*phi_n) vanishes, signalling an invalid set).
    """
    if not np.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    roots = np.exp(1j * zeros.phases)
    denom = 1.0 - roots
    if np.any(np.abs(denom) < 1e-12):
        raise ValueError("zero phase at the positive real axis: invalid zero set")
    w = zeros.beta * x
    nb = zeros.phases.size
    zeta = np.exp(-2j * w)
    value = np.exp(1j * nb * w) * np.prod((zeta - roots) / denom)
    return DephasingFactor(value=complex(value), argument=float(x))


def zero_times(zeros: LeeYangZeroSet, eta: float) -> np.ndarray:
    """Times at which a probe with its own bath loses coherence completely.

    Each zero phase phi_n maps to t_n = phi_n / (4 * eta) for probe-bath
    coupling eta; at these times the dephasing factor crosses zero and the
    probe coherence vanishes.  Sorted ascending.
    """
    if not (np.isfinite(eta) and eta > 0.0):
        raise ValueError(f"eta must be positive and finite, got {eta!r}")
    return zeros.phases / (4.0 * eta)
