"""Eigenvalue conditions and their root solvers.

Two conditions for the power-law family: the classical WKB solvability
condition

    2i exp[2 R cos(pi/p)/eps] cos[2 R sin(pi/p)/eps] = 0,

whose roots are the cosine zeros and reproduce the closed-form large-n
eigenvalues, and the corrected condition carrying the branch-point term

    ... - 2 pi i eps^p / (2^(p+2) Gamma(-p)) = 0,

which stays meaningful for 1 < p < 2 where the extra term takes over and
the real spectrum terminates.  The quartic oscillator gets the analogous
three-exponential condition 2 exp(2V/eps) cos(2U/eps) + 1 = 0.  Solvers
work on an overflow-safe rescaling of these conditions and continue roots
in the family parameter, following merged pairs into the complex plane.
"""

import cmath
import math
from dataclasses import dataclass

from .action import (action_scale, action_to_turning_points, quartic_action,
                     quartic_critical_a, action_between, ContourPath)
from .geometry import ModelSpec, turning_points
from .special import principal_power, recip_gamma

__all__ = [
    "EigRecord",
    "SingularityData",
    "SolveError",
    "corrected_condition",
    "count_real_roots",
    "delta_estimate",
    "eps_to_E",
    "E_to_eps",
    "lowest_branch_path",
    "quartic_closeoff",
    "quartic_condition",
    "singularity_table",
    "solve_condition",
    "solve_quartic",
    "switched_terms",
    "trace_branch",
    "broken_complex_roots",
    "wkb_condition",
    "wkb_eigenvalue",
]


class SolveError(RuntimeError):
    """Root search failed to converge."""


@dataclass
class EigRecord:
    """One eigenvalue observation.

    n is the mode index (ladder position for asymptotic roots, scan order
    for numeric ones), param the family parameter (p or the quartic
    coupling), method one of "wkb" / "full" / "numeric", residual the
    absolute value of the (rescaled) condition or Wronskian at the root.
    """

    n: int
    param: float
    eps: complex
    E: complex
    method: str
    residual: float


@dataclass(frozen=True)
class SingularityData:
    """Late-term data attached to one singularity of the WKB prefactor."""

    location: complex
    gamma: float
    lam: float
    chi_base: complex  # action at the singularity, base point z = 0


def eps_to_E(eps: complex, p: float) -> complex:
    """E = eps**(-2p/(p+2)) on the principal branch."""
    return principal_power(eps, -2.0 * p / (p + 2.0))


def E_to_eps(E: complex, p: float) -> complex:
    """eps = E**(-(p+2)/(2p)) on the principal branch."""
    return principal_power(E, -(p + 2.0) / (2.0 * p))


def wkb_eigenvalue(n: int, p: float) -> float:
    """Closed-form large-n eigenvalue of the classical WKB quantisation.

    E_n = [sqrt(pi) (n + 1/2) Gamma(3/2 + 1/p) / (Gamma(1 + 1/p)
    sin(pi/p))]^(2p/(p+2)); collapses to the harmonic ladder 2n + 1 at
    p = 2.  Diverges at p = 1 where sin(pi/p) vanishes.
    """
    if n < 0:
        raise ValueError("mode index must be >= 0")
    if p == 1.0:
        raise ValueError("closed-form eigenvalue has a pole at p = 1")
    from .special import gamma_real
    rp = 1.0 / p
    base = (math.sqrt(math.pi) * (n + 0.5) * gamma_real(1.5 + rp)
            / (gamma_real(1.0 + rp) * math.sin(math.pi / p)))
    return base ** (2.0 * p / (p + 2.0))


def _condition_parts(eps: complex, p: float) -> tuple[complex, complex, complex]:
    """X, Y, T2 with the condition written as 2i [exp(X) cos(Y) - T2]."""
    r = action_scale(p)
    x = 2.0 * r * math.cos(math.pi / p) / eps
    y = 2.0 * r * math.sin(math.pi / p) / eps
    t2 = math.pi * principal_power(eps, p) * recip_gamma(-p) / 2.0 ** (p + 2.0)
    return x, y, t2


def wkb_condition(eps: complex, p: float) -> complex:
    """The classical two-exponential solvability condition (unscaled)."""
    x, y, _ = _condition_parts(eps, p)
    return 2j * cmath.exp(x) * cmath.cos(y)


def corrected_condition(eps: complex, p: float) -> complex:
    """WKB condition plus the branch-point correction term (unscaled).

    Identical to wkb_condition at integer p, where 1/Gamma(-p) = 0.
    """
    x, y, t2 = _condition_parts(eps, p)
    return 2j * (cmath.exp(x) * cmath.cos(y) - t2)


def _scaled_condition(eps: complex, p: float, condition: str) -> complex:
    """Condition divided by its dominant term magnitude; overflow-safe.

    Roots are unchanged; the returned value is O(1) near a root, so the
    solver tolerance 1e-12 is meaningful for every (eps, p).
    """
    x, y, t2 = _condition_parts(eps, p)
    if condition == "wkb" or t2 == 0:
        return cmath.cos(y)
    l2 = math.log(abs(t2))
    if x.real >= l2:
        return cmath.cos(y) - t2 * cmath.exp(-x)
    return cmath.cos(y) * cmath.exp(x - l2) - t2 / abs(t2)


def _newton_real(f, x0: float, tol: float = 1e-12, max_iter: int = 100) -> tuple[float, float]:
    x = x0
    for _ in range(max_iter):
        try:
            g = f(x)
        except (OverflowError, ValueError):
            raise SolveError("condition overflowed during real Newton")
        if abs(g) <= tol:
            return x, abs(g)
        h = 1e-7 * abs(x)
        dg = (f(x + h) - f(x - h)) / (2.0 * h)
        if dg == 0 or not math.isfinite(abs(dg)):
            raise SolveError("flat condition in real Newton")
        step = -g / dg
        if abs(step) > 0.5 * abs(x):
            step = math.copysign(0.5 * abs(x), step)
        x += step
        if x <= 0 or not math.isfinite(x):
            raise SolveError("real Newton left the positive axis")
    raise SolveError("real Newton did not converge")


def _newton_complex(f, z0: complex, tol: float = 1e-12, max_iter: int = 200) -> tuple[complex, float]:
    z = z0
    for _ in range(max_iter):
        try:
            g = f(z)
        except (OverflowError, ValueError):
            raise SolveError("condition overflowed during complex Newton")
        if abs(g) <= tol:
            return z, abs(g)
        h = 1e-7 * max(abs(z), 1e-12)
        dg = (f(z + h) - f(z - h)) / (2.0 * h)
        if dg == 0 or not cmath.isfinite(dg):
            raise SolveError("flat condition in complex Newton")
        step = -g / dg
        if abs(step) > 0.5 * abs(z):
            step *= 0.5 * abs(z) / abs(step)
        z += step
        if not cmath.isfinite(z) or abs(z) == 0:
            raise SolveError("complex Newton diverged")
    raise SolveError("complex Newton did not converge")


def cosine_seed(n: int, p: float) -> float:
    """Leading-order root: 2 R sin(pi/p)/eps = (n + 1/2) pi."""
    return 2.0 * action_scale(p) * math.sin(math.pi / p) / ((n + 0.5) * math.pi)


def solve_condition(n: int, p: float, condition: str = "full",
                    seed: complex | None = None) -> EigRecord:
    """Root of the chosen eigenvalue condition for mode n.

    Seeds from the cosine-zero rule unless given, runs Newton on the real
    axis first and falls back to complex Newton when the real search
    diverges (the root has left the axis in the broken region).
    """
    if condition not in ("wkb", "full"):
        raise ValueError("condition must be 'wkb' or 'full'")
    f = lambda e: _scaled_condition(e, p, condition)
    if seed is None:
        seed = cosine_seed(n, p)
    eps: complex
    if abs(complex(seed).imag) < 1e-14:
        try:
            x, res = _newton_real(lambda e: f(e).real, complex(seed).real)
            eps = complex(x)
        except SolveError:
            eps, res = _newton_complex(f, complex(seed) * (1.0 + 0.05j))
    else:
        eps, res = _newton_complex(f, complex(seed))
    method = "wkb" if condition == "wkb" else "full"
    return EigRecord(n=n, param=p, eps=eps, E=eps_to_E(eps, p),
                     method=method, residual=res)


def count_real_roots(p: float, e_max: float, n_cap: int | None = None) -> list[float]:
    """Real eigenvalues E <= e_max of the corrected condition, deduplicated.

    Seeds every ladder index whose classical eigenvalue could fall below
    e_max and keeps the converged real roots.  In the broken region the
    high seeds fail or wander off-axis and are dropped, so the returned
    list is finite and shrinks as p decreases.
    """
    if n_cap is None:
        n_cap = 3
        while wkb_eigenvalue(n_cap, p) < 1.6 * e_max + 10 and n_cap < 400:
            n_cap += 1
    eps_found: list[float] = []
    for n in range(n_cap + 1):
        try:
            x, _ = _newton_real(
                lambda e: _scaled_condition(e, p, "full").real, cosine_seed(n, p))
        except SolveError:
            continue
        if any(abs(x - u) < 1e-9 * max(1.0, abs(u)) for u in eps_found):
            continue
        eps_found.append(x)
    energies = sorted(eps_to_E(e, p).real for e in eps_found)
    return [e for e in energies if e <= e_max * (1.0 + 1e-12)]


def broken_complex_roots(p: float, n_max: int = 60, max_roots: int = 4) -> list[complex]:
    """Complex eps roots of the corrected condition from merged ladder seeds.

    Walks the ladder seeds upward; indices whose real root has merged away
    are polished with complex Newton instead.  Stops after max_roots
    distinct roots (normalised to the upper half plane).
    """
    roots: list[complex] = []
    for n in range(n_max + 1):
        seed = cosine_seed(n, p)
        try:
            _newton_real(lambda e: _scaled_condition(e, p, "full").real, seed)
            continue  # still real, nothing broken here
        except SolveError:
            pass
        try:
            z, _ = _newton_complex(lambda e: _scaled_condition(e, p, "full"),
                                   seed * (1.0 + 0.05j))
        except SolveError:
            continue
        if abs(z.imag) < 1e-10 * abs(z):
            continue
        if z.imag < 0:
            z = z.conjugate()
        if all(abs(z - u) > 1e-8 * max(1.0, abs(u)) for u in roots):
            roots.append(z)
        if len(roots) >= max_roots:
            break
    return roots


def trace_branch(n: int, p_start: float, p_end: float, dp: float,
                 condition: str = "full") -> list[EigRecord]:
    """Continue branch n in p, following a merged pair into the complex plane.

    Natural-parameter continuation seeded by the previous root.  When the
    real root collides with a neighbouring ladder root (within 1e-6) or the
    real search fails even after halving the step ten times, continuation
    switches to complex eps and each subsequent step emits the root and its
    conjugate.  Records are ordered by increasing p.
    """
    if dp <= 0:
        raise ValueError("dp must be positive")
    direction = -1.0 if p_end < p_start else 1.0
    records: list[EigRecord] = []
    rec = solve_condition(n, p_start, condition)
    records.append(rec)
    eps_prev: complex = rec.eps
    state = "real"
    p = p_start
    step = dp
    while (p_end - p) * direction > 1e-12:
        p_next = p + direction * min(step, abs(p_end - p))
        try:
            if state == "real":
                x, res = _newton_real(
                    lambda e: _scaled_condition(e, p_next, condition).real,
                    eps_prev.real)
                collided = False
                for m in (n - 1, n + 1):
                    if m < 0:
                        continue
                    try:
                        xm, _ = _newton_real(
                            lambda e: _scaled_condition(e, p_next, condition).real,
                            cosine_seed(m, p_next))
                    except SolveError:
                        continue
                    if abs(xm - x) < 1e-6:
                        collided = True
                if collided:
                    state = "complex"
                    eps_prev = complex(x, 0.02 * x)
                    records.append(EigRecord(n, p_next, complex(x), eps_to_E(x, p_next),
                                             condition_method(condition), res))
                else:
                    eps_prev = complex(x)
                    records.append(EigRecord(n, p_next, eps_prev,
                                             eps_to_E(eps_prev, p_next),
                                             condition_method(condition), res))
            else:
                z, res = _newton_complex(
                    lambda e: _scaled_condition(e, p_next, condition), eps_prev)
                if z.imag < 0:
                    z = z.conjugate()
                eps_prev = z
                records.append(EigRecord(n, p_next, z, eps_to_E(z, p_next),
                                         condition_method(condition), res))
                zc = z.conjugate()
                records.append(EigRecord(n + 1, p_next, zc, eps_to_E(zc, p_next),
                                         condition_method(condition), res))
        except SolveError:
            if step > dp / 2 ** 10:
                step *= 0.5
                continue
            if state == "real":
                state = "complex"
                eps_prev = eps_prev * (1.0 + 0.05j)
                step = dp
                continue
            break
        p = p_next
        step = min(dp, step * 2.0)
    records.sort(key=lambda r: r.param)
    return records


def condition_method(condition: str) -> str:
    return "wkb" if condition == "wkb" else "full"


def lowest_branch_path(deltas: list[float]) -> list[EigRecord]:
    """Ground-branch roots of the corrected condition at p = 1 + delta.

    deltas must decrease; continuation is seeded from the previous root so
    the branch can be followed far beyond where the cosine-rule seed
    overflows.  Stops early if the root search fails.
    """
    records: list[EigRecord] = []
    eps_prev: float | None = None
    for d in deltas:
        p = 1.0 + d
        seed = cosine_seed(0, p) if eps_prev is None else eps_prev
        try:
            x, res = _newton_real(
                lambda e: _scaled_condition(e, p, "full").real, seed)
        except SolveError:
            break
        eps_prev = x
        records.append(EigRecord(0, p, complex(x), eps_to_E(x, p), "full", res))
    return records


def delta_estimate(E: float) -> float:
    """delta = (8 E^{3/2}/pi) exp(-(4/3) E^{3/2}).

    The p -> 1+ scaling law: the offset delta = p - 1 at which branches
    reach eigenvalue E before closing.
    """
    if E <= 0:
        raise ValueError("E must be positive")
    s = E ** 1.5
    return 8.0 * s / math.pi * math.exp(-4.0 * s / 3.0)


def singularity_table(p: float) -> list[SingularityData]:
    """(gamma, Lambda, chi base) for the three active singularities."""
    phi_a, phi_b = action_to_turning_points(p)
    z_a, z_b = turning_points(p)
    lam0 = -recip_gamma(-p) / 2.0 ** (p + 2.0)
    inv_two_pi = 1.0 / (2.0 * math.pi)
    return [
        SingularityData(z_a, 0.0, inv_two_pi, phi_a),
        SingularityData(z_b, 0.0, inv_two_pi, phi_b),
        SingularityData(0j, -p, lam0, 0j),
    ]


def switched_terms(z: complex, eps: complex, p: float) -> complex:
    """Sum of the three exponentials switched on along the continuation path.

    i e^{-chi_A/eps} + i e^{-chi_B/eps} + (2 pi i eps^p Lambda_0)
    e^{-chi_0/eps} with chi_* = 2i [phi(z) - phi(z_*)], action base at the
    origin.  The z-dependence is the common factor e^{-2i phi(z)/eps}, so at
    a root of the corrected condition the whole sum vanishes for every z.
    """
    model = ModelSpec.power_law(p)
    try:
        phi_z = action_between(0, z, model)
    except ValueError:
        dogleg = ContourPath([0, -0.5j, z])
        phi_z = action_between(0, z, model, path=dogleg)
    phi_a, phi_b = action_to_turning_points(p)
    lam0 = -recip_gamma(-p) / 2.0 ** (p + 2.0)
    chi_a = 2j * (phi_z - phi_a)
    chi_b = 2j * (phi_z - phi_b)
    chi_0 = 2j * phi_z
    return (1j * cmath.exp(-chi_a / eps)
            + 1j * cmath.exp(-chi_b / eps)
            + 2j * math.pi * principal_power(eps, p) * lam0 * cmath.exp(-chi_0 / eps))


# --- quartic oscillator -----------------------------------------------------

def quartic_condition(eps: complex, A: float) -> complex:
    """Three-exponential eigenvalue condition of the quartic oscillator.

    Evaluated at the scaled coupling a = A * eps.  For real eps this is
    2 exp(2V/eps) cos(2U/eps) + 1 rescaled by its dominant term; for complex
    eps the two turning-point actions are continued analytically in a.
    """
    a = A * eps
    if abs(complex(eps).imag) < 1e-14 and abs(complex(a).imag) < 1e-14:
        w = quartic_action(complex(a).real)
        u, v = w.real, w.imag
        e = complex(eps).real
        big = 2.0 * v / e
        if big >= 0:
            return cmath.cos(2.0 * u / e) + 0.5 * math.exp(-big)
        return cmath.cos(2.0 * u / e) * math.exp(big) + 0.5
    w_a = quartic_action(a)            # -phi(z_A)
    w_b = -w_a.conjugate() if abs(complex(a).imag) < 1e-14 else _quartic_action_b(a)
    t1 = 2j * w_a / eps                # 2i phi(z_A)/eps with phi_A = -w_a
    t2 = 2j * w_b / eps
    terms = (cmath.exp(-t1), cmath.exp(-t2), 1.0 + 0j)
    scale = max(abs(t) for t in terms)
    return sum(terms) / scale


def _quartic_action_b(a: complex) -> complex:
    """-integral z_C -> z_B, continued from -conj(quartic_action) at real a."""
    from .geometry import quartic_turning_points
    from ._quadrature import sqrt_path_integral
    a = complex(a)
    steps = max(1, int(abs(a) / 0.2) + 1)
    seed = None
    for k in range(steps + 1):
        ak = a * (k / steps)
        roots = quartic_turning_points(ak)
        mid = 0.5 * (roots.z_c + roots.z_b)
        model = ModelSpec.quartic(ak)
        s = model.q(mid) ** 0.5
        if seed is None:
            anchor = -quartic_action(0.0).conjugate()
            to_b, _, _ = sqrt_path_integral(model.q, [mid, roots.z_b], order=40,
                                            seed=s, singular_end=True)
            to_c, _, _ = sqrt_path_integral(model.q, [mid, roots.z_c], order=40,
                                            seed=s, singular_end=True)
            if abs(-(to_b - to_c) - anchor) > abs((to_b - to_c) - anchor):
                s = -s
            seed = s
        elif abs(s - seed) > abs(s + seed):
            seed = -s
        else:
            seed = s
    model = ModelSpec.quartic(a)
    roots = quartic_turning_points(a)
    mid = 0.5 * (roots.z_c + roots.z_b)
    to_b, _, _ = sqrt_path_integral(model.q, [mid, roots.z_b], order=40,
                                    seed=seed, singular_end=True)
    to_c, _, _ = sqrt_path_integral(model.q, [mid, roots.z_c], order=40,
                                    seed=seed, singular_end=True)
    return -(to_b - to_c)


def solve_quartic(n: int, A: float, seed: complex | None = None) -> EigRecord:
    """Root of the quartic condition for mode n at physical coupling A."""
    if seed is None:
        u0 = quartic_action(0.0).real
        e = 2.0 * u0 / ((n + 0.5) * math.pi)
        for _ in range(6):
            e = 2.0 * quartic_action(min(A * e, 4.0)).real / ((n + 0.5) * math.pi)
        seed = e
    f = lambda e: quartic_condition(e, A)
    try:
        x, res = _newton_real(lambda e: f(e).real, complex(seed).real)
        eps = complex(x)
    except SolveError:
        eps, res = _newton_complex(f, complex(seed) * (1.0 + 0.05j))
    return EigRecord(n=n, param=A, eps=eps, E=principal_power(eps, -4.0 / 3.0),
                     method="full", residual=res)


def quartic_closeoff(A: float) -> float:
    """Close-off eigenvalue estimate (A / a*)^(4/3) for coupling A > 0."""
    if A <= 0:
        raise ValueError("A must be positive")
    return (A / quartic_critical_a()) ** (4.0 / 3.0)
