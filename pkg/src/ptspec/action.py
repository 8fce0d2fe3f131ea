"""Contour integrals of the WKB action and the singulant.

The action phi(z1) - phi(z0) = integral of sqrt(q(t)) dt enters every
eigenvalue condition.  Paths are polylines that avoid the branch cut; the
square-root branch is seeded at the path start (+1 at the origin for the
power-law family, calibrated at the segment midpoint for the quartic) and
carried continuously.  Turning-point endpoints get the s**2 substitution
from the quadrature engine automatically.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from ._quadrature import powerlaw_origin_piece, sqrt_path_integral
from .geometry import ModelSpec, path_crosses_cut, quartic_turning_points
from .special import gamma_real

__all__ = [
    "ContourPath",
    "action_between",
    "action_scale",
    "action_to_turning_points",
    "quartic_action",
    "quartic_critical_a",
    "singulant",
]

DEFAULT_ORDER = 40

#: |q| below which a path endpoint is treated as a turning point.
_ENDPOINT_SINGULAR_TOL = 1e-9


@dataclass
class ContourPath:
    """Ordered polyline of complex nodes with a per-segment Gauss order."""

    nodes: list[complex]
    order: int = DEFAULT_ORDER
    allow_cut: bool = False

    def __post_init__(self):
        self.nodes = [complex(z) for z in self.nodes]
        if len(self.nodes) < 2:
            raise ValueError("a contour needs at least two nodes")
        for i in range(len(self.nodes) - 1):
            if self.nodes[i] == self.nodes[i + 1]:
                raise ValueError("consecutive contour nodes coincide")

    @classmethod
    def straight(cls, z0: complex, z1: complex, order: int = DEFAULT_ORDER) -> "ContourPath":
        return cls(nodes=[z0, z1], order=order)


def _check_cut(path: ContourPath, model: ModelSpec) -> None:
    if path.allow_cut or not model.has_branch_cut:
        return
    if path_crosses_cut(path, model):
        raise ValueError("contour crosses the branch cut; flag allow_cut to override")


def action_between(z0: complex, z1: complex, model: ModelSpec,
                   path: ContourPath | None = None, order: int | None = None,
                   seed: complex | None = None) -> complex:
    """phi(z1) - phi(z0): integral of sqrt(q) from z0 to z1 along the path.

    The default path is the straight segment.  The branch seed defaults to
    the principal square root at the first quadrature node, which equals +1
    when the path starts at the origin for the power-law family.  Endpoints
    where q vanishes are detected and integrated through the square-root
    substitution; interior nodes must stay clear of turning points.
    """
    z0, z1 = complex(z0), complex(z1)
    if z0 == z1:
        return 0j
    if path is None:
        path = ContourPath.straight(z0, z1)
    if path.nodes[0] != z0 or path.nodes[-1] != z1:
        raise ValueError("path must run from z0 to z1")
    _check_cut(path, model)
    n = order or path.order
    fractional_origin = model.has_branch_cut
    if fractional_origin and z1 == 0:
        rev = ContourPath(list(reversed(path.nodes)), order=n, allow_cut=path.allow_cut)
        return -action_between(z1, z0, model, path=rev, order=n, seed=seed)
    nodes = list(path.nodes)
    head = 0j
    if fractional_origin and z0 == 0:
        # Peel off a sliver at the origin: the (i t)^p kink there defeats
        # Gauss quadrature, the binomial series does not.
        seg = nodes[1] - nodes[0]
        delta = min(0.3, 0.5 * abs(seg))
        direction = seg / abs(seg)
        head = powerlaw_origin_piece(model.p, direction, delta)
        nodes[0] = delta * direction
        if seed is None:
            seed = 1.0 + 0j
    val, _, _ = sqrt_path_integral(
        model.q, nodes, order=n, seed=seed,
        singular_start=abs(model.q(nodes[0])) < _ENDPOINT_SINGULAR_TOL,
        singular_end=abs(model.q(nodes[-1])) < _ENDPOINT_SINGULAR_TOL,
    )
    return head + val


def action_scale(p: float) -> float:
    """R(p) = sqrt(pi) Gamma(1 + 1/p) / (2 Gamma(3/2 + 1/p)).

    The positive constant setting the size of the action between the origin
    and a turning point; R(1) = 2/3, R(2) = pi/4, R -> 1 as p -> infinity.
    """
    rp = 1.0 / p
    return math.sqrt(math.pi) * gamma_real(1.0 + rp) / (2.0 * gamma_real(1.5 + rp))


def action_to_turning_points(p: float) -> tuple[complex, complex]:
    """Closed forms for phi(z_A) - phi(0) and phi(z_B) - phi(0).

    phi(z_A) - phi(0) = [-sin(pi/p) - i cos(pi/p)] R(p), and the right
    turning point mirrors it: phi(z_B) - phi(0) = -conj(phi(z_A) - phi(0)).
    """
    r = action_scale(p)
    phi_a = complex(-math.sin(math.pi / p), -math.cos(math.pi / p)) * r
    return phi_a, -phi_a.conjugate()


def singulant(z: complex, z_star: complex, model: ModelSpec,
              path: ContourPath | None = None, order: int | None = None,
              seed: complex | None = None) -> complex:
    """chi(z) = 2i [phi(z) - phi(z_star)], zero at z_star by construction.

    The square root is two-valued, so chi is defined up to overall sign;
    the seed picks the branch (the Stokes-relevant one has Re chi >= 0
    along the line).
    """
    return 2j * action_between(z_star, z, model, path=path, order=order, seed=seed)


def _quartic_midpoint_seed(a: complex) -> tuple[complex, complex, complex]:
    """Branch seed at the midpoint of the z_C -> z_A segment.

    The overall sign of the quartic integrand is fixed at a = 0 by the
    requirement Im(U + iV) > 0 (i.e. V(0) = +0.874..., not its negative) and
    carried to other couplings by walking the coupling in small steps so the
    midpoint sample never jumps branch.  Returns (z_c, z_a, seed value).
    """
    a = complex(a)
    steps = max(1, int(abs(a) / 0.2) + 1)
    seed = None
    roots = None
    for k in range(steps + 1):
        ak = a * (k / steps)
        roots = quartic_turning_points(ak)
        mid = 0.5 * (roots.z_c + roots.z_a)
        model = ModelSpec.quartic(ak)
        s = model.q(mid) ** 0.5
        if seed is None:
            # Calibration at a = 0: the -principal branch yields V > 0.
            seed = -s
        elif abs(s - seed) > abs(s + seed):
            seed = -s
        else:
            seed = s
    return roots.z_c, roots.z_a, seed


def quartic_action(a: complex, order: int = DEFAULT_ORDER) -> complex:
    """U(a) + i V(a) = -integral from z_C to z_A of sqrt(1 - t^4 - i a t).

    Straight segment between the two turning points, both endpoints handled
    by the square-root substitution; U decreases and V falls monotonically
    from V(0) ~ 0.874 through zero at the critical coupling.  Accepts
    complex a (analytic continuation) for continuation past branch merges.
    """
    model = ModelSpec.quartic(a)
    z_c, z_a, seed = _quartic_midpoint_seed(a)
    mid = 0.5 * (z_c + z_a)
    to_a, _, _ = sqrt_path_integral(model.q, [mid, z_a], order=order,
                                    seed=seed, singular_end=True)
    to_c, _, _ = sqrt_path_integral(model.q, [mid, z_c], order=order,
                                    seed=seed, singular_end=True)
    # integral_{z_C}^{z_A} = integral_{mid}^{z_A} - integral_{mid}^{z_C}
    return -(to_a - to_c)


@lru_cache(maxsize=1)
def quartic_critical_a(tol: float = 1e-10) -> float:
    """Coupling a* where V(a) crosses zero (bisection on [1.0, 1.4]).

    Above a* the dominant exponential of the quartic eigenvalue condition
    flips and the real branches close off.
    """
    lo, hi = 1.0, 1.4
    v_lo = quartic_action(lo).imag
    v_hi = quartic_action(hi).imag
    if v_lo <= 0.0 or v_hi >= 0.0:
        raise ValueError("V(a) does not change sign on [1.0, 1.4]; "
                         "check the turning-point labeling")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        v = quartic_action(mid).imag
        if abs(v) <= tol:
            return mid
        if v > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
