"""Stokes-wedge geometry, turning points, and equal-phase line tracing.

The eigenproblems live on contours in the complex z-plane.  This module
knows where the decay wedges are, where the WKB approximation breaks
(turning points), where the branch cut of (i z)^p runs, and how to follow
the curves Im chi = 0 (Stokes lines) and Re chi = 0 (the classical matching
path) away from their source singularities.
"""

import cmath
import math
from dataclasses import dataclass, field

from ._quadrature import SqrtTracker, powerlaw_origin_piece, sqrt_path_integral
from .special import principal_power

__all__ = [
    "ModelSpec",
    "QuarticRoots",
    "StokesTrace",
    "TraceError",
    "path_crosses_cut",
    "quartic_turning_points",
    "seed_directions",
    "trace_matching_path",
    "trace_stokes_line",
    "turning_points",
    "wedge_angles",
]

#: |q| below this counts as "at a turning point" for tracer termination.
_TP_NEIGHBOURHOOD = 1e-6


class TraceError(RuntimeError):
    """Predictor-corrector tracing failed (divergent corrector, dead end)."""


@dataclass(frozen=True)
class ModelSpec:
    """Which oscillator family, plus the branch-cut convention.

    family "power" is the eigenproblem -eps^2 f'' - (i z)^p f = f with real
    exponent p >= 1; family "quartic" is -eps^2 f'' + (z^4 + i a z) f = f
    with scaled coupling a (shooting interprets the coupling as the physical
    one and rescales per eigenvalue, see shooting module docs).  The branch
    cut of (i z)^p runs along the ray at angle branch_cut_dir (default
    vertically upwards).
    """

    family: str
    p: float | None = None
    a: complex | None = None
    branch_cut_dir: float = math.pi / 2

    def __post_init__(self):
        if self.family == "power":
            if self.p is None or self.p < 1.0:
                raise ValueError("power-law family needs real p >= 1")
        elif self.family == "quartic":
            if self.a is None:
                raise ValueError("quartic family needs a coupling")
            if isinstance(self.a, (int, float)) and self.a < 0:
                raise ValueError("quartic coupling must be >= 0")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def power_law(cls, p: float) -> "ModelSpec":
        return cls(family="power", p=float(p))

    @classmethod
    def quartic(cls, a: complex) -> "ModelSpec":
        return cls(family="quartic", a=a)

    @property
    def is_integer_power(self) -> bool:
        return self.family == "power" and float(self.p) == int(self.p)

    @property
    def has_branch_cut(self) -> bool:
        """Only fractional powers of (i z) carry a cut; the quartic is entire."""
        return self.family == "power" and not self.is_integer_power

    def q(self, z: complex) -> complex:
        """Eikonal right-hand side: (phi')^2 = q(z)."""
        if self.family == "power":
            p = self.p
            if p == int(p):
                return 1.0 + (1j * z) ** int(p)
            return 1.0 + principal_power(1j * z, p)
        a = self.a
        return 1.0 - z * (z * z * z + 1j * a)

    def dq(self, z: complex) -> complex:
        """d q / d z."""
        if self.family == "power":
            p = self.p
            if p == int(p):
                return 1j * p * (1j * z) ** (int(p) - 1)
            return 1j * p * principal_power(1j * z, p - 1.0)
        return -(4.0 * z * z * z + 1j * self.a)

    def q_callable(self):
        """Specialised q(z) closure for hot loops."""
        if self.family == "power":
            p = self.p
            if p == int(p):
                ip = int(p)
                return lambda z: 1.0 + (1j * z) ** ip
            clog = cmath.log
            cexp = cmath.exp
            return lambda z: 1.0 + cexp(p * clog(1j * z))
        ia = 1j * self.a
        return lambda z: 1.0 - z * (z * z * z + ia)

    def scale_exponent(self) -> float:
        """E = eps**(-scale_exponent) for this family."""
        if self.family == "power":
            p = self.p
            return 2.0 * p / (p + 2.0)
        return 4.0 / 3.0


def wedge_angles(p: float) -> tuple[float, float, float]:
    """Centre angles of the two decay wedges and the wedge width.

    theta_{left,right} = pi (-1/2 -/+ 2/(p+2)), each wedge 2 pi/(p+2) wide.
    Left angles below -pi are intentionally left unwrapped (the p -> 1 wedge
    swings into the upper half-plane).
    """
    off = 2.0 / (p + 2.0)
    return (math.pi * (-0.5 - off), math.pi * (-0.5 + off), 2.0 * math.pi / (p + 2.0))


def turning_points(p: float) -> tuple[complex, complex]:
    """The two zeros of 1 + (i z)^p that bound the oscillatory region.

    z_A = -i e^{-i pi/p} (left), z_B = -i e^{i pi/p} (right); they coalesce
    at z = i as p -> 1 and sit at -/+1 for p = 2.
    """
    za = -1j * cmath.exp(-1j * math.pi / p)
    zb = -1j * cmath.exp(1j * math.pi / p)
    return za, zb


@dataclass(frozen=True)
class QuarticRoots:
    """Labeled turning points of z^4 + i a z = 1."""

    z_a: complex  # largest real part
    z_b: complex  # smallest real part
    z_c: complex  # imaginary axis, lower half-plane (integration base)
    z_d: complex  # imaginary axis, upper half-plane

    @property
    def all(self) -> tuple[complex, complex, complex, complex]:
        return (self.z_a, self.z_b, self.z_c, self.z_d)


def _durand_kerner(coeffs: list[complex], starts: list[complex],
                   residual_tol: float = 1e-12, max_iter: int = 200) -> list[complex]:
    """Simultaneous roots of the monic polynomial with given coefficients.

    coeffs are [c_{n-1}, ..., c_0] for z^n + c_{n-1} z^{n-1} + ... + c_0.
    """
    n = len(coeffs)

    def poly(z: complex) -> complex:
        v = 1.0 + 0j
        for c in coeffs:
            v = v * z + c
        return v

    roots = list(starts)
    for _ in range(max_iter):
        moved = 0.0
        for i in range(n):
            denom = 1.0 + 0j
            for j in range(n):
                if j != i:
                    denom *= roots[i] - roots[j]
            delta = poly(roots[i]) / denom
            roots[i] -= delta
            moved = max(moved, abs(delta))
        if moved < 1e-14:
            break
    if any(abs(poly(r)) > residual_tol for r in roots):
        raise TraceError("Durand-Kerner failed to reach residual tolerance")
    return roots


def quartic_turning_points(a: complex) -> QuarticRoots:
    """Labeled roots of z^4 + i a z - 1 = 0 (Durand-Kerner).

    For real a >= 0 two roots sit on the imaginary axis: z_c below, z_d
    above; the other two share an imaginary part, z_a to the right of the
    axis and z_b to the left.  For complex a the labels are carried by
    continuity from the nearest real coupling.
    """
    starts = [1.3 * cmath.exp(1j * (2.0 * math.pi * k / 4.0 + 0.4)) for k in range(4)]
    roots = _durand_kerner([0j, 0j, 1j * a, -1.0 + 0j], starts)
    if isinstance(a, complex) and abs(a.imag) > 1e-12:
        ref = quartic_turning_points(a.real if a.real >= 0 else 0.0)
        return _match_labels(roots, ref)
    axis = sorted((r for r in roots if abs(r.real) < 1e-10), key=lambda r: r.imag)
    if len(axis) != 2:
        raise TraceError(f"expected 2 imaginary-axis roots, found {len(axis)}")
    rest = sorted((r for r in roots if abs(r.real) >= 1e-10), key=lambda r: r.real)
    return QuarticRoots(z_a=rest[1], z_b=rest[0], z_c=axis[0], z_d=axis[1])


def _match_labels(roots: list[complex], ref: QuarticRoots) -> QuarticRoots:
    taken: list[complex] = []
    out = {}
    for name, anchor in zip(("z_a", "z_b", "z_c", "z_d"), ref.all):
        best = min((r for r in roots if r not in taken), key=lambda r: abs(r - anchor))
        taken.append(best)
        out[name] = best
    return QuarticRoots(**out)


@dataclass
class StokesTrace:
    """A traced equal-phase line and the singulant values along it."""

    origin: complex
    points: list[complex] = field(default_factory=list)
    chi: list[complex] = field(default_factory=list)
    terminated: str = ""

    @property
    def residuals(self) -> list[float]:
        return [abs(c.imag) for c in self.chi]

    @property
    def re_chi(self) -> list[float]:
        return [c.real for c in self.chi]


def _cut_frame(z: complex, model: ModelSpec) -> complex:
    """Rotate so the branch cut maps onto the positive imaginary axis."""
    return z * cmath.exp(1j * (math.pi / 2 - model.branch_cut_dir))


def _segment_hits_cut(z0: complex, z1: complex, model: ModelSpec) -> bool:
    w0 = _cut_frame(z0, model)
    w1 = _cut_frame(z1, model)
    x0, x1 = w0.real, w1.real
    if x0 == 0.0 and w0.imag > 0.0:
        return True
    if x1 == 0.0 and w1.imag > 0.0:
        return True
    if x0 * x1 < 0.0:
        t = x0 / (x0 - x1)
        y = w0.imag + t * (w1.imag - w0.imag)
        if y > 1e-15:
            return True
    return False


def path_crosses_cut(path, model: ModelSpec) -> bool:
    """True iff any segment of the path meets the branch-cut ray."""
    nodes = getattr(path, "nodes", None)
    if nodes is None:
        nodes = getattr(path, "points", path)
    nodes = [complex(z) for z in nodes]
    return any(_segment_hits_cut(nodes[i], nodes[i + 1], model)
               for i in range(len(nodes) - 1))


def _chi_from_origin(origin: complex, model: ModelSpec, z: complex,
                     order: int = 24) -> tuple[complex, complex]:
    """chi(z) = 2i * integral_origin^z sqrt(q), plus the sqrt sample at z.

    The branch is whatever the principal seed gives; callers orient it.
    """
    if abs(origin) < 1e-12 and model.has_branch_cut:
        # Fractional-power kink at z = 0: series sliver, then quadrature.
        seg = z - origin
        delta = 0.5 * abs(seg)
        direction = seg / abs(seg)
        head = powerlaw_origin_piece(model.p, direction, delta)
        val, _, last = sqrt_path_integral(
            model.q, [delta * direction, z], order=order, seed=1.0 + 0j)
        return 2j * (head + val), last
    singular = abs(model.q(origin)) < 1e-8
    val, _, last = sqrt_path_integral(
        model.q, [origin, z], order=order, singular_start=singular)
    return 2j * val, last


def _gauss3_chi(q, z0: complex, z1: complex, tracker: SqrtTracker) -> complex:
    """2i * integral of sqrt(q) over one short straight step, branch-tracked."""
    d = z1 - z0
    acc = 0j
    for u, w in ((0.1127016653792583, 0.2777777777777778),
                 (0.5, 0.4444444444444444),
                 (0.8872983346207417, 0.2777777777777778)):
        acc += w * tracker.take(q(z0 + u * d))
    return 2j * acc * d


def seed_directions(origin: complex, model: ModelSpec, radius: float = 1e-3,
                    samples: int = 720, kind: str = "stokes") -> list[float]:
    """Angles at which equal-phase lines leave a singularity.

    Samples chi on a circle of the given radius around the origin,
    continuing the square-root branch along the arc, and returns the angles
    where Im chi changes sign with Re chi > 0 (kind "stokes"), or where
    Re chi changes sign (kind "anti", the classical matching directions).
    A simple turning point yields exactly three Stokes directions; the
    branch point z = 0 is sampled on the principal sheet only.
    """
    q = model.q_callable()
    at_branch_point = abs(origin) < 1e-12 and model.has_branch_cut
    if at_branch_point:
        margin = 2.0 * math.pi / samples
        theta0 = model.branch_cut_dir + margin
        span = 2.0 * math.pi - 2.0 * margin
    else:
        theta0 = 0.0
        # Two loops: chi ~ (z - z*)^{3/2} at a turning point, so the tracked
        # branch only closes up after 4 pi.
        span = 4.0 * math.pi if abs(model.q(origin)) < 1e-8 else 2.0 * math.pi
    n = samples
    thetas = [theta0 + span * k / n for k in range(n + 1)]
    z_prev = origin + radius * cmath.exp(1j * thetas[0])
    chi, last = _chi_from_origin(origin, model, z_prev)
    tracker = SqrtTracker(last)
    found: list[float] = []
    prev_re, prev_th = chi.real, thetas[0]
    target_prev = chi.imag if kind == "stokes" else chi.real
    for th in thetas[1:]:
        z = origin + radius * cmath.exp(1j * th)
        chi += _gauss3_chi(q, z_prev, z, tracker)
        z_prev = z
        target = chi.imag if kind == "stokes" else chi.real
        if target_prev == 0.0 or target * target_prev < 0.0:
            t = abs(target_prev) / (abs(target_prev) + abs(target) + 1e-300)
            th_cross = prev_th + t * (th - prev_th)
            re_cross = prev_re + t * (chi.real - prev_re)
            if kind == "anti" or re_cross > 0.0:
                found.append(th_cross % (2.0 * math.pi))
        prev_th, prev_re, target_prev = th, chi.real, target
    found.sort()
    dedup: list[float] = []
    for th in found:
        if all(min(abs(th - u), 2 * math.pi - abs(th - u)) > 1e-2 for u in dedup):
            dedup.append(th)
    return dedup


def _advance(q, z: complex, chi: complex, tracker: SqrtTracker, dz: complex):
    """One straight micro-step with its branch-tracked chi increment."""
    z_new = z + dz
    chi_new = chi + _gauss3_chi(q, z, z_new, tracker)
    return z_new, chi_new


def trace_stokes_line(origin: complex, model: ModelSpec, seed_direction: float,
                      max_arclen: float, escape_radius: float = 8.0,
                      h_cap: float = 0.01, imag_tol: float = 1e-10,
                      max_points: int = 500_000) -> StokesTrace:
    """Follow Im chi = 0, Re chi >= 0 from a singularity.

    Predictor dz = h / chi'(z) keeps the chi increment real positive;
    a transverse Newton corrector restores |Im chi| <= imag_tol after each
    step.  The step h = min(h_cap, 0.1 |chi'/chi''|) shrinks automatically
    near turning points.  Stops on |z| > escape_radius, on the arclength
    budget, on hitting the branch-cut ray (the crossing step is kept so
    cut tests see it), or on running into another singularity.
    """
    q = model.q_callable()
    dq = model.dq
    r0 = 1e-3
    z = origin + r0 * cmath.exp(1j * seed_direction)
    chi, last = _chi_from_origin(origin, model, z)
    if chi.real < 0.0:
        chi, last = -chi, -last
    tracker = SqrtTracker(last)
    trace = StokesTrace(origin=origin, points=[z], chi=[chi])
    arclen = r0
    for _ in range(max_points):
        qv = q(z)
        if abs(qv) < _TP_NEIGHBOURHOOD:
            trace.terminated = "singularity"
            return trace
        sq = tracker.take(qv)
        chi_p = 2j * sq
        curv = abs(dq(z)) / (2.0 * abs(qv))
        h = h_cap if curv == 0.0 else min(h_cap, 0.1 / curv)
        step_tracker = SqrtTracker(tracker.last)
        z_new, chi_new = _advance(q, z, chi, step_tracker, h / chi_p)
        ok = False
        for _ in range(8):
            if abs(chi_new.imag) <= imag_tol:
                ok = True
                break
            sq_new = step_tracker.take(q(z_new))
            dz_c = -1j * chi_new.imag / (2j * sq_new)
            z_new, chi_new = _advance(q, z_new, chi_new, step_tracker, dz_c)
        if not ok:
            raise TraceError(f"corrector stalled near z = {z_new:.6g}")
        tracker.last = step_tracker.last
        hit_cut = model.has_branch_cut and _segment_hits_cut(z, z_new, model)
        arclen += abs(z_new - z)
        z, chi = z_new, chi_new
        trace.points.append(z)
        trace.chi.append(chi)
        if hit_cut:
            trace.terminated = "cut"
            return trace
        if abs(z) > escape_radius:
            trace.terminated = "escape"
            return trace
        if arclen > max_arclen:
            trace.terminated = "arclen"
            return trace
    raise TraceError("step budget exhausted")


def trace_matching_path(model: ModelSpec, max_arclen: float = 12.0,
                        re_tol: float = 1e-10,
                        max_points: int = 500_000) -> StokesTrace:
    """The path from z_A toward z_B on which the action stays real.

    This is the curve Re chi_A = 0 leaving z_A in the direction of z_B: the
    contour along which the classical turning-point matching is performed.
    For p > 2 it reaches the z_B neighbourhood below the origin; for
    1 < p < 2 it runs into the branch cut instead (the crossing step is
    included).  chi values are recorded; residuals are |Re chi| here.
    """
    if model.family != "power":
        raise ValueError("matching path is defined for the power-law family")
    z_a, z_b = turning_points(model.p)
    heading = cmath.phase(z_b - z_a) if abs(z_b - z_a) > 1e-9 else 0.0
    cands = seed_directions(z_a, model, kind="anti")
    if not cands:
        raise TraceError("no matching-path direction found at z_A")
    theta = min(cands, key=lambda t: abs(cmath.exp(1j * t) - cmath.exp(1j * heading)))
    q = model.q_callable()
    r0 = 1e-3
    z = z_a + r0 * cmath.exp(1j * theta)
    chi, last = _chi_from_origin(z_a, model, z)
    tracker = SqrtTracker(last)
    # chi is (nearly) purely imaginary here; step so dz points along theta.
    sq = tracker.take(q(z))
    sigma = 1.0
    if (1j / (2j * sq) * cmath.exp(-1j * theta)).real < 0.0:
        sigma = -1.0
    trace = StokesTrace(origin=z_a, points=[z], chi=[chi])
    arclen = r0
    h_cap = 0.01
    for _ in range(max_points):
        qv = q(z)
        if abs(qv) < 1e-5 or abs(z - z_b) < 0.02:
            trace.terminated = "target"
            return trace
        sq = tracker.take(qv)
        chi_p = 2j * sq
        curv = abs(model.dq(z)) / (2.0 * abs(qv))
        h = h_cap if curv == 0.0 else min(h_cap, 0.1 / curv)
        step_tracker = SqrtTracker(tracker.last)
        z_new, chi_new = _advance(q, z, chi, step_tracker, sigma * 1j * h / chi_p)
        ok = False
        for _ in range(8):
            if abs(chi_new.real) <= re_tol:
                ok = True
                break
            sq_new = step_tracker.take(q(z_new))
            dz_c = -chi_new.real / (2j * sq_new)
            z_new, chi_new = _advance(q, z_new, chi_new, step_tracker, dz_c)
        if not ok:
            raise TraceError(f"matching-path corrector stalled near z = {z_new:.6g}")
        tracker.last = step_tracker.last
        hit_cut = model.has_branch_cut and _segment_hits_cut(z, z_new, model)
        arclen += abs(z_new - z)
        z, chi = z_new, chi_new
        trace.points.append(z)
        trace.chi.append(chi)
        if hit_cut:
            trace.terminated = "cut"
            return trace
        if abs(z) > 8.0:
            trace.terminated = "escape"
            return trace
        if arclen > max_arclen:
            trace.terminated = "arclen"
            return trace
    raise TraceError("step budget exhausted")
