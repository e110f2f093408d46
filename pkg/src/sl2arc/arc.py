"""Curve analysis at chi_n and continuation of representation arcs.

The family's limiting character chi_n sits on the curve C_n cut out by the
three trace-difference equations.  This module provides:

  * analyze_curve -- exact Jacobian / rank / kernel / Hessian data of C_n at
    chi_n, plus local-coordinate verdicts for tr(m1), tr(m2), tr(m1 l1)
    (true iff the word's gradient lies outside the Jacobian row span);
  * continue_arc -- a pseudo-arclength predictor-corrector that transports an
    actual representation (not just a character) away from rho_n through the
    8-dimensional space of (Ma, Mb) entries, subject to the 5 constraints
    det Ma = det Mb = 1 and the three curve equations, with 2 entries of Ma
    frozen at their rho_n values as gauge pins;
  * glue_hnn -- promote a sample to an HNN extension by normalizing the joint
    conjugator of {(m1, m2), (l1, l2)} to determinant +1 (the stable letter);
  * irreducibility_margin -- |tr rho([m1, l1]) - 2|, which must stay positive
    off the limiting character.

Gauge geometry.  Conjugating (Ma, Mb) by the centralizer of Ma moves matrix
entries without moving the character, so the 5 constraint gradients plus the
pseudo-arclength tangent can never make the augmented 6x6 system invertible:
one gauge direction always survives the two Ma pins (it acts on the Mb
entries alone).  The corrector therefore solves the Newton systems in the
least-squares sense (numpy lstsq with rcond 1e-12), which quotients the
residual gauge motion out of each update; pins are still required to keep
the constraint Jacobian itself at full row-deficiency (rank 4, a clean
2-dimensional kernel spanned by the gauge flow and the arc tangent).  Pins
are selected at the base point by scanning all Ma entry pairs and keeping
those whose reduced Jacobian has rank exactly 4 *and* a kernel that still
moves the character (some pin choices freeze tr(Ma) or force Ma to stay
triangular, stalling the arc at chi_n); among the feasible pairs the one
with the largest fourth singular value wins.

The arc tangent at each step is the kernel direction of the reduced
Jacobian that maximizes character speed ||D(chi) v|| (the gauge flow has
character speed zero), sign-matched to the previous tangent.  The initial
orientation is probed one corrector step on each side: the direction flag
+1 denotes the side whose joint conjugator has determinant +1 (a real
stable letter exists, the arc glues to an HNN extension, and the meridian
trace grows without bound toward the limiting character); -1 denotes the
opposite side, where the conjugator determinant is negative.

Shape of the meridian trace on the +1 side: it diverges like c/sqrt(t) as
t -> 0+ (the limiting character itself is the point at infinity of the
extended variety -- the conjugator is singular there), falls to an
intrinsic minimum a few units of arclength out, and then grows like the
square root of tr(Mb) forever.  The trace ceiling is therefore a stand-in
for closeness to the point at infinity, approached at the t -> 0 end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .pretzel import FamilyInstance, gradient_at, hessian_at, outside_row_span
from .sl2 import ConjugatorResult, Mat2, exact_nullspace, exact_rank, solve_conjugator
from .tracepoly import trace_polynomial
from .words import evaluate

__all__ = [
    "Arc",
    "ContinuationError",
    "CurveAnalysis",
    "GluedRepresentation",
    "GluingError",
    "RepSample",
    "analyze_curve",
    "continue_arc",
    "glue_hnn",
    "irreducibility_margin",
]


class ContinuationError(RuntimeError):
    """Continuation could not start or the first corrector step diverged."""


class GluingError(ValueError):
    """The sample does not glue to a real HNN extension."""


# ----------------------------------------------------------------------
# curve analysis at chi_n

@dataclass(frozen=True)
class CurveAnalysis:
    """Exact first- and second-order data of C_n at chi_n.

    kernel_basis is normalized so its first coordinate is 12, the scale at
    which the kernel vector is integral for every n of the family;
    hessian_on_kernel is v^T H v for that vector, with H the Hessian of the
    longitude trace tr([m1, l1]).
    """

    jacobian: tuple
    rank: int
    kernel_basis: tuple
    hessian_on_kernel: Fraction
    local_coordinate_verdicts: dict

    def kv_lines(self) -> list:
        rows = ["rank=%d" % self.rank,
                "kernel=(%s)" % ", ".join(str(k) for k in self.kernel_basis),
                "hessian_on_kernel=%s" % self.hessian_on_kernel]
        for name in sorted(self.local_coordinate_verdicts):
            rows.append("local_coordinate[%s]=%s"
                        % (name, str(self.local_coordinate_verdicts[name]).lower()))
        return rows


def analyze_curve(fam: FamilyInstance) -> CurveAnalysis:
    """Exact Jacobian, rank, kernel and Hessian-on-kernel of C_n at chi_n."""
    chi = fam.chi
    jac = tuple(gradient_at(p, chi) for p in fam.curve_eqs)
    rank = exact_rank([list(r) for r in jac])
    kernel: tuple = ()
    if rank == 2:
        null = exact_nullspace([list(r) for r in jac])
        if len(null) != 1:
            raise ContinuationError("curve kernel at chi_n is not one-dimensional")
        v = null[0]
        if v[0] == 0:
            raise ContinuationError("curve kernel has vanishing leading coordinate")
        scale = Fraction(12, 1) / Fraction(v[0])
        kernel = tuple(Fraction(x) * scale for x in v)
    commutator_trace = trace_polynomial(fam.longitude)
    hess = hessian_at(commutator_trace, chi)
    hval = Fraction(0)
    if kernel:
        hval = sum(kernel[i] * hess[i][j] * kernel[j] for i in range(3) for j in range(3))
    verdicts = {}
    for name, word in (("tr_m1", fam.m1), ("tr_m2", fam.m2), ("tr_m1l1", fam.m1l1)):
        grad = gradient_at(trace_polynomial(word), chi)
        verdicts[name] = outside_row_span([list(r) for r in jac], list(grad))
    return CurveAnalysis(jac, rank, kernel, hval, verdicts)


# ----------------------------------------------------------------------
# continuation samples

@dataclass(frozen=True)
class RepSample:
    """One accepted point of the representation arc.

    residual is the max absolute violation of the 5 constraints after
    correction; meridian_trace is |tr T| of the determinant-+1 stable letter
    (+inf at the singular limiting character, nan when no real stable letter
    exists because the conjugator determinant is negative).
    """

    t: float
    ma: Mat2
    mb: Mat2
    character: tuple
    residual: float
    conjugator: ConjugatorResult
    longitude_trace: float
    meridian_trace: float

    @property
    def det_sign(self) -> int:
        return self.conjugator.det_sign

    def images(self, fam: FamilyInstance) -> dict:
        return {name: evaluate(getattr(fam, name), self.ma, self.mb)
                for name in ("m1", "m2", "l1", "l2")}


@dataclass(frozen=True)
class Arc:
    """An ordered run of RepSamples with its termination verdict."""

    family: FamilyInstance
    samples: tuple
    termination_reason: str
    direction: int
    step_size: float
    pins: tuple

    def longitude_images(self) -> list:
        out = []
        for s in self.samples:
            im1 = evaluate(self.family.m1, s.ma, s.mb)
            il1 = evaluate(self.family.l1, s.ma, s.mb)
            out.append(im1 @ il1 @ im1.inverse() @ il1.inverse())
        return out


# ----------------------------------------------------------------------
# the constraint system in entry space

_PIN_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class _EntrySystem:
    """F: R^8 -> R^5 (two unit-determinant equations, three curve equations)
    over q = (a11, a12, a21, a22, b11, b12, b21, b22), with its Jacobian and
    the character map chi(q) = (tr Ma, tr Mb, tr Ma Mb)."""

    def __init__(self, fam: FamilyInstance):
        self.fam = fam
        self.polys = fam.curve_eqs
        self.grads = [[p.derivative(v) for v in range(3)] for p in self.polys]

    @staticmethod
    def mats(q) -> tuple:
        return (Mat2(q[0], q[1], q[2], q[3]), Mat2(q[4], q[5], q[6], q[7]))

    @staticmethod
    def char(q) -> np.ndarray:
        a11, a12, a21, a22, b11, b12, b21, b22 = q
        return np.array([a11 + a22, b11 + b22,
                         a11 * b11 + a12 * b21 + a21 * b12 + a22 * b22])

    @staticmethod
    def char_grad(q) -> np.ndarray:
        a11, a12, a21, a22, b11, b12, b21, b22 = q
        g = np.zeros((3, 8))
        g[0, 0] = g[0, 3] = 1.0
        g[1, 4] = g[1, 7] = 1.0
        g[2] = (b11, b21, b12, b22, a11, a21, a12, a22)
        return g

    def value(self, q) -> np.ndarray:
        a11, a12, a21, a22, b11, b12, b21, b22 = q
        pt = tuple(self.char(q))
        return np.array([
            a11 * a22 - a12 * a21 - 1.0,
            b11 * b22 - b12 * b21 - 1.0,
            float(self.polys[0].evaluate(*pt)),
            float(self.polys[1].evaluate(*pt)),
            float(self.polys[2].evaluate(*pt)),
        ])

    def jacobian(self, q) -> np.ndarray:
        a11, a12, a21, a22, b11, b12, b21, b22 = q
        pt = tuple(self.char(q))
        cg = self.char_grad(q)
        rows = np.zeros((5, 8))
        rows[0, :4] = (a22, -a21, -a12, a11)
        rows[1, 4:] = (b22, -b21, -b12, b11)
        for i, grads in enumerate(self.grads):
            gv = np.array([float(g.evaluate(*pt)) for g in grads])
            rows[2 + i] = gv @ cg
        return rows


class _ReducedSystem:
    """The entry system with two pinned coordinates eliminated."""

    def __init__(self, system: _EntrySystem, pins: tuple, pinned_values: np.ndarray):
        self.system = system
        self.pins = pins
        self.free = [i for i in range(8) if i not in pins]
        self.pinned_values = pinned_values

    def expand(self, qr) -> np.ndarray:
        q = np.empty(8)
        q[list(self.pins)] = self.pinned_values
        q[self.free] = qr
        return q

    def value(self, qr) -> np.ndarray:
        return self.system.value(self.expand(qr))

    def jacobian(self, qr) -> np.ndarray:
        return self.system.jacobian(self.expand(qr))[:, self.free]

    def kernel_and_sigma(self, qr) -> tuple:
        jr = self.jacobian(qr)
        _, sig, vt = np.linalg.svd(jr)
        return vt[4:], sig

    def tangent(self, qr, prev) -> np.ndarray:
        """Kernel direction of maximal character speed, sign-matched to prev."""
        kernel, _ = self.kernel_and_sigma(qr)
        cg = self.system.char_grad(self.expand(qr))[:, self.free]
        _, _, vt2 = np.linalg.svd(cg @ kernel.T)
        v = kernel.T @ vt2[0]
        v /= np.linalg.norm(v)
        if prev is not None and float(np.dot(v, prev)) < 0.0:
            v = -v
        return v

    def newton(self, qr, tau, q_pred, tol: float, max_iter: int) -> tuple:
        """Correct qr onto {F = 0} inside the pseudo-arclength hyperplane."""
        q = np.array(qr, dtype=float)
        res = math.inf
        for _ in range(max_iter):
            f = self.value(q)
            extra = float(np.dot(tau, q - q_pred))
            res = max(float(np.max(np.abs(f))), abs(extra))
            if res <= tol:
                return q, res
            a = np.vstack([self.jacobian(q), tau])
            b = np.concatenate([f, [extra]])
            dq = np.linalg.lstsq(a, -b, rcond=1e-12)[0]
            q = q + dq
        f = self.value(q)
        extra = float(np.dot(tau, q - q_pred))
        return q, max(float(np.max(np.abs(f))), abs(extra))


NEWTON_TOL = 1e-10
NEWTON_MAX_ITER = 25
_RANK_FLOOR = 1e-7      # sigma_4 / sigma_1 below this: constraint rank < 4
_KERNEL_CEIL = 1e-9     # sigma_5 / sigma_1 above this: kernel is not 2-dim
_CHAR_SPEED_FLOOR = 0.05


def _select_pins(system: _EntrySystem, q0: np.ndarray) -> tuple:
    """Pick the Ma entry pair to freeze.

    Feasible pairs leave the reduced Jacobian with rank exactly 4 and leave
    a kernel direction that moves the character; the pair with the largest
    fourth singular value (best-conditioned constraint block) is chosen.
    """
    best = None
    for pins in _PIN_PAIRS:
        reduced = _ReducedSystem(system, pins, q0[list(pins)])
        qr = q0[reduced.free]
        kernel, sig = reduced.kernel_and_sigma(qr)
        if sig[0] <= 0 or sig[3] / sig[0] < _RANK_FLOOR or sig[4] / sig[0] > _KERNEL_CEIL:
            continue
        cg = system.char_grad(q0)[:, reduced.free]
        speed = float(np.linalg.svd(cg @ kernel.T, compute_uv=False)[0])
        if speed < _CHAR_SPEED_FLOOR:
            continue
        if best is None or sig[3] > best[1]:
            best = (pins, sig[3])
    if best is None:
        raise ContinuationError(
            "no gauge pin pair gives a rank-4 constraint block with a moving character")
    return best[0]


def _word_images(fam: FamilyInstance, ma: Mat2, mb: Mat2) -> tuple:
    im1 = evaluate(fam.m1, ma, mb)
    im2 = evaluate(fam.m2, ma, mb)
    il1 = evaluate(fam.l1, ma, mb)
    il2 = evaluate(fam.l2, ma, mb)
    return im1, im2, il1, il2


def _sample_at(fam: FamilyInstance, t: float, q, residual: float) -> RepSample:
    ma, mb = _EntrySystem.mats(q)
    im1, im2, il1, il2 = _word_images(fam, ma, mb)
    conj = solve_conjugator([(im1, im2), (il1, il2)])
    longitude = im1 @ il1 @ im1.inverse() @ il1.inverse()
    if conj.det_sign == 1 and conj.candidate is not None:
        meridian = abs(conj.candidate.trace())
    elif conj.det_sign == 0:
        meridian = math.inf
    else:
        meridian = math.nan
    return RepSample(
        t=t,
        ma=ma,
        mb=mb,
        character=tuple(float(c) for c in _EntrySystem.char(q)),
        residual=residual,
        conjugator=conj,
        longitude_trace=float(longitude.trace()),
        meridian_trace=meridian,
    )


def _probe_det_sign(fam: FamilyInstance, reduced: _ReducedSystem,
                    qr0: np.ndarray, v0: np.ndarray, h: float) -> int:
    """Conjugator determinant class one corrector step along +v0.

    The two sides of the arc through the limiting character are separated by
    this class from the very first sample: only one side carries a real
    determinant-+1 stable letter (the side that glues to an HNN extension);
    the other side's joint conjugator has determinant -1.  Returns 0 when the
    probe step fails or the conjugator stays singular.
    """
    qn, res = reduced.newton(qr0, v0, qr0 + h * v0, NEWTON_TOL, NEWTON_MAX_ITER)
    if res > NEWTON_TOL:
        return 0
    ma, mb = _EntrySystem.mats(reduced.expand(qn))
    im1, im2, il1, il2 = _word_images(fam, ma, mb)
    conj = solve_conjugator([(im1, im2), (il1, il2)])
    return conj.det_sign


def continue_arc(fam: FamilyInstance, step_size: float = 1e-3,
                 max_steps: int = 2000, direction: int = 1,
                 trace_ceiling: float = 1e6) -> Arc:
    """Pseudo-arclength continuation of the representation arc from rho_n.

    direction +1 follows the side whose joint conjugator has determinant +1
    (probed one corrector step out on each side); -1 follows the opposite
    side.  Terminates on max_steps, on the meridian trace crossing
    trace_ceiling, on Newton failure, or on a change of conjugator
    determinant class.
    """
    if not 1e-6 <= step_size <= 1e-1:
        raise ValueError(f"step_size must lie in [1e-6, 1e-1], got {step_size}")
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    if max_steps < 0:
        raise ValueError(f"max_steps must be nonnegative, got {max_steps}")
    analysis = analyze_curve(fam)
    if analysis.rank != 2:
        raise ContinuationError(f"curve rank at chi_n is {analysis.rank}, need 2")

    system = _EntrySystem(fam)
    q0 = np.array([float(x) for x in
                   (fam.rho_a.a, fam.rho_a.b, fam.rho_a.c, fam.rho_a.d,
                    fam.rho_b.a, fam.rho_b.b, fam.rho_b.c, fam.rho_b.d)])
    pins = _select_pins(system, q0)
    reduced = _ReducedSystem(system, pins, q0[list(pins)])
    qr = q0[reduced.free].copy()

    v0 = reduced.tangent(qr, None)
    plus = _probe_det_sign(fam, reduced, qr, v0, step_size)
    if plus != 1:
        minus = _probe_det_sign(fam, reduced, qr, -v0, step_size)
        if minus == 1:
            v0 = -v0
        elif plus == 0 and minus == 0:
            raise ContinuationError(
                "orientation probe failed on both sides of the limiting character")
    if direction < 0:
        v0 = -v0

    samples = [_sample_at(fam, 0.0, q0, 0.0)]
    reason = "maxSteps"
    prev = v0
    t = 0.0
    base_det_sign = None
    for step in range(1, max_steps + 1):
        v = reduced.tangent(qr, prev)
        q_pred = qr + step_size * v
        qn, res = reduced.newton(qr, v, q_pred, NEWTON_TOL, NEWTON_MAX_ITER)
        if res > NEWTON_TOL:
            if step == 1:
                raise ContinuationError(
                    f"Newton diverged at the first step (last residual {res:.3e})")
            reason = "newtonFailure"
            break
        prev, qr = v, qn
        t += step_size
        sample = _sample_at(fam, t, reduced.expand(qr), res)
        samples.append(sample)
        if base_det_sign is None:
            base_det_sign = sample.det_sign
        elif sample.det_sign != base_det_sign:
            reason = "classChange"
            break
        if math.isfinite(sample.meridian_trace) and sample.meridian_trace > trace_ceiling:
            reason = "meridianTraceCeiling"
            break
    return Arc(fam, tuple(samples), reason, direction, step_size, pins)


# ----------------------------------------------------------------------
# HNN gluing and irreducibility

@dataclass(frozen=True)
class GluedRepresentation:
    """A sample promoted to the HNN extension: t-letter T with det T = +1,
    T rho(m1) T^-1 = rho(m2) and T rho(l1) T^-1 = rho(l2)."""

    ma: Mat2
    mb: Mat2
    t_letter: Mat2
    relation_residual: float
    longitude_commutation_residual: float
    underdetermined: bool


def _relative_commutation(t: Mat2, a: Mat2, b: Mat2) -> float:
    """|| T a - b T || relative to the operator scale (amplification-aware)."""
    scale = max(1.0, t.frobenius() * max(a.frobenius(), b.frobenius()))
    return (t @ a - b @ t).frobenius() / scale


GLUE_TOL = 1e-8


def glue_hnn(sample: RepSample, fam: FamilyInstance,
             pairs: tuple | None = None) -> GluedRepresentation:
    """Normalize the sample's conjugator into an HNN stable letter.

    pairs defaults to the meridian and longitude pairs of the family; passing
    a single pair flags the result as underdetermined (the centralizer of a
    single pair is 2-dimensional).  Raises GluingError when no determinant-+1
    real conjugator exists or the relation residuals exceed GLUE_TOL.
    """
    im1, im2, il1, il2 = _word_images(fam, sample.ma, sample.mb)
    if pairs is None:
        pairs = ((im1, im2), (il1, il2))
    conj = solve_conjugator(list(pairs))
    if conj.det_sign != 1 or conj.candidate is None:
        raise GluingError(
            f"no determinant-+1 real conjugator at t={sample.t:.6g} "
            f"(determinant class {conj.det_sign_label})")
    t_letter = conj.candidate
    if t_letter.trace() < 0:
        t_letter = t_letter.neg()
    underdetermined = conj.nullspace_dim >= 2
    rel = max(_relative_commutation(t_letter, a, b) for a, b in pairs)
    longitude = im1 @ il1 @ im1.inverse() @ il1.inverse()
    comm = _relative_commutation(t_letter, longitude, longitude)
    if not underdetermined:
        if rel > GLUE_TOL:
            raise GluingError(
                f"gluing relation residual {rel:.3e} exceeds {GLUE_TOL:.0e}")
        if comm > GLUE_TOL:
            raise GluingError(
                f"stable letter fails to commute with the longitude ({comm:.3e})")
    return GluedRepresentation(sample.ma, sample.mb, t_letter, rel, comm,
                               underdetermined=underdetermined)


def irreducibility_margin(sample: RepSample) -> float:
    """|tr rho([m1, l1]) - 2|: zero exactly at the limiting character."""
    return abs(sample.longitude_trace - 2.0)
