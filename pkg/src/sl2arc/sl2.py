"""2x2 matrices over exact rationals or floats, and the SL(2,R) geometry
used by the rest of the package: trace classification, the Delta = b - c
conjugacy barometer, conjugator solving, eigendata, and translation numbers
of lifted circle maps.

Conventions.  A matrix [[a, b], [c, d]] acts on directions [x : y] in the
projective line, parametrized by the angle theta in [0, pi) of the vector
(cos theta, sin theta).  Determinant-1 matrices act by orientation-preserving
homeomorphisms of that circle; a path of matrices starting at the identity
lifts the endpoint to the universal cover, and the translation number of the
lift is the asymptotic displacement per iterate in units of pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

import numpy as np

_EXACT_TYPES = (int, Fraction)


class ContinuityError(ValueError):
    """A matrix path is too coarse to lift its circle action continuously."""


def _fmt_entry(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return repr(x)


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 matrix with int/Fraction (exact) or float entries."""

    a: object
    b: object
    c: object
    d: object

    @staticmethod
    def from_rows(rows) -> "Mat2":
        (a, b), (c, d) = rows
        return Mat2(a, b, c, d)

    @staticmethod
    def from_array(arr) -> "Mat2":
        return Mat2(float(arr[0, 0]), float(arr[0, 1]), float(arr[1, 0]), float(arr[1, 1]))

    @staticmethod
    def identity(exact: bool = True) -> "Mat2":
        return Mat2(1, 0, 0, 1) if exact else Mat2(1.0, 0.0, 0.0, 1.0)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, _EXACT_TYPES) for x in (self.a, self.b, self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def delta(self):
        """The conjugacy barometer Delta = b - c (upper right minus lower left)."""
        return self.b - self.c

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def scale(self, k) -> "Mat2":
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def neg(self) -> "Mat2":
        return self.scale(-1)

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("matrix is singular")
        adj = self.adjugate()
        if self.exact:
            if det == 1:
                return adj
            return Mat2(*(Fraction(x, 1) / det for x in (adj.a, adj.b, adj.c, adj.d)))
        return adj.scale(1.0 / det)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        out = Mat2.identity(self.exact)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def frobenius(self) -> float:
        return math.sqrt(float(self.a) ** 2 + float(self.b) ** 2 + float(self.c) ** 2 + float(self.d) ** 2)

    def max_abs(self) -> float:
        return max(abs(float(x)) for x in (self.a, self.b, self.c, self.d))

    def to_array(self) -> np.ndarray:
        return np.array([[float(self.a), float(self.b)], [float(self.c), float(self.d)]], dtype=float)

    def to_float(self) -> "Mat2":
        return Mat2(float(self.a), float(self.b), float(self.c), float(self.d))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(*(_fmt_entry(x) for x in self.entries()))


def frobenius_distance(m: Mat2, n: Mat2) -> float:
    return (m - n).frobenius()


class MatClass(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def _check_unit_det(m: Mat2):
    det = m.det()
    if m.exact:
        if det != 1:
            raise ValueError(f"matrix must have determinant 1, got {det}")
    elif abs(det - 1.0) > 1e-12 * max(1.0, m.max_abs() ** 2):
        raise ValueError(f"matrix must have determinant 1, got {det}")


def classify(m: Mat2, tol: float = 1e-9) -> MatClass:
    """Elliptic, parabolic or hyperbolic by |trace| against 2.

    Exact matrices are compared exactly; floats use a band of width tol
    around |trace| = 2 for the parabolic verdict.
    """
    _check_unit_det(m)
    t = m.trace()
    if m.exact:
        t = abs(t)
        if t == 2:
            return MatClass.PARABOLIC
        return MatClass.ELLIPTIC if t < 2 else MatClass.HYPERBOLIC
    t = abs(float(t))
    if abs(t - 2.0) <= tol:
        return MatClass.PARABOLIC
    return MatClass.ELLIPTIC if t < 2.0 else MatClass.HYPERBOLIC


class Conjugacy(Enum):
    """Outcome of the same-trace SL(2,R) conjugacy test."""

    CONJUGATE_DET_PLUS = "ConjugateDetPlus"
    CONJUGATE_DET_MINUS = "ConjugateDetMinus"
    NOT_APPLICABLE = "NotApplicable"


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def same_trace_conjugacy(m1: Mat2, m2: Mat2, tol: float = 1e-9) -> Conjugacy:
    """Is a determinant +1 or only a determinant -1 conjugator possible?

    For equal-trace non-hyperbolic pairs the sign of Delta = b - c decides:
    same sign means conjugate by determinant +1, opposite signs by
    determinant -1.  Hyperbolic inputs (where both happen at once) and
    central matrices (Delta = 0) return NOT_APPLICABLE.
    """
    t1, t2 = m1.trace(), m2.trace()
    if m1.exact and m2.exact:
        if t1 != t2:
            raise ValueError(f"traces differ: {t1} vs {t2}")
    elif abs(float(t1) - float(t2)) > tol:
        raise ValueError(f"traces differ: {t1} vs {t2}")
    c1, c2 = classify(m1, tol), classify(m2, tol)
    if c1 != c2 or c1 == MatClass.HYPERBOLIC:
        return Conjugacy.NOT_APPLICABLE
    s1, s2 = _sign(m1.delta()), _sign(m2.delta())
    if s1 == 0 or s2 == 0:
        return Conjugacy.NOT_APPLICABLE
    return Conjugacy.CONJUGATE_DET_PLUS if s1 == s2 else Conjugacy.CONJUGATE_DET_MINUS


def rotation(theta: float) -> Mat2:
    """R(theta) = [[cos, -sin], [sin, cos]]; note Delta(R) = -2 sin(theta)."""
    return Mat2(math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta))


def conjugation_delta_formulas(p: Mat2, kind: str, value):
    """Delta of P U P^-1 computed by direct product.

    kind 'parabolic': U = [[1, x], [0, 1]] with x = value.
    kind 'elliptic' : U = [[c, -s], [s, c]] with (c, s) = value, or value an
    angle in radians.  Exact inputs (rational P, rational x or rational
    point (c, s) on the unit circle) are computed exactly.

    Closed forms, checked against this function in the tests:
        parabolic: Delta = (a^2 + c^2) x / det(P)
        elliptic : Delta = -(a^2 + b^2 + c^2 + d^2) s / det(P)
    """
    if kind == "parabolic":
        u = Mat2(1, value, 0, 1)
    elif kind == "elliptic":
        if isinstance(value, tuple):
            c, s = value
        else:
            c, s = math.cos(value), math.sin(value)
        u = Mat2(c, -s, s, c)
    else:
        raise ValueError(f"kind must be 'parabolic' or 'elliptic', got {kind!r}")
    return (p @ u @ p.inverse()).delta()


# ----------------------------------------------------------------------
# exact linear algebra over Fractions (small dense systems only)

def exact_rref(rows):
    """Reduced row echelon form over Fraction.  Returns (rref, pivot_cols)."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m, pivots


def exact_rank(rows) -> int:
    return len(exact_rref(rows)[1])


def exact_nullspace(rows):
    """Basis of the right nullspace as tuples of Fractions."""
    if not rows:
        return []
    ncols = len(rows[0])
    rref, pivots = exact_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(tuple(v))
    return basis


def exact_solve(rows, rhs):
    """Solve A x = rhs over Fractions; returns one solution or None."""
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    ncols = len(rows[0])
    rref, pivots = exact_rref(aug)
    for row in rref:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc < ncols:
            x[pc] = rref[r][ncols]
    return tuple(x)


# ----------------------------------------------------------------------
# conjugator solving

@dataclass
class ConjugatorResult:
    """Joint solution data for G A_i = B_i G over all supplied pairs.

    det_sign is +1 or -1 for an invertible candidate scaled to |det| = 1,
    and 0 when every real solution is singular (or none exists).
    """

    nullspace_dim: int
    candidate: Mat2 | None
    det_sign: int
    residual: float

    @property
    def det_sign_label(self) -> str:
        return {1: "+1", -1: "-1", 0: "singular"}[self.det_sign]


def _intertwiner_rows(pairs):
    """Rows of the linear system (G A - B G) = 0 in g = (g11, g12, g21, g22)."""
    rows = []
    for a, b in pairs:
        aa = ((a.a, a.b), (a.c, a.d))
        bb = ((b.a, b.b), (b.c, b.d))
        for i in range(2):
            for j in range(2):
                row = [0, 0, 0, 0]
                for l in range(2):
                    row[2 * i + l] += aa[l][j]
                for k in range(2):
                    row[2 * k + j] -= bb[i][k]
                rows.append(row)
    return rows


def _vec_to_mat(v, exact: bool) -> Mat2:
    if exact:
        return Mat2(*v)
    return Mat2(float(v[0]), float(v[1]), float(v[2]), float(v[3]))


def _det_bilinear(x: Mat2, y: Mat2):
    """B(X, Y) with B(X, X) = det X; polarization of the determinant form."""
    return ((x + y).det() - x.det() - y.det()) / 2


def _residual(g: Mat2, pairs) -> float:
    scale = g.frobenius()
    if scale == 0:
        return 0.0
    worst = 0.0
    for a, b in pairs:
        r = (g @ a - b @ g).frobenius()
        worst = max(worst, r)
    return worst / scale


def solve_conjugator(pairs, tol: float = 1e-8, det_tol: float = 1e-14) -> ConjugatorResult:
    """Solve G A_i = B_i G jointly over all pairs.

    Exact pairs go through Fraction elimination, float pairs through an SVD
    with nullspace threshold tol (relative to the largest singular value).
    The candidate is scaled to |det| = 1 when an invertible solution exists;
    when the whole solution space consists of singular matrices the result
    reports det_sign = 0 and an unscaled witness.
    """
    if not pairs:
        raise ValueError("at least one pair is required")
    exact = all(a.exact and b.exact for a, b in pairs)
    rows = _intertwiner_rows(pairs)
    if exact:
        basis = [_vec_to_mat(v, True) for v in exact_nullspace(rows)]
    else:
        arr = np.array([[float(x) for x in row] for row in rows], dtype=float)
        _, sig, vt = np.linalg.svd(arr)
        cutoff = tol * (sig[0] if len(sig) and sig[0] > 0 else 1.0)
        null = [vt[i] for i in range(4) if i >= len(sig) or sig[i] <= cutoff]
        basis = [_vec_to_mat(v, False) for v in null]
    dim = len(basis)
    if dim == 0:
        return ConjugatorResult(0, None, 0, 0.0)

    def finish(g: Mat2) -> ConjugatorResult:
        det = g.det()
        if (exact and det == 0) or (not exact and abs(float(det)) <= det_tol * max(1.0, g.frobenius() ** 2)):
            return ConjugatorResult(dim, g, 0, _residual(g, pairs))
        s = 1 if det > 0 else -1
        if exact:
            root = _exact_sqrt(abs(Fraction(det)))
            if root is not None:
                scaled = g.scale(1 / root)
                return ConjugatorResult(dim, scaled, s, _residual(scaled, pairs))
        scaled = g.scale(1.0 / math.sqrt(abs(float(det))))
        return ConjugatorResult(dim, scaled, s, _residual(scaled, pairs))

    if dim == 1:
        return finish(basis[0])

    # Higher-dimensional solution space.  Prefer the identity when it lies in
    # the span (centralizer-style inputs); otherwise hunt for an invertible
    # combination, and report singular only if the det form vanishes on the
    # whole space.
    ident = Mat2.identity(exact)
    if exact:
        cols = [[g.a for g in basis], [g.b for g in basis], [g.c for g in basis], [g.d for g in basis]]
        combo = exact_solve(cols, [1, 0, 0, 1])
        if combo is not None:
            return finish(ident)
    else:
        coords = np.array([[float(x) for x in g.entries()] for g in basis])
        proj = coords.T @ (coords @ np.array([1.0, 0.0, 0.0, 1.0]))
        if np.linalg.norm(proj) > 0.5:
            g = _vec_to_mat(proj / np.linalg.norm(proj), False)
            if abs(g.det()) > det_tol:
                return finish(g)
    candidates = list(basis)
    for i in range(dim):
        for j in range(i + 1, dim):
            candidates.append(basis[i] + basis[j])
            candidates.append(basis[i] - basis[j])
    best = max(candidates, key=lambda g: abs(float(g.det())))
    if (exact and best.det() == 0) or (not exact and abs(float(best.det())) <= det_tol):
        form_zero = all(
            _det_bilinear(basis[i], basis[j]) == 0 if exact else abs(float(_det_bilinear(basis[i], basis[j]))) <= det_tol
            for i in range(dim)
            for j in range(i, dim)
        )
        if form_zero:
            return ConjugatorResult(dim, basis[0], 0, _residual(basis[0], pairs))
    return finish(best)


# ----------------------------------------------------------------------
# eigendata

def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _exact_sqrt(f: Fraction):
    f = Fraction(f)
    if f < 0:
        return None
    if _is_square(f.numerator) and _is_square(f.denominator):
        return Fraction(math.isqrt(f.numerator), math.isqrt(f.denominator))
    return None


def _canon_exact_dir(v):
    """Scale an exact 2-vector to coprime integers, first nonzero positive."""
    x, y = Fraction(v[0]), Fraction(v[1])
    den = math.lcm(x.denominator, y.denominator)
    xi, yi = x.numerator * (den // x.denominator), y.numerator * (den // y.denominator)
    g = math.gcd(xi, yi)
    if g:
        xi, yi = xi // g, yi // g
    if xi < 0 or (xi == 0 and yi < 0):
        xi, yi = -xi, -yi
    return (xi, yi)


def _canon_float_dir(x: float, y: float):
    n = math.hypot(x, y)
    if n == 0:
        raise ArithmeticError("zero eigenvector")
    x, y = x / n, y / n
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return (x, y)


def _eigvec(m: Mat2, lam, exact: bool):
    """Kernel vector of (M - lam I), picking the numerically fatter row."""
    r1 = (m.a - lam, m.b)
    r2 = (m.c, m.d - lam)
    v1 = (-r1[1], r1[0])
    v2 = (-r2[1], r2[0])
    if exact:
        v = v1 if (v1[0] != 0 or v1[1] != 0) else v2
        return _canon_exact_dir(v)
    n1 = math.hypot(float(r1[0]), float(r1[1]))
    n2 = math.hypot(float(r2[0]), float(r2[1]))
    v = v1 if n1 >= n2 else v2
    return _canon_float_dir(float(v[0]), float(v[1]))


def eigen_data(m: Mat2, tol: float = 1e-9):
    """Eigenvalue/direction pairs for non-elliptic determinant-1 matrices.

    Hyperbolic: two pairs, the eigenvalue of larger magnitude first.
    Parabolic: one pair (for +-identity the fixed direction is arbitrary and
    (1, 0) is returned).  Elliptic input raises ValueError.  Directions are
    canonical projective representatives: exact ones as coprime integer
    pairs, float ones as unit vectors, first nonzero component positive.
    """
    cls = classify(m, tol)
    if cls == MatClass.ELLIPTIC:
        raise ValueError("elliptic matrices have no real fixed direction")
    exact = m.exact
    tr = m.trace()
    if cls == MatClass.PARABOLIC:
        if exact:
            lam = Fraction(tr, 2)
            lam = int(lam) if lam.denominator == 1 else lam
        else:
            lam = 1.0 if float(tr) > 0 else -1.0
        shifted = m - Mat2.identity(exact).scale(lam)
        if (exact and all(x == 0 for x in shifted.entries())) or (not exact and shifted.frobenius() <= tol):
            return ((lam, (1, 0) if exact else (1.0, 0.0)),)
        return ((lam, _eigvec(m, lam, exact)),)
    if exact:
        disc = Fraction(tr) ** 2 - 4
        root = _exact_sqrt(disc)
        if root is not None:
            lam1 = (Fraction(tr) + root) / 2
            lam2 = (Fraction(tr) - root) / 2
            if abs(lam1) < abs(lam2):
                lam1, lam2 = lam2, lam1
            out = []
            for lam in (lam1, lam2):
                lam_n = int(lam) if lam.denominator == 1 else lam
                out.append((lam_n, _eigvec(m, lam, True)))
            return tuple(out)
        m = m.to_float()
    tr = float(m.trace())
    root = math.sqrt(tr * tr - 4.0)
    lam1, lam2 = (tr + root) / 2, (tr - root) / 2
    if abs(lam1) < abs(lam2):
        lam1, lam2 = lam2, lam1
    return ((lam1, _eigvec(m, lam1, False)), (lam2, _eigvec(m, lam2, False)))


# ----------------------------------------------------------------------
# circle lifts and translation numbers

BASE_DIRECTION = 0.5736470143025761  # fixed generic base angle in (0, pi)


def _dir_angle(x: float, y: float) -> float:
    """Angle in [0, pi) of the direction [x : y]."""
    t = math.atan2(y, x)
    if t < 0.0:
        t += math.pi
    if t >= math.pi:
        t -= math.pi
    return t


def _image(mat, theta: float):
    """(angle, norm) of M applied to the unit vector at angle theta."""
    a, b, c, d = mat
    cs, sn = math.cos(theta), math.sin(theta)
    x = a * cs + b * sn
    y = c * cs + d * sn
    n = math.hypot(x, y)
    if n == 0.0:
        raise ArithmeticError("direction collapsed; matrix is singular")
    return _dir_angle(x, y), n


def _wrap_half(delta: float) -> float:
    """Representative of delta modulo pi inside [-pi/2, pi/2)."""
    return (delta + math.pi / 2) % math.pi - math.pi / 2


def _traverse(mat, th_a: float, al_a: float, th_b: float, depth: int = 0) -> float:
    """Lift value at th_b of the circle map of `mat`, given lift al_a at th_a.

    Bisects until the local contraction bound certifies that the nearest
    representative is the continuous one.  The map's derivative is
    1 / |M v(theta)|^2, so a segment is safe once its width is small against
    the squared image norms at its ends (with a Lipschitz safety margin).
    """
    width = abs(th_b - th_a)
    if width == 0.0:
        return al_a
    raw_b, n_b = _image(mat, th_b)
    _, n_a = _image(mat, th_a)
    a, b, c, d = mat
    op_norm = math.sqrt(a * a + b * b + c * c + d * d)
    m_eff = min(n_a, n_b) - op_norm * width
    if m_eff > 0.0 and width / (m_eff * m_eff) <= 0.5:
        return al_a + _wrap_half(raw_b - al_a)
    if depth > 64:
        raise ContinuityError("could not certify a continuous lift segment")
    mid = (th_a + th_b) / 2
    al_mid = _traverse(mat, th_a, al_a, mid, depth + 1)
    return _traverse(mat, mid, al_mid, th_b, depth + 1)


def _advance_track(m_from, m_to, theta0: float, alpha: float, depth: int = 0) -> float:
    """Continue the lifted angle of M v(theta0) from matrix m_from to m_to."""
    cs, sn = math.cos(theta0), math.sin(theta0)

    def apply(mat):
        x = mat[0] * cs + mat[1] * sn
        y = mat[2] * cs + mat[3] * sn
        return x, y

    xa, ya = apply(m_from)
    xb, yb = apply(m_to)
    na, nb = math.hypot(xa, ya), math.hypot(xb, yb)
    dv = math.hypot(xb - xa, yb - ya)
    if nb == 0.0:
        raise ContinuityError("image direction collapsed along the path")
    if dv < 0.5 * min(na, nb):
        return alpha + _wrap_half(_dir_angle(xb, yb) - alpha)
    if depth > 64:
        raise ContinuityError("matrix path cannot be lifted continuously")
    mid = tuple((p + q) / 2 for p, q in zip(m_from, m_to))
    alpha_mid = _advance_track(m_from, mid, theta0, alpha, depth + 1)
    return _advance_track(mid, m_to, theta0, alpha_mid, depth + 1)


def _as_tuple(m: Mat2):
    return (float(m.a), float(m.b), float(m.c), float(m.d))


@dataclass
class LiftedElement:
    """Endpoint of a lifted matrix path.

    base is the endpoint matrix; angle_track is the continuously tracked
    lifted angle of base applied to the base direction, which pins down a
    unique lift of the induced circle map.
    """

    base: Mat2
    base_theta: float
    angle_track: float

    def lift_at(self, theta: float) -> float:
        """Value at theta of the lift determined by the tracked anchor."""
        return _traverse(_as_tuple(self.base), self.base_theta, self.angle_track, theta)

    def _near_central(self, tol: float = 1e-6):
        ident = Mat2.identity(False)
        base = self.base.to_float()
        if frobenius_distance(base, ident) <= tol:
            return True
        if frobenius_distance(base, ident.scale(-1.0)) <= tol:
            return True
        return False

    def translation_number(self, tol: float = 1e-9) -> "PathTranslation":
        """Translation number of the lift, in units of pi.

        Hyperbolic and parabolic endpoints give an exact integer read off at
        a fixed direction of the circle map; elliptic endpoints rotate with
        no fixed direction, so the value is a non-integer real number and the
        result is flagged as elliptic.
        """
        if self._near_central():
            k = (self.angle_track - self.base_theta) / math.pi
            return PathTranslation(float(round(k)), False)
        cls = classify(self.base, tol)
        if cls == MatClass.ELLIPTIC:
            return PathTranslation(self._elliptic_rotation_number(), True)
        lam, (vx, vy) = eigen_data(self.base, tol)[0]
        th_star = _dir_angle(float(vx), float(vy))
        # place the fixed direction's lift within half a turn of the anchor
        th_star += math.pi * math.floor((self.base_theta - th_star) / math.pi + 0.5)
        k_float = (self.lift_at(th_star) - th_star) / math.pi
        k = round(k_float)
        if abs(k_float - k) > 1e-6:
            raise ArithmeticError(f"translation number {k_float} is not close to an integer")
        return PathTranslation(float(k), False)

    def _elliptic_rotation_number(self) -> float:
        """Rotation number of an elliptic lift, in units of pi.

        An elliptic matrix with trace 2 cos(phi0), phi0 in (0, pi), is
        conjugate by a positive-determinant matrix to a rotation by +-phi0;
        writing the eigenvector for e^{i phi0} as u + iw, the sense is
        positive exactly when det[u w] < 0, which reduces to b < 0 (or c > 0
        when b = 0).  The integer part is pinned by the tracked anchor: all
        displacements of a fixed-point-free circle map lie in one open length
        pi band together with the translation number.
        """
        base = self.base.to_float()
        phi0 = math.acos(max(-1.0, min(1.0, base.trace() / 2.0)))
        positive = base.b < 0.0 or (base.b == 0.0 and base.c > 0.0)
        frac = phi0 / math.pi if positive else 1.0 - phi0 / math.pi
        band = math.floor((self.angle_track - self.base_theta) / math.pi)
        return band + frac

    def translation_number_by_iteration(self, iterations: int = 1 << 16) -> float:
        """Iterate-limit evaluation: displacement between iterates n and 2n
        of the lifted map, divided by n pi.

        The limit does not depend on the starting direction; for non-elliptic
        endpoints a start near the attracting fixed direction is used so the
        transient is negligible.
        """
        mat = _as_tuple(self.base)
        p = self.base_theta
        fp = self.angle_track  # lift value F(p)
        if not self._near_central():
            try:
                _, (vx, vy) = eigen_data(self.base)[0]
                start = _dir_angle(float(vx), float(vy)) + 0.05
                fp = _traverse(mat, p, fp, start)
                p = start
            except ValueError:
                pass  # elliptic: any start works
        half = p
        # invariant: fp = F(p); each pass advances (p, F(p)) -> (F(p), F(F(p)))
        for i in range(2 * iterations):
            if i == iterations:
                half = p
            nxt = fp
            fp = _traverse(mat, p, fp, nxt)
            p = nxt
        return (p - half) / (math.pi * iterations)


class PathTranslation(NamedTuple):
    value: float
    elliptic: bool


def lift_along_path(mats, base_theta: float = BASE_DIRECTION, max_step: float = 0.5) -> LiftedElement:
    """Track the circle action of a matrix path and lift its endpoint.

    The path should start at the identity (or at a matrix whose lift is
    declared to be translation-free); consecutive matrices must be closer
    than max_step in Frobenius distance.
    """
    if not mats:
        raise ValueError("empty path")
    tuples = [_as_tuple(m) for m in mats]
    first = tuples[0]
    alpha, _ = _image(first, base_theta)
    alpha += math.pi * round((base_theta - alpha) / math.pi)
    for prev, cur in zip(tuples, tuples[1:]):
        if frobenius_distance(Mat2(*prev), Mat2(*cur)) >= max_step:
            raise ContinuityError("consecutive path matrices are too far apart")
        alpha = _advance_track(prev, cur, base_theta, alpha)
    return LiftedElement(mats[-1] if isinstance(mats[-1], Mat2) else Mat2(*tuples[-1]), base_theta, alpha)


def translation_number_along_path(mats, base_theta: float = BASE_DIRECTION) -> PathTranslation:
    """Translation number of the endpoint of a lifted matrix path."""
    return lift_along_path(mats, base_theta).translation_number()


def translation_numbers_along_arc(mats, base_theta: float = BASE_DIRECTION):
    """Translation number at every prefix of a matrix path (one shared track)."""
    if not mats:
        return []
    tuples = [_as_tuple(m) for m in mats]
    alpha, _ = _image(tuples[0], base_theta)
    alpha += math.pi * round((base_theta - alpha) / math.pi)
    out = [LiftedElement(Mat2(*tuples[0]), base_theta, alpha).translation_number()]
    for prev, cur in zip(tuples, tuples[1:]):
        alpha = _advance_track(prev, cur, base_theta, alpha)
        out.append(LiftedElement(Mat2(*cur), base_theta, alpha).translation_number())
    return out
