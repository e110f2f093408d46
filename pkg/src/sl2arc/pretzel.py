"""The (-3, 3, 2n+1) pretzel family and its exact verification report.

For each n >= 1 the family instance packages:

  * four free-group words m1 = a^{n+1}bab, m2 = a^{n+1}ba, l1 = b^-1 a b,
    l2 = b^-1 a b a, generating the two punctured-torus peripheral pairs
    that an HNN stable letter must conjugate onto each other;
  * the explicit representation rho_n(a) = [[-1,1],[0,-1]],
    rho_n(b) = [[2n+1,n],[2,1]] with character chi_n = (-2, 2n+2, -2n);
  * the curve C_n inside character space cut out by the three equations
    tr(m1) = tr(m2), tr(l1) = tr(l2), tr(m1 l1) = tr(m2 l2).

verify_lemma checks, in exact rational arithmetic, that the representation
sits on C_n exactly as the closed-form analysis predicts: matrix images match
their closed forms, the two meridian images are conjugate parabolics with
determinant +1 conjugator, the longitude pair is conjugate only through
determinant -1, the curve has a rank-2 Jacobian at chi_n with the stated
integral kernel vector, tr(m1) and tr(m2) are local coordinates, and the
Hessian of the longitude trace is nonzero on the kernel direction.

One closed form is corrected here: the (2,1) entry of rho_n(m1 l1) must be
(-1)^n (4 - 4n) for the matrix to have determinant 1 (and to equal the
actual product); the variant with entry (-1)^n (-4n) fails both checks for
every n and appears to be a transcription slip.  The test suite pins the
corrected form against direct matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .sl2 import Conjugacy, Mat2, MatClass, classify, exact_rank, same_trace_conjugacy
from .tracepoly import TracePolynomial, trace_polynomial
from .words import Word, commutator, evaluate, parse_word

DEFAULT_N_CAP = 10_000


@dataclass(frozen=True)
class FamilyInstance:
    """Words, representation, limiting character and curve for one n."""

    n: int
    m1: Word
    m2: Word
    l1: Word
    l2: Word
    longitude: Word
    rho_a: Mat2
    rho_b: Mat2
    chi: tuple
    curve_eqs: tuple

    @property
    def m1l1(self) -> Word:
        return self.m1 * self.l1

    @property
    def m2l2(self) -> Word:
        return self.m2 * self.l2

    def image(self, word: Word) -> Mat2:
        """Image of a word under rho_n (exact)."""
        return evaluate(word, self.rho_a, self.rho_b)


def make_family(n: int, cap: int = DEFAULT_N_CAP) -> FamilyInstance:
    """Build the family instance for n >= 1.

    n is capped (default 10^4) to bound trace-polynomial size; pass a larger
    cap explicitly to override.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > cap:
        raise ValueError(f"n = {n} exceeds the cap {cap}; pass cap explicitly to override")
    m1 = parse_word(f"a^{n + 1} b a b")
    m2 = parse_word(f"a^{n + 1} b a")
    l1 = parse_word("b^-1 a b")
    l2 = parse_word("b^-1 a b a")
    longitude = commutator(m1, l1)
    rho_a = Mat2(-1, 1, 0, -1)
    rho_b = Mat2(2 * n + 1, n, 2, 1)
    chi = (-2, 2 * n + 2, -2 * n)
    curve_eqs = (
        trace_polynomial(m1) - trace_polynomial(m2),
        trace_polynomial(l1) - trace_polynomial(l2),
        trace_polynomial(m1 * l1) - trace_polynomial(m2 * l2),
    )
    return FamilyInstance(n, m1, m2, l1, l2, longitude, rho_a, rho_b, chi, curve_eqs)


# ----------------------------------------------------------------------
# closed forms (all verified against direct exact computation by the tests)

def image_closed_forms(n: int) -> dict:
    """Closed-form images of the six words under rho_n."""
    s = (-1) ** n
    return {
        "m1": Mat2(s * (-2 * n - 1), s * (-n), s * 4 * n, s * (2 * n - 1)),
        "m2": Mat2(-s, 0, 2 * s, -s),
        "l1": Mat2(1, 1, -4, -3),
        "l2": Mat2(-1, 0, 4, -1),
        "m1l1": Mat2(s * (2 * n - 1), s * (n - 1), s * (4 - 4 * n), s * (3 - 2 * n)),
        "m2l2": Mat2(s, 0, -6 * s, s),
    }


def jacobian_closed_form(n: int):
    """Closed-form Jacobian of the three curve equations at chi_n."""
    sgn = (-1) ** (n + 1)
    row1 = tuple(
        sgn * v
        for v in (
            Fraction(4 * n ** 4 + 4 * n ** 3 - 7 * n ** 2 - 4 * n, 3),
            Fraction(2 * n ** 2 - n - 1),
            Fraction(2 * n ** 2 + n - 2),
        )
    )
    row2 = (Fraction((2 * n + 1) ** 2), Fraction(4), Fraction(4))
    row3 = tuple(
        sgn * v
        for v in (
            Fraction(-4 * n ** 4 + 4 * n ** 3 + 43 * n ** 2 + 26 * n + 3, 3),
            Fraction(-2 * n ** 2 + 5 * n + 9),
            Fraction(-2 * n ** 2 + 3 * n + 14),
        )
    )
    return (row1, row2, row3)


def kernel_closed_form(n: int) -> tuple:
    """Integral kernel vector of the Jacobian at chi_n."""
    return (12, -(4 * n ** 3 + 12 * n ** 2 + 17 * n + 6), 4 * n ** 3 + 5 * n + 3)


def gradient_m2_closed_form(n: int) -> tuple:
    """Closed-form gradient of tr(m2) at chi_n."""
    sgn = (-1) ** (n + 1)
    return (
        sgn * Fraction(2 * n * (n + 1) * (n + 2), 3),
        sgn * Fraction(n + 1),
        sgn * Fraction(n + 2),
    )


def hessian_closed_form(n: int):
    """Closed-form Hessian of tr([m1, l1]) at chi_n (a rank-one form)."""
    g = (Fraction(n * (n + 1) * (2 * n + 1), 3), Fraction(n), Fraction(n + 1))
    return tuple(tuple(8 * gi * gj for gj in g) for gi in g)


# ----------------------------------------------------------------------
# exact evaluation helpers

def _exact_point(point):
    return tuple(Fraction(c) for c in point)


def gradient_at(poly: TracePolynomial, point) -> tuple:
    """Exact gradient of a polynomial at a rational point."""
    pt = _exact_point(point)
    return tuple(g.evaluate(*pt) for g in poly.gradient())


def hessian_at(poly: TracePolynomial, point):
    """Exact Hessian of a polynomial at a rational point."""
    pt = _exact_point(point)
    return tuple(tuple(h.evaluate(*pt) for h in row) for row in poly.hessian())


def _det3(m) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def outside_row_span(rows, vector) -> bool:
    """True when vector is not a rational combination of the rows."""
    return exact_rank(list(rows) + [list(vector)]) > exact_rank(rows)


# ----------------------------------------------------------------------
# verification report

@dataclass(frozen=True)
class Assertion:
    name: str
    holds: bool
    witness: str

    def kv_line(self) -> str:
        return f"{self.name} {'PASS' if self.holds else 'FAIL'} {self.witness}"


@dataclass
class LemmaReport:
    """Per-assertion verdicts with exact witnesses for one family instance."""

    n: int
    assertions: list = field(default_factory=list)
    images: dict = field(default_factory=dict)
    conjugacy: dict = field(default_factory=dict)
    jacobian: tuple = ()
    rank: int = 0
    minor: Fraction = Fraction(0)
    kernel: tuple = ()
    local_coordinates: dict = field(default_factory=dict)
    hessian: tuple = ()
    hessian_on_kernel: Fraction = Fraction(0)

    @property
    def all_pass(self) -> bool:
        return all(a.holds for a in self.assertions)

    def add(self, name: str, holds: bool, witness: str = ""):
        self.assertions.append(Assertion(name, bool(holds), witness))

    def kv_lines(self) -> list:
        return [a.kv_line().rstrip() for a in self.assertions]

    def text(self) -> str:
        lines = [f"family n={self.n}: {'PASS' if self.all_pass else 'FAIL'}"]
        for a in self.assertions:
            mark = "PASS" if a.holds else "FAIL"
            suffix = f"  [{a.witness}]" if a.witness else ""
            lines.append(f"  {mark}  {a.name}{suffix}")
        return "\n".join(lines)


def _fmt_matrix(m: Mat2) -> str:
    return str(m)


def verify_lemma(n: int, exact: bool = True) -> LemmaReport:
    """Check every assertion about the family instance at n.

    With exact=True (the default) all arithmetic is rational and comparisons
    are zero-tolerance; with exact=False the same assertions are evaluated in
    floating point at tolerance 1e-9.  Failures become FAIL entries in the
    report rather than exceptions.
    """
    if not exact:
        return _verify_lemma_float(n)
    fam = make_family(n)
    rep = LemmaReport(n=n)
    closed = image_closed_forms(n)
    words = {
        "m1": fam.m1,
        "m2": fam.m2,
        "l1": fam.l1,
        "l2": fam.l2,
        "m1l1": fam.m1l1,
        "m2l2": fam.m2l2,
    }
    images = {}
    for name, word in words.items():
        got = fam.image(word)
        images[name] = got
        rep.images[name] = (got, closed[name])
        rep.add(
            f"image_{name}_matches_closed_form",
            got == closed[name],
            f"computed {_fmt_matrix(got)}",
        )

    for name in ("m1", "m2"):
        cls = classify(images[name])
        rep.add(f"image_{name}_parabolic", cls == MatClass.PARABOLIC, f"trace {images[name].trace()}")

    verdict_m = same_trace_conjugacy(images["m1"], images["m2"])
    rep.conjugacy["meridian_pair"] = verdict_m
    rep.add(
        "meridian_pair_conjugate_det_plus",
        verdict_m == Conjugacy.CONJUGATE_DET_PLUS,
        verdict_m.value,
    )
    verdict_l = same_trace_conjugacy(images["l1"], images["l2"])
    rep.conjugacy["longitude_pair"] = verdict_l
    rep.add(
        "longitude_pair_conjugate_det_minus",
        verdict_l == Conjugacy.CONJUGATE_DET_MINUS,
        verdict_l.value,
    )
    d1, d2 = images["l1"].delta(), images["l2"].delta()
    rep.add("longitude_pair_delta_signs_opposite", d1 * d2 < 0, f"deltas {d1}, {d2}")

    got_chi = (fam.rho_a.trace(), fam.rho_b.trace(), (fam.rho_a @ fam.rho_b).trace())
    rep.add("character_equals_chi", got_chi == fam.chi, f"character {got_chi}")

    residues = tuple(eq.evaluate(*fam.chi) for eq in fam.curve_eqs)
    rep.add("curve_equations_vanish_at_chi", all(r == 0 for r in residues), f"residues {residues}")

    jac = tuple(gradient_at(eq, fam.chi) for eq in fam.curve_eqs)
    rep.jacobian = jac
    rep.add(
        "jacobian_matches_closed_form",
        jac == jacobian_closed_form(n),
        f"rows {tuple(tuple(str(x) for x in r) for r in jac)}",
    )
    det = _det3(jac)
    rep.add("jacobian_determinant_zero", det == 0, f"det {det}")
    minor = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    rep.minor = minor
    rep.add("jacobian_top_left_minor_nonzero", minor != 0, f"minor {minor}")
    rep.rank = exact_rank([list(r) for r in jac])
    rep.add("jacobian_rank_two", rep.rank == 2, f"rank {rep.rank}")

    kern = kernel_closed_form(n)
    rep.kernel = kern
    products = tuple(sum(r * c for r, c in zip(row, kern)) for row in jac)
    rep.add(
        "kernel_vector_annihilated",
        all(p == 0 for p in products),
        f"products {tuple(str(p) for p in products)}",
    )

    grad_m2 = gradient_at(trace_polynomial(fam.m2), fam.chi)
    rep.add(
        "gradient_tr_m2_matches_closed_form",
        grad_m2 == gradient_m2_closed_form(n),
        f"gradient {tuple(str(x) for x in grad_m2)}",
    )
    rows = [list(r) for r in jac]
    out_m2 = outside_row_span(rows, grad_m2)
    rep.local_coordinates["tr_m2"] = out_m2
    rep.add("tr_m2_local_coordinate", out_m2, "gradient outside Jacobian row span" if out_m2 else "gradient inside row span")
    grad_m1 = gradient_at(trace_polynomial(fam.m1), fam.chi)
    out_m1 = outside_row_span(rows, grad_m1)
    rep.local_coordinates["tr_m1"] = out_m1
    rep.add("tr_m1_local_coordinate", out_m1, "gradient outside Jacobian row span" if out_m1 else "gradient inside row span")

    hess = hessian_at(trace_polynomial(fam.longitude), fam.chi)
    rep.hessian = hess
    rep.add(
        "hessian_matches_closed_form",
        hess == hessian_closed_form(n),
        f"rows {tuple(tuple(str(x) for x in r) for r in hess)}",
    )
    quad = sum(kern[i] * hess[i][j] * kern[j] for i in range(3) for j in range(3))
    rep.hessian_on_kernel = quad
    rep.add("hessian_nonzero_on_kernel", quad != 0, f"value {quad}")

    long_img = fam.image(fam.longitude)
    rep.add("longitude_image_identity", long_img == Mat2.identity(), f"image {_fmt_matrix(long_img)}")
    return rep


def _verify_lemma_float(n: int, tol: float = 1e-9) -> LemmaReport:
    """Floating-point twin of the exact suite: same assertion names, each
    comparison made on float data within tol."""
    import numpy as np

    fam = make_family(n)
    rep = LemmaReport(n=n)
    closed = image_closed_forms(n)

    def close_mats(p: Mat2, q: Mat2) -> bool:
        return max(abs(float(x) - float(y))
                   for x, y in zip(p.entries(), q.entries())) <= tol

    words = {"m1": fam.m1, "m2": fam.m2, "l1": fam.l1, "l2": fam.l2,
             "m1l1": fam.m1l1, "m2l2": fam.m2l2}
    images = {}
    for name, word in words.items():
        got = evaluate(word, fam.rho_a.to_float(), fam.rho_b.to_float())
        images[name] = got
        rep.images[name] = (got, closed[name])
        rep.add(f"image_{name}_matches_closed_form", close_mats(got, closed[name]),
                f"computed {_fmt_matrix(got)}")

    for name in ("m1", "m2"):
        cls = classify(images[name], tol=tol)
        rep.add(f"image_{name}_parabolic", cls == MatClass.PARABOLIC,
                f"trace {images[name].trace()}")

    verdict_m = same_trace_conjugacy(images["m1"], images["m2"], tol=tol)
    rep.conjugacy["meridian_pair"] = verdict_m
    rep.add("meridian_pair_conjugate_det_plus",
            verdict_m == Conjugacy.CONJUGATE_DET_PLUS, verdict_m.value)
    verdict_l = same_trace_conjugacy(images["l1"], images["l2"], tol=tol)
    rep.conjugacy["longitude_pair"] = verdict_l
    rep.add("longitude_pair_conjugate_det_minus",
            verdict_l == Conjugacy.CONJUGATE_DET_MINUS, verdict_l.value)
    d1, d2 = images["l1"].delta(), images["l2"].delta()
    rep.add("longitude_pair_delta_signs_opposite", d1 * d2 < 0, f"deltas {d1}, {d2}")

    ra, rb = fam.rho_a.to_float(), fam.rho_b.to_float()
    got_chi = (ra.trace(), rb.trace(), (ra @ rb).trace())
    chi_f = tuple(float(c) for c in fam.chi)
    rep.add("character_equals_chi",
            max(abs(g - c) for g, c in zip(got_chi, chi_f)) <= tol,
            f"character {got_chi}")

    residues = tuple(float(eq.evaluate(*got_chi)) for eq in fam.curve_eqs)
    rep.add("curve_equations_vanish_at_chi",
            all(abs(r) <= tol for r in residues), f"residues {residues}")

    jac = np.array([[float(g) for g in gradient_at(eq, fam.chi)]
                    for eq in fam.curve_eqs])
    jac_closed = np.array([[float(x) for x in row] for row in jacobian_closed_form(n)])
    rep.jacobian = tuple(tuple(row) for row in jac)
    rep.add("jacobian_matches_closed_form",
            float(np.max(np.abs(jac - jac_closed))) <= tol,
            f"rows {rep.jacobian}")
    det = float(np.linalg.det(jac))
    rep.add("jacobian_determinant_zero", abs(det) <= tol, f"det {det}")
    minor = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
    rep.minor = minor
    rep.add("jacobian_top_left_minor_nonzero", abs(minor) > tol, f"minor {minor}")
    sig = np.linalg.svd(jac, compute_uv=False)
    rank = int(np.sum(sig > tol * sig[0])) if sig[0] > 0 else 0
    rep.rank = rank
    rep.add("jacobian_rank_two", rank == 2, f"rank {rank}")

    kern = np.array([float(k) for k in kernel_closed_form(n)])
    rep.kernel = tuple(kern)
    products = jac @ kern
    scale = max(1.0, float(np.max(np.abs(jac))) * float(np.max(np.abs(kern))))
    rep.add("kernel_vector_annihilated",
            float(np.max(np.abs(products))) <= tol * scale,
            f"products {tuple(products)}")

    grad_m2 = np.array([float(g) for g in
                        gradient_at(trace_polynomial(fam.m2), fam.chi)])
    grad_closed = np.array([float(g) for g in gradient_m2_closed_form(n)])
    rep.add("gradient_tr_m2_matches_closed_form",
            float(np.max(np.abs(grad_m2 - grad_closed))) <= tol,
            f"gradient {tuple(grad_m2)}")

    def outside_span_float(vector) -> bool:
        rows = jac[:2]
        sol, *_ = np.linalg.lstsq(rows.T, vector, rcond=None)
        return float(np.max(np.abs(rows.T @ sol - vector))) > tol

    out_m2 = outside_span_float(grad_m2)
    rep.local_coordinates["tr_m2"] = out_m2
    rep.add("tr_m2_local_coordinate", out_m2,
            "gradient outside Jacobian row span" if out_m2 else "gradient inside row span")
    grad_m1 = np.array([float(g) for g in
                        gradient_at(trace_polynomial(fam.m1), fam.chi)])
    out_m1 = outside_span_float(grad_m1)
    rep.local_coordinates["tr_m1"] = out_m1
    rep.add("tr_m1_local_coordinate", out_m1,
            "gradient outside Jacobian row span" if out_m1 else "gradient inside row span")

    hess = np.array([[float(x) for x in row]
                     for row in hessian_at(trace_polynomial(fam.longitude), fam.chi)])
    hess_closed = np.array([[float(x) for x in row] for row in hessian_closed_form(n)])
    rep.hessian = tuple(tuple(row) for row in hess)
    rep.add("hessian_matches_closed_form",
            float(np.max(np.abs(hess - hess_closed))) <= tol, "rows compared in float")
    quad = float(kern @ hess @ kern)
    rep.hessian_on_kernel = quad
    rep.add("hessian_nonzero_on_kernel", abs(quad) > tol, f"value {quad}")

    long_img = evaluate(fam.longitude, ra, rb)
    rep.add("longitude_image_identity",
            close_mats(long_img, Mat2.identity(exact=False)),
            f"image {_fmt_matrix(long_img)}")
    return rep


# ----------------------------------------------------------------------
# two-bridge style presentation text for general odd pretzel parameters

@dataclass(frozen=True)
class LinPresentation:
    """Two relator strings over {a, b, t} for parameters (p, q, r)."""

    p: int
    q: int
    r: int
    relators: tuple

    def parsed_sides(self):
        """Each relator as a (left word, right word) pair over {a, b, t}."""
        out = []
        for rel in self.relators:
            lhs, rhs = rel.split(" = ")
            out.append(
                (
                    parse_word(lhs, generators=("a", "b", "t")),
                    parse_word(rhs, generators=("a", "b", "t")),
                )
            )
        return tuple(out)


def _atom(base: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return base
    return f"{base}^{e}"


def _join(atoms) -> str:
    return " ".join(a for a in atoms if a)


def lin_presentation(p: int, q: int, r: int) -> LinPresentation:
    """Relator text for the genus-one spliced presentation at (p, q, r):

        t a^{r+1} (ba)^q b t^-1 = a^{r+1} (ba)^q
        t b^{p+1} (ab)^q t^-1  = b^{p+1} (ab)^q a

    Exponent-1 atoms print bare and exponent-0 atoms are dropped.
    """
    rel1 = (
        _join(["t", _atom("a", r + 1), _atom("(ba)", q), "b", "t^-1"])
        + " = "
        + (_join([_atom("a", r + 1), _atom("(ba)", q)]) or "")
    )
    rel2 = (
        _join(["t", _atom("b", p + 1), _atom("(ab)", q), "t^-1"])
        + " = "
        + _join([_atom("b", p + 1), _atom("(ab)", q), "a"])
    )
    return LinPresentation(p, q, r, (rel1, rel2))
