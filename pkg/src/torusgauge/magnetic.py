"""Line bundles on T^d as Z^d cocycles, magnetic translation sections, and the
extension of the translation group by periodic gauge transformations.

A line bundle is presented by exponents phi_i of the transition functions
f_i = exp(i*phi_i) for i in Z^d, stored on the generators and synthesized for
general i along a fixed axis-ordered word; any two synthesis orders differ by
the (verified) cocycle slack in 2*pi*Z, which exponential equality absorbs.
A connection is a global 1-form A with d(phi_i) = A - A(. + i), and the
curvature dA descends to the torus automatically.

Conventions, fixed once and used everywhere:

  * translate(f, v) is the shifted function x -> f(x - v); pullbacks along
    the deck translation x -> x + i are therefore translate(., -i);
  * the section at translation v is s_A(v) = exp(-i * int over the segment
    [x - v, x] of A), a function of the base point x;
  * operators compose as P(v) psi = s_A(v) . (psi shifted by v), giving
    P(v) P(v') = c(v, v') P(v + v') with c = two_cocycle.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .errors import DimensionError, PathError, TorusGaugeError
from .forms import AffineSimplex, Form, PLPath, integrate_path, integrate_simplex
from .polytrig import PolyTrig, U1Function, constant_mod_free, translate
from .reports import CheckReport, phase_item
from .scalar import DEFAULT_TOL, Scalar
from .vectors import as_vec, basis_vec, vadd, vneg, vzero

GAUGE_NOTE = (
    "connection identities are invariant under adding a constant 1-form to A"
    " (gauge freedom); constant shifts are accepted"
)


def _vec_label(*vecs):
    return "; ".join("(" + ",".join(str(x) for x in v) + ")" for v in vecs)


class LineData:
    """Z^d-equivariant presentation of a line bundle on T^d.

    generators: map 1-based axis -> exponent of the transition function for
    the basis translation e_axis (missing axes mean exponent 0).
    connection: optional 1-form A.
    """

    def __init__(self, d, generators, connection=None):
        self.d = d
        self.generators = {}
        for a, f in generators.items():
            if not 1 <= a <= d:
                raise DimensionError(f"generator axis {a} out of range")
            if f.dim != d:
                raise DimensionError("generator exponent has wrong dimension")
            self.generators[a] = f
        if connection is not None and (connection.dim != d or connection.degree != 1):
            raise DimensionError("connection must be a 1-form on the same space")
        self.connection = connection

    # -- cocycle synthesis ---------------------------------------------------

    def gen(self, axis):
        return self.generators.get(axis, PolyTrig.zero(self.d))

    def phi(self, i):
        """Exponent of f_i for arbitrary i in Z^d (axis-ordered word synthesis)."""
        i = tuple(int(x) for x in i)
        if len(i) != self.d:
            raise DimensionError("translation vector has wrong length")
        acc = PolyTrig.zero(self.d)
        pos = vzero(self.d)
        for a in range(1, self.d + 1):
            steps = i[a - 1]
            if steps == 0:
                continue
            e = basis_vec(self.d, a)
            if steps > 0:
                step_phi, step_vec = self.gen(a), e
            else:
                step_phi, step_vec = -translate(self.gen(a), e), vneg(e)
            for _ in range(abs(steps)):
                # phi_{pos + s}(x) = phi_pos(x) + phi_s(x + pos)
                acc = acc + translate(step_phi, vneg(pos))
                pos = vadd(pos, step_vec)
        return acc

    def require_connection(self):
        if self.connection is None:
            raise TorusGaugeError("this operation needs a connection 1-form")
        return self.connection

    def curvature(self):
        return self.require_connection().d()


def check_line_cocycle(line, pairs, tol=DEFAULT_TOL):
    """Verify phi_i(x) + phi_j(x + i) = phi_{i+j}(x) mod 2*pi*Z per pair."""
    report = CheckReport("translation_cocycle")
    for i, j in pairs:
        i = tuple(int(x) for x in i)
        j = tuple(int(x) for x in j)
        slack = (
            line.phi(i)
            + translate(line.phi(j), vneg(as_vec(i)))
            - line.phi(tuple(a + b for a, b in zip(i, j)))
        )
        phase_item(report, _vec_label(i, j), constant_mod_free(slack, tol), tol)
    return report


def check_connection(line, tol=DEFAULT_TOL):
    """Verify d(phi_i) = A - A(. + i) on generators; also that dA descends."""
    A = line.require_connection()
    report = CheckReport("connection_compatibility")
    report.notes.append(GAUGE_NOTE)
    for a in range(1, line.d + 1):
        e = basis_vec(line.d, a)
        lhs = Form.one_form(
            line.d, {b: line.gen(a).partial(b) for b in range(1, line.d + 1)}
        )
        rhs = A - A.translate(vneg(e))
        report.add(f"axis {a}", (lhs - rhs).is_zero(tol))
    B = A.d()
    for a in range(1, line.d + 1):
        e = basis_vec(line.d, a)
        report.add(
            f"curvature descends along axis {a}",
            (B.translate(vneg(e)) - B).is_zero(tol),
        )
    return report, B


def translation_section(line, v):
    """s_A(v) = exp(-i * integral of A over the segment from x - v to x)."""
    A = line.require_connection()
    seg = AffineSimplex.from_edges([as_vec(v)])
    return U1Function(-integrate_simplex(A, seg))


def check_section_membership(line, v, tol=DEFAULT_TOL):
    """Quasi-periodicity of the section: s(v)(x+i) = f_i(x) f_i(x-v)^{-1} s(v)(x)."""
    v = as_vec(v)
    theta = translation_section(line, v).exponent
    report = CheckReport("section_quasiperiodicity")
    for a in range(1, line.d + 1):
        e = basis_vec(line.d, a)
        phi = line.gen(a)
        slack = translate(theta, vneg(e)) - theta - phi + translate(phi, v)
        phase_item(report, f"axis {a}", constant_mod_free(slack, tol), tol)
    return report


def two_cocycle(line, v, vp):
    """The twisting phase c(v, v') with exponent -int over Delta^2(x; v', v) of dA."""
    B = line.curvature()
    tri = AffineSimplex.from_edges([as_vec(vp), as_vec(v)])
    return U1Function(-integrate_simplex(B, tri))


def verify_projective_relation(line, v, vp, tol=DEFAULT_TOL):
    """s(v) . translate_v s(v') = c(v, v') . s(v+v'), exactly in exponents."""
    v, vp = as_vec(v), as_vec(vp)
    report = CheckReport("projective_product")
    th_v = translation_section(line, v).exponent
    th_vp = translation_section(line, vp).exponent
    th_sum = translation_section(line, vadd(v, vp)).exponent
    c = two_cocycle(line, v, vp)
    slack = th_v + translate(th_vp, v) - c.exponent - th_sum
    phase_item(report, _vec_label(v, vp), constant_mod_free(slack, tol), tol)
    return report, c


def holonomy_exponent(line, loop, on_torus=False, tol=DEFAULT_TOL):
    """Exponent of the holonomy phase of a closed loop.

    Loops closed in R^d integrate A around the loop.  With on_torus=True the
    loop may close only on the torus (end - start integral); the transition
    phase of the winding i closes the lift.  Its sign is pinned by requiring
    invariance (mod 2*pi) under translating the lift by a lattice vector,
    which is the statement that the phase belongs to the loop on the torus
    and not to the chosen lift.
    """
    A = line.require_connection()
    if on_torus:
        wind = [b - a for a, b in zip(loop.start, loop.end)]
        if any(w.denominator != 1 for w in wind):
            raise PathError("loop does not close on the torus")
        base = integrate_path(A, loop, symbolic=False)
        from .forms import _eval_exact

        jump = _eval_exact(line.phi(tuple(int(w) for w in wind)), loop.start)
        return base + jump
    if not loop.closed:
        raise PathError("holonomy needs a closed loop")
    return integrate_path(A, loop, symbolic=False)


def holonomy(line, loop, on_torus=False):
    """exp(i * holonomy_exponent) as a complex number."""
    return cmath.exp(1j * float(holonomy_exponent(line, loop, on_torus)))


class PathSymmetry:
    """A bundle symmetry covering a path of translations: (based PL path, gauge).

    The gauge exponent must descend to the torus; the pair acts on sections by
    gauge multiplication followed by parallel transport along the path.
    """

    __slots__ = ("path", "gauge")

    def __init__(self, path, gauge, check_periodic=False, tol=DEFAULT_TOL):
        if any(x != 0 for x in path.start):
            raise PathError("symmetry paths are based at the origin")
        if gauge.dim != path.dim:
            raise DimensionError("gauge and path dimension mismatch")
        if check_periodic and not gauge.is_periodic(tol):
            raise TorusGaugeError("gauge exponent does not descend to the torus")
        self.path = path
        self.gauge = gauge

    @staticmethod
    def unit(d):
        return PathSymmetry(PLPath.constant(vzero(d)), U1Function.one(d))

    @property
    def endpoint(self):
        return self.path.end

    def transport_exponent(self, line):
        """T(x) = -int over the path translated to x of A; exp(i T) transports."""
        A = line.require_connection()
        return -integrate_path(A, self.path, symbolic=True)

    def invariant_exponent(self, line):
        """Exponent of transport-plus-gauge; equal iff the symmetries act equally."""
        return self.transport_exponent(line) + self.gauge.exponent


def lift_product(a, b, line):
    """Group law on path symmetries (paths add pointwise; abelian fiber).

    The gauge factor is the holonomy of the triangle homotopy between the
    pointwise-sum path and the concatenation, times the translated gauges:

        theta = [I(gamma + gamma') - I(gamma)(. + e') - I(gamma')]
                + theta_a(. + e') + theta_b,   e' = gamma'(1),

    with I(path)(x) the line integral of A along the path translated to x.
    """
    A = line.require_connection()
    gamma, gamma_p = a.path, b.path
    e_p = gamma_p.end
    total = gamma.pointwise_add(gamma_p)
    i_total = integrate_path(A, total, symbolic=True)
    i_gamma = integrate_path(A, gamma, symbolic=True)
    i_gamma_p = integrate_path(A, gamma_p, symbolic=True)
    hol = i_total - translate(i_gamma, vneg(e_p)) - i_gamma_p
    theta = hol + translate(a.gauge.exponent, vneg(e_p)) + b.gauge.exponent
    return PathSymmetry(total, U1Function(theta))


def equivalence_gauge(line, gamma, alpha):
    """The reattachment gauge h with (gamma, phi) ~ (alpha, h . phi).

    h(x) = exp(i * (integral over alpha_x - integral over gamma_x) of A), the
    holonomy of the loop running along alpha and back along gamma.
    """
    if gamma.end != alpha.end:
        raise PathError("paths must share their endpoint")
    A = line.require_connection()
    i_gamma = integrate_path(A, gamma, symbolic=True)
    i_alpha = integrate_path(A, alpha, symbolic=True)
    return U1Function(i_alpha - i_gamma)


def lift_equivalence_check(line, gamma, alpha, phi, probe, tol=DEFAULT_TOL):
    """Replacing (gamma, phi) by (alpha, h.phi) must not change products.

    Verified on the invariant exponents of the products with a probe element.
    """
    report = CheckReport("lift_equivalence")
    h = equivalence_gauge(line, gamma, alpha)
    a1 = PathSymmetry(gamma, phi)
    a2 = PathSymmetry(alpha, h * phi)
    p1 = lift_product(a1, probe, line)
    p2 = lift_product(a2, probe, line)
    same_endpoint = p1.endpoint == p2.endpoint
    slack = p1.invariant_exponent(line) - p2.invariant_exponent(line)
    ok = phase_item(report, "product invariance", constant_mod_free(slack, tol), tol)
    report.add("endpoints agree", same_endpoint)
    # the two representatives themselves act identically
    slack0 = a1.invariant_exponent(line) - a2.invariant_exponent(line)
    phase_item(report, "representative invariance", constant_mod_free(slack0, tol), tol)
    return report


def landau_line(N, d=2):
    """The d=2 flux-N model: phi_{e2} = 2*pi*N*x1, A = -2*pi*N*x2 dx1."""
    if d != 2:
        raise DimensionError("the Landau model lives on T^2")
    phi = PolyTrig.monomial(2, (1, 0), Scalar.exact(2 * Fraction(N), 1))
    A = Form.one_form(2, {1: PolyTrig.monomial(2, (0, 1), Scalar.exact(-2 * Fraction(N), 1))})
    return LineData(2, {2: phi}, A)
