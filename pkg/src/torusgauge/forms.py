"""Exterior calculus over the polynomial-trig ring and exact simplex integration.

Differential forms store only strictly increasing index tuples, so
antisymmetry is structural.  Simplices are affine images of the parameter
domain 0 <= t_k <= ... <= t_1 <= 1; with edge vectors (v_1, ..., v_k) and top
vertex x the image is the ordered simplex

    [x - v_1 - ... - v_k, x - v_2 - ... - v_k, ..., x - v_k, x]

and the parametrization (t_1, ..., t_k) -> p_0 + sum t_j v_j carries the
standard orientation of that vertex ordering.  Base points may be symbolic
(offsets against an unspecified x), in which case integrals return PolyTrig
functions of x; integrals over concretely based chains return Scalars.

Everything here is exact: integration is iterated closed-form
antidifferentiation, never quadrature.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DegreeError, DimensionError, PathError
from .polytrig import PolyTrig, translate as translate_fn
from .scalar import Scalar
from .vectors import as_vec, det, vadd, vsub, vzero


class Form:
    """Differential form of degree p with PolyTrig coefficients."""

    __slots__ = ("dim", "degree", "comps")

    def __init__(self, dim, degree, comps):
        # degrees above dim are allowed but only for the zero form, so that
        # d of a top-degree form has a home
        if degree < 0 or (degree > dim and comps):
            raise DegreeError(f"degree {degree} out of range for dimension {dim}")
        self.dim = dim
        self.degree = degree
        self.comps = {}
        for idx, f in comps.items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise DegreeError(f"component index {idx} is not strictly increasing")
            if f.dim != dim:
                raise DimensionError("coefficient dimension mismatch")
            if f.terms:
                self.comps[idx] = f

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(d, p=0):
        return Form(d, p, {})

    @staticmethod
    def from_scalar(f):
        return Form(f.dim, 0, {(): f})

    @staticmethod
    def one_form(d, comps):
        """comps: map 1-based axis -> PolyTrig coefficient of dx_axis."""
        return Form(d, 1, {(a - 1,): f for a, f in comps.items()})

    @staticmethod
    def two_form(d, comps):
        """comps: map (a, b) 1-based, a < b -> coefficient of dx_a ^ dx_b."""
        return Form(d, 2, {(a - 1, b - 1): f for (a, b), f in comps.items()})

    @staticmethod
    def const_two_form(d, comps):
        return Form.two_form(
            d, {ab: PolyTrig.const(d, c) for ab, c in comps.items()}
        )

    # -- basics ------------------------------------------------------------

    def coefficient(self, idx):
        """Coefficient of dx_idx for a 1-based strictly increasing tuple."""
        key = tuple(a - 1 for a in idx)
        return self.comps.get(key, PolyTrig.zero(self.dim))

    def is_zero(self, tol=0.0):
        return all(f.is_zero(tol) for f in self.comps.values())

    def equals(self, other, tol=0.0):
        return (self - other).is_zero(tol)

    def __add__(self, other):
        if self.dim != other.dim or self.degree != other.degree:
            raise DimensionError("form mismatch in +")
        comps = dict(self.comps)
        for idx, f in other.comps.items():
            comps[idx] = comps.get(idx, PolyTrig.zero(self.dim)) + f
        return Form(self.dim, self.degree, comps)

    def __neg__(self):
        return Form(self.dim, self.degree, {i: -f for i, f in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Form(self.dim, self.degree, {i: f.scale(c) for i, f in self.comps.items()})

    def mul_fn(self, g):
        """Multiply by a 0-form (PolyTrig)."""
        return Form(self.dim, self.degree, {i: f * g for i, f in self.comps.items()})

    # -- exterior calculus ---------------------------------------------------

    def d(self):
        """Exterior derivative; d(d(.)) vanishes identically."""
        if self.degree >= self.dim:
            return Form(self.dim, self.degree + 1, {})
        out = {}
        for idx, f in self.comps.items():
            for a in range(self.dim):
                if a in idx:
                    continue
                df = f.partial(a + 1)
                if not df.terms:
                    continue
                pos = sum(1 for b in idx if b < a)
                new = tuple(sorted(idx + (a,)))
                contrib = df if pos % 2 == 0 else -df
                out[new] = out.get(new, PolyTrig.zero(self.dim)) + contrib
        return Form(self.dim, min(self.degree + 1, self.dim), out)

    def wedge(self, other):
        if self.dim != other.dim:
            raise DimensionError("dimension mismatch in wedge")
        p, q = self.degree, other.degree
        if p + q > self.dim:
            raise DegreeError(f"wedge degree {p + q} exceeds dimension {self.dim}")
        out = {}
        for i1, f1 in self.comps.items():
            for i2, f2 in other.comps.items():
                if set(i1) & set(i2):
                    continue
                merged = i1 + i2
                perm = sorted(range(len(merged)), key=lambda t: merged[t])
                sign = _perm_sign(perm)
                new = tuple(sorted(merged))
                contrib = (f1 * f2) if sign > 0 else -(f1 * f2)
                out[new] = out.get(new, PolyTrig.zero(self.dim)) + contrib
        return Form(self.dim, p + q, out)

    def interior(self, vec):
        """Contraction with a constant rational vector."""
        if self.degree == 0:
            raise DegreeError("cannot contract a 0-form")
        vec = as_vec(vec)
        out = {}
        for idx, f in self.comps.items():
            for j, a in enumerate(idx):
                if vec[a] == 0:
                    continue
                new = idx[:j] + idx[j + 1 :]
                contrib = f.scale(Fraction(vec[a]) * (1 if j % 2 == 0 else -1))
                out[new] = out.get(new, PolyTrig.zero(self.dim)) + contrib
        return Form(self.dim, self.degree - 1, out)

    def pullback(self, m):
        """Pullback along an AffineMap into dimension m.in_dim."""
        if self.dim != m.out_dim:
            raise DimensionError("map does not land in the form's space")
        out = {}
        for J in combinations(range(m.in_dim), self.degree):
            acc = PolyTrig.zero(m.in_dim)
            for I, f in self.comps.items():
                minor = [[m.lin[i][j] for j in J] for i in I]
                dd = det(minor)
                if dd == 0:
                    continue
                acc = acc + f._pullback(m.lin, m.trans, m.in_dim).expand_phases().scale(dd)
            if acc.terms:
                out[J] = acc
        return Form(m.in_dim, self.degree, out)

    def translate(self, v):
        """tau_v^* in the shift convention: coefficients become f(x - v)."""
        return Form(
            self.dim,
            self.degree,
            {i: translate_fn(f, v) for i, f in self.comps.items()},
        )

    def __repr__(self):
        if not self.comps:
            return f"0 (degree {self.degree})"
        names = []
        for idx in sorted(self.comps):
            dx = "^".join(f"dx{a + 1}" for a in idx) or "1"
            names.append(f"({self.comps[idx]}) {dx}")
        return " + ".join(names)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


class AffineSimplex:
    """Oriented affine k-simplex given by a top vertex and ordered edge vectors.

    When symbolic, the top vertex is an offset against an unspecified base
    point x and integrals over the simplex are functions of x.
    """

    __slots__ = ("dim", "top", "edges", "symbolic", "sign")

    def __init__(self, top, edges, symbolic=True, sign=1):
        self.top = as_vec(top)
        self.edges = tuple(as_vec(e) for e in edges)
        self.dim = len(self.top)
        self.symbolic = bool(symbolic)
        self.sign = 1 if sign >= 0 else -1
        # k > dim is allowed: the simplex is degenerate and top-degree
        # integrals over it are integrals of the zero form
        for e in self.edges:
            if len(e) != self.dim:
                raise DimensionError("edge vector length mismatch")

    @staticmethod
    def from_edges(edges, base=None):
        """Simplex with the given ordered edges; base is the top vertex (x if None)."""
        edges = [as_vec(e) for e in edges]
        d = len(edges[0]) if edges else (len(base) if base is not None else 0)
        if base is None:
            return AffineSimplex(vzero(d), edges, symbolic=True)
        return AffineSimplex(base, edges, symbolic=False)

    @property
    def k(self):
        return len(self.edges)

    def vertices(self):
        p = self.top
        for e in self.edges:
            p = vsub(p, e)
        verts = [p]
        for e in self.edges:
            p = vadd(p, e)
            verts.append(p)
        return verts

    def translate(self, v):
        return AffineSimplex(vadd(self.top, as_vec(v)), self.edges, self.symbolic, self.sign)

    def reversed(self):
        return AffineSimplex(self.top, self.edges, self.symbolic, -self.sign)

    def boundary(self):
        """Chain of (k-1)-faces with alternating signs; boundary of boundary is 0."""
        if self.k < 1:
            raise DegreeError("0-simplex has no boundary chain of simplices")
        verts = self.vertices()
        faces = []
        for j in range(len(verts)):
            face = verts[:j] + verts[j + 1 :]
            edges = [vsub(face[i + 1], face[i]) for i in range(len(face) - 1)]
            sgn = self.sign * (1 if j % 2 == 0 else -1)
            faces.append(AffineSimplex(face[-1], edges, self.symbolic, sgn))
        return faces

    def __repr__(self):
        kind = "x+" if self.symbolic else ""
        return (
            f"Simplex(top={kind}{tuple(map(str, self.top))}, "
            f"edges={[tuple(map(str, e)) for e in self.edges]}, sign={self.sign})"
        )


def integrate_simplex(omega, simplex):
    """Exact integral of a k-form over an affine k-simplex.

    Returns a PolyTrig in the base variables for symbolic simplices and a
    Scalar for concretely based ones.  Linear in omega, additive over chains,
    odd under orientation reversal.
    """
    k = simplex.k
    d = simplex.dim
    if omega.dim != d:
        raise DimensionError("form and simplex live in different spaces")
    if omega.degree != k:
        raise DegreeError(f"cannot integrate a {omega.degree}-form over a {k}-simplex")
    if k == 0:
        f = omega.comps.get((), PolyTrig.zero(d))
        if simplex.symbolic:
            # value at x + top
            return translate_fn(f, vneg_vec(simplex.top)).scale(simplex.sign)
        return _eval_exact(f, simplex.top) * Scalar.exact(simplex.sign)

    verts = simplex.vertices()
    p0 = verts[0]
    sym = simplex.symbolic
    ext = d + k if sym else k
    toff = d if sym else 0

    # affine parameter map M(x, t) = [x +] p0 + sum_j t_j v_j
    lin = []
    for i in range(d):
        row = [Fraction(0)] * ext
        if sym:
            row[i] = Fraction(1)
        for j, e in enumerate(simplex.edges):
            row[toff + j] = e[i]
        lin.append(tuple(row))
    trans = [Scalar.exact(p0[i]) for i in range(d)]

    g = PolyTrig.zero(ext)
    for I, f in omega.comps.items():
        minor = [[simplex.edges[j][i] for j in range(k)] for i in I]
        dd = det(minor)
        if dd == 0:
            continue
        g = g + f._pullback(tuple(lin), tuple(trans), ext).scale(dd)

    # iterated integral over 0 <= t_k <= ... <= t_1 <= 1
    for j in range(k, 0, -1):
        axis = toff + j
        g = g.antiderivative(axis, normalize=True)
        if j > 1:
            g = g.substitute(axis, {axis - 1: Fraction(1)}, Fraction(0))
        else:
            g = g.substitute(axis, {}, Fraction(1))

    if sym:
        out = g.drop_axes(list(range(1, d + 1))).expand_phases()
        return out.scale(simplex.sign)
    out = g.drop_axes([]).expand_phases()
    return out.constant_term() * Scalar.exact(simplex.sign)


def vneg_vec(v):
    return tuple(-x for x in v)


def _eval_exact(f, point):
    """Exact evaluation of an exact PolyTrig at a rational point (may go tier F)."""
    d = f.dim
    cur = f
    for a in range(1, d + 1):
        cur = cur.substitute(a, {}, Fraction(point[a - 1]))
    cur = cur.expand_phases()
    return cur.constant_term()


def integrate_chain(omega, chain):
    """Sum of integrals over a list of simplices (a formal chain)."""
    total = None
    for s in chain:
        val = integrate_simplex(omega, s)
        total = val if total is None else total + val
    if total is None:
        raise ValueError("empty chain")
    return total


class PLPath:
    """Piecewise-linear path through rational vertices."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vertices = [as_vec(v) for v in vertices]
        if not vertices:
            raise PathError("a path needs at least one vertex")
        d = len(vertices[0])
        for v in vertices:
            if len(v) != d:
                raise DimensionError("path vertices of mixed dimension")
        self.vertices = tuple(vertices)

    @staticmethod
    def straight(start, end):
        return PLPath([start, end])

    @staticmethod
    def constant(point):
        return PLPath([point])

    @property
    def dim(self):
        return len(self.vertices[0])

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def closed(self):
        return self.start == self.end

    def reversed(self):
        return PLPath(list(reversed(self.vertices)))

    def translate(self, v):
        v = as_vec(v)
        return PLPath([vadd(w, v) for w in self.vertices])

    def concat(self, other):
        """self followed by other; endpoints must match."""
        if self.end != other.start:
            raise PathError("paths do not concatenate: endpoint mismatch")
        return PLPath(list(self.vertices) + list(other.vertices[1:]))

    def params(self):
        n = len(self.vertices)
        if n == 1:
            return [Fraction(0), Fraction(1)]
        return [Fraction(i, n - 1) for i in range(n)]

    def at(self, t):
        """Exact point at parameter t in [0, 1] under the uniform parametrization."""
        t = Fraction(t)
        n = len(self.vertices)
        if n == 1:
            return self.vertices[0]
        if t <= 0:
            return self.vertices[0]
        if t >= 1:
            return self.vertices[-1]
        scaled = t * (n - 1)
        i = int(scaled)
        frac = scaled - i
        a, b = self.vertices[i], self.vertices[i + 1]
        return tuple(x + frac * (y - x) for x, y in zip(a, b))

    def pointwise_add(self, other):
        """Pointwise sum of paths on the common refinement of parameters."""
        if self.dim != other.dim:
            raise DimensionError("path dimension mismatch")
        ts = sorted(set(self.params()) | set(other.params()))
        return PLPath([vadd(self.at(t), other.at(t)) for t in ts])

    def __repr__(self):
        pts = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"PLPath[{pts}]"


def integrate_path(alpha, path, symbolic=True):
    """Exact line integral of a 1-form over a PL path.

    With symbolic=True the path vertices are offsets against a base point x
    and the result is a PolyTrig in x; otherwise a Scalar.
    """
    if alpha.degree != 1:
        raise DegreeError("integrate_path expects a 1-form")
    if len(path.vertices) == 1:
        return PolyTrig.zero(alpha.dim) if symbolic else Scalar.zero()
    total = None
    for a, b in zip(path.vertices, path.vertices[1:]):
        if a == b:
            continue
        seg = AffineSimplex(b, [vsub(b, a)], symbolic=symbolic)
        val = integrate_simplex(alpha, seg)
        total = val if total is None else total + val
    if total is None:
        return PolyTrig.zero(alpha.dim) if symbolic else Scalar.zero()
    return total


class BilinearCell:
    """The surface (t1, t2) -> x + gamma'(t2) + gamma(t1) over the unit square.

    Restricted to a pair of segments of the two PL paths the map is affine,
    so the surface is a grid of affine cells; its boundary consists of the
    four translated copies of the paths with alternating signs.
    """

    __slots__ = ("gamma", "gamma_prime")

    def __init__(self, gamma, gamma_prime):
        if gamma.dim != gamma_prime.dim:
            raise DimensionError("path dimension mismatch")
        self.gamma = gamma
        self.gamma_prime = gamma_prime

    @property
    def dim(self):
        return self.gamma.dim


def integrate_cell(omega, cell):
    """Exact integral of a 2-form over the full bilinear square; PolyTrig in x."""
    if omega.degree != 2:
        raise DegreeError("integrate_cell expects a 2-form")
    d = cell.dim
    if omega.dim != d:
        raise DimensionError("form and cell live in different spaces")
    g1 = cell.gamma.vertices
    g2 = cell.gamma_prime.vertices
    total = PolyTrig.zero(d)
    for a, b in zip(g1, g1[1:]):
        u = vsub(b, a)
        for c, e in zip(g2, g2[1:]):
            w = vsub(e, c)
            ext = d + 2
            lin = []
            for i in range(d):
                row = [Fraction(0)] * ext
                row[i] = Fraction(1)
                row[d] = u[i]
                row[d + 1] = w[i]
                lin.append(tuple(row))
            trans = [Scalar.exact(vadd(a, c)[i]) for i in range(d)]
            g = PolyTrig.zero(ext)
            for (i1, i2), f in omega.comps.items():
                dd = u[i1] * w[i2] - u[i2] * w[i1]
                if dd == 0:
                    continue
                g = g + f._pullback(tuple(lin), tuple(trans), ext).scale(dd)
            for axis in (d + 2, d + 1):
                g = g.antiderivative(axis, normalize=True)
                g = g.substitute(axis, {}, Fraction(1))
            total = total + g.drop_axes(list(range(1, d + 1))).expand_phases()
    return total


def boundary(simplex):
    """Alternating-sign faces of an affine simplex."""
    return simplex.boundary()
