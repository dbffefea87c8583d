"""Exact algebra of polynomial-times-trigonometric functions on R^d.

A PolyTrig is a finite sum of terms

    c * x^alpha * {1, cos, sin}(2*pi*(q.x + phase))

with two-tier coefficients c (see scalar.Scalar), integer monomial exponents
alpha, rational frequency vectors q and rational phases.  Values exposed to
callers are canonical: phases are expanded away and frequencies are integer
vectors, so the basis functions are linearly independent and zero tests are
termwise.  Rational frequencies and phases are carried only through the
internals of pullbacks and iterated integration, where they keep intermediate
results exact.

The ring is closed under +, *, partial derivatives, pullback along affine
maps, and antidifferentiation in one variable.  All values are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import math as _math
from fractions import Fraction

from .errors import DimensionError, FrequencyError
from .scalar import DEFAULT_TOL, Scalar, cos2pi, sin2pi

MODE_NONE = 0
MODE_COS = 1
MODE_SIN = 2

_QUARTER = Fraction(1, 4)
_HALF = Fraction(1, 2)


def _zero_freq(d):
    return (Fraction(0),) * d


class _Acc:
    """Accumulator of canonical terms."""

    __slots__ = ("d", "terms")

    def __init__(self, d):
        self.d = d
        self.terms = {}

    def put(self, alpha, mode, freq, phase, coeff):
        if coeff.is_zero():
            return
        if mode != MODE_NONE:
            if all(f == 0 for f in freq):
                # constant trig folds into the coefficient
                coeff = coeff * (cos2pi(phase) if mode == MODE_COS else sin2pi(phase))
                mode, freq, phase = MODE_NONE, _zero_freq(self.d), Fraction(0)
                if coeff.is_zero():
                    return
            else:
                for f in freq:
                    if f != 0:
                        if f < 0:
                            freq = tuple(-x for x in freq)
                            phase = -phase
                            if mode == MODE_SIN:
                                coeff = -coeff
                        break
                phase = phase % 1
                if phase >= _HALF:
                    phase -= _HALF
                    coeff = -coeff
                if phase >= _QUARTER:
                    phase -= _QUARTER
                    if mode == MODE_COS:
                        mode = MODE_SIN
                        coeff = -coeff
                    else:
                        mode = MODE_COS
        key = (alpha, mode, freq, phase)
        prev = self.terms.get(key)
        tot = coeff if prev is None else prev + coeff
        if tot.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = tot

    def done(self):
        return PolyTrig(self.d, self.terms)


class PolyTrig:
    """Immutable exact function R^d -> R in the polynomial-trig ring."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms):
        self.dim = dim
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(d):
        return PolyTrig(d, {})

    @staticmethod
    def const(d, c):
        acc = _Acc(d)
        acc.put((0,) * d, MODE_NONE, _zero_freq(d), Fraction(0), Scalar.coerce(c))
        return acc.done()

    @staticmethod
    def var(d, axis):
        """The coordinate function x_axis (1-based axis)."""
        if not 1 <= axis <= d:
            raise DimensionError(f"axis {axis} out of range for dimension {d}")
        alpha = tuple(1 if i == axis - 1 else 0 for i in range(d))
        acc = _Acc(d)
        acc.put(alpha, MODE_NONE, _zero_freq(d), Fraction(0), Scalar.one())
        return acc.done()

    @staticmethod
    def monomial(d, alpha, c=1):
        acc = _Acc(d)
        acc.put(tuple(alpha), MODE_NONE, _zero_freq(d), Fraction(0), Scalar.coerce(c))
        return acc.done()

    @staticmethod
    def trig(d, mode, freq, phase=Fraction(0), c=1):
        """c * cos or sin(2*pi*(freq.x + phase)); freq entries rational."""
        acc = _Acc(d)
        freq = tuple(Fraction(f) for f in freq)
        if len(freq) != d:
            raise DimensionError("frequency vector has wrong length")
        acc.put((0,) * d, mode, freq, Fraction(phase), Scalar.coerce(c))
        return acc.done()

    @staticmethod
    def cos_freq(d, freq, c=1):
        return PolyTrig.trig(d, MODE_COS, freq, Fraction(0), c)

    @staticmethod
    def sin_freq(d, freq, c=1):
        return PolyTrig.trig(d, MODE_SIN, freq, Fraction(0), c)

    # -- structure ---------------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def is_zero(self, tol=0.0):
        """Zero test; tier-F coefficients are compared against max(own tol, tol)."""
        for c in self.terms.values():
            if c.is_exact:
                return False
            if abs(c.val) > max(c.tol, tol):
                return False
        return True

    def is_exact(self):
        return all(c.is_exact for c in self.terms.values())

    def equals(self, other, tol=0.0):
        return (self - other).is_zero(tol)

    def __eq__(self, other):
        if not isinstance(other, PolyTrig) or self.dim != other.dim:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        for k, c in self.terms.items():
            o = other.terms[k]
            if c.is_exact != o.is_exact:
                return False
            if c.is_exact:
                if c.pi != o.pi:
                    return False
            elif c.val != o.val:
                return False
        return True

    def constant_term(self):
        key = ((0,) * self.dim, MODE_NONE, _zero_freq(self.dim), Fraction(0))
        return self.terms.get(key, Scalar.zero())

    def as_scalar(self, tol=0.0):
        """The value of a constant PolyTrig; raises if nonconstant beyond tol."""
        c = constant_mod_free(self, tol)
        if c is None:
            raise ValueError("PolyTrig is not constant")
        return c

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = PolyTrig.const(self.dim, other)
        self._check_dim(other)
        acc = _Acc(self.dim)
        for (alpha, mode, freq, phase), c in self.terms.items():
            acc.put(alpha, mode, freq, phase, c)
        for (alpha, mode, freq, phase), c in other.terms.items():
            acc.put(alpha, mode, freq, phase, c)
        return acc.done()

    __radd__ = __add__

    def __neg__(self):
        return PolyTrig(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = PolyTrig.const(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Scalar.coerce(c)
        if c.is_zero():
            return PolyTrig.zero(self.dim)
        acc = _Acc(self.dim)
        for (alpha, mode, freq, phase), q in self.terms.items():
            acc.put(alpha, mode, freq, phase, q * c)
        return acc.done()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        self._check_dim(other)
        acc = _Acc(self.dim)
        half = Scalar.exact(Fraction(1, 2))
        for (a1, m1, q1, p1), c1 in self.terms.items():
            for (a2, m2, q2, p2), c2 in other.terms.items():
                alpha = tuple(x + y for x, y in zip(a1, a2))
                c = c1 * c2
                if m1 == MODE_NONE and m2 == MODE_NONE:
                    acc.put(alpha, MODE_NONE, q1, Fraction(0), c)
                elif m1 == MODE_NONE:
                    acc.put(alpha, m2, q2, p2, c)
                elif m2 == MODE_NONE:
                    acc.put(alpha, m1, q1, p1, c)
                else:
                    qd = tuple(x - y for x, y in zip(q1, q2))
                    qs = tuple(x + y for x, y in zip(q1, q2))
                    pd, ps = p1 - p2, p1 + p2
                    ch = c * half
                    if m1 == MODE_COS and m2 == MODE_COS:
                        acc.put(alpha, MODE_COS, qd, pd, ch)
                        acc.put(alpha, MODE_COS, qs, ps, ch)
                    elif m1 == MODE_SIN and m2 == MODE_SIN:
                        acc.put(alpha, MODE_COS, qd, pd, ch)
                        acc.put(alpha, MODE_COS, qs, ps, -ch)
                    elif m1 == MODE_SIN and m2 == MODE_COS:
                        acc.put(alpha, MODE_SIN, qd, pd, ch)
                        acc.put(alpha, MODE_SIN, qs, ps, ch)
                    else:
                        acc.put(alpha, MODE_SIN, qd, pd, -ch)
                        acc.put(alpha, MODE_SIN, qs, ps, ch)
        return acc.done()

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not in the ring")
        out = PolyTrig.const(self.dim, 1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus ----------------------------------------------------------

    def partial(self, axis):
        """d/dx_axis, axis 1-based."""
        if not 1 <= axis <= self.dim:
            raise DimensionError(f"axis {axis} out of range for dimension {self.dim}")
        a = axis - 1
        acc = _Acc(self.dim)
        for (alpha, mode, freq, phase), c in self.terms.items():
            if alpha[a] > 0:
                al = list(alpha)
                al[a] -= 1
                acc.put(tuple(al), mode, freq, phase, c * Fraction(alpha[a]))
            if mode == MODE_COS and freq[a] != 0:
                acc.put(alpha, MODE_SIN, freq, phase, c * Scalar.exact(-2 * freq[a], 1))
            elif mode == MODE_SIN and freq[a] != 0:
                acc.put(alpha, MODE_COS, freq, phase, c * Scalar.exact(2 * freq[a], 1))
        return acc.done()

    def antiderivative(self, axis, normalize=True):
        """F with dF/dx_axis = self; F vanishes at x_axis = 0 when normalize."""
        if not 1 <= axis <= self.dim:
            raise DimensionError(f"axis {axis} out of range for dimension {self.dim}")
        a = axis - 1
        acc = _Acc(self.dim)
        for (alpha, mode, freq, phase), c in self.terms.items():
            if mode == MODE_NONE or freq[a] == 0:
                al = list(alpha)
                al[a] += 1
                acc.put(tuple(al), mode, freq, phase, c / Fraction(alpha[a] + 1))
                continue
            w = Scalar.exact(2 * freq[a], 1)  # d(arg)/dx_axis
            n, m, k = alpha[a], mode, c
            while True:
                al = list(alpha)
                al[a] = n
                if m == MODE_COS:
                    acc.put(tuple(al), MODE_SIN, freq, phase, k / w)
                    k, m = -(k * Fraction(n)) / w, MODE_SIN
                else:
                    acc.put(tuple(al), MODE_COS, freq, phase, -(k / w))
                    k, m = (k * Fraction(n)) / w, MODE_COS
                if n == 0:
                    break
                n -= 1
        out = acc.done()
        if normalize:
            out = out - out.substitute(axis, {}, Fraction(0))
        return out

    def substitute(self, axis, coeffs, const):
        """Replace x_axis by sum(coeffs[j] * x_j) + const (j 1-based); keeps dim."""
        a = axis - 1
        rows = []
        for i in range(self.dim):
            if i == a:
                rows.append(tuple(Fraction(coeffs.get(j + 1, 0)) for j in range(self.dim)))
            else:
                rows.append(tuple(Fraction(1 if j == i else 0) for j in range(self.dim)))
        trans = [Scalar.zero()] * self.dim
        trans[a] = Scalar.coerce(const)
        return self._pullback(tuple(rows), tuple(trans), self.dim)

    # -- pullback ----------------------------------------------------------

    def _pullback(self, lin, trans, in_dim):
        """f(L y + t) where lin has shape (self.dim, in_dim); exact when it can be."""
        acc = _Acc(in_dim)
        lin_cols = [[lin[i][j] for j in range(in_dim)] for i in range(self.dim)]
        cache = {}
        for (alpha, mode, freq, phase), c in self.terms.items():
            poly = None
            for i, e in enumerate(alpha):
                if e == 0:
                    continue
                key = (i, e)
                fac = cache.get(key)
                if fac is None:
                    row = _Acc(in_dim)
                    base = (0,) * in_dim
                    for j, l in enumerate(lin_cols[i]):
                        if l != 0:
                            al = tuple(1 if jj == j else 0 for jj in range(in_dim))
                            row.put(al, MODE_NONE, _zero_freq(in_dim), Fraction(0), Scalar.exact(l))
                    row.put(base, MODE_NONE, _zero_freq(in_dim), Fraction(0), trans[i])
                    fac = row.done() ** e
                    cache[key] = fac
                poly = fac if poly is None else poly * fac
            if mode == MODE_NONE:
                trig = None
            else:
                nf = tuple(
                    sum((freq[i] * lin[i][j] for i in range(self.dim)), Fraction(0))
                    for j in range(in_dim)
                )
                delta = Scalar.zero()
                for i in range(self.dim):
                    if freq[i] != 0:
                        delta = delta + trans[i] * Scalar.exact(freq[i])
                if delta.is_rational():
                    trig = PolyTrig.trig(in_dim, mode, nf, phase + delta.rational_value())
                else:
                    # irrational or float phase shift: expand with numeric factors
                    ang = 2.0 * _math.pi * delta.val
                    tol = 2.0 * _math.pi * delta.tol + 1e-14
                    cosd = Scalar.approx(_math.cos(ang), tol)
                    sind = Scalar.approx(_math.sin(ang), tol)
                    base_cos = PolyTrig.trig(in_dim, MODE_COS, nf, phase)
                    base_sin = PolyTrig.trig(in_dim, MODE_SIN, nf, phase)
                    if mode == MODE_COS:
                        trig = base_cos.scale(cosd) - base_sin.scale(sind)
                    else:
                        trig = base_sin.scale(cosd) + base_cos.scale(sind)
            term = PolyTrig.const(in_dim, c)
            if poly is not None:
                term = term * poly
            if trig is not None:
                term = term * trig
            for k, q in term.terms.items():
                acc.put(k[0], k[1], k[2], k[3], q)
        return acc.done()

    def expand_phases(self):
        """Canonical user-level form: no rational phases remain in any term."""
        if all(phase == 0 for (_, _, _, phase) in self.terms):
            return self
        acc = _Acc(self.dim)
        for (alpha, mode, freq, phase), c in self.terms.items():
            if phase == 0:
                acc.put(alpha, mode, freq, phase, c)
                continue
            cd, sd = cos2pi(phase), sin2pi(phase)
            if mode == MODE_COS:
                acc.put(alpha, MODE_COS, freq, Fraction(0), c * cd)
                acc.put(alpha, MODE_SIN, freq, Fraction(0), -(c * sd))
            else:
                acc.put(alpha, MODE_SIN, freq, Fraction(0), c * cd)
                acc.put(alpha, MODE_COS, freq, Fraction(0), c * sd)
        return acc.done()

    def drop_axes(self, keep):
        """Project onto the 1-based axes in keep; the rest must not occur."""
        keep0 = [a - 1 for a in keep]
        drop0 = [i for i in range(self.dim) if i not in keep0]
        acc = _Acc(len(keep0))
        for (alpha, mode, freq, phase), c in self.terms.items():
            for i in drop0:
                if alpha[i] != 0 or freq[i] != 0:
                    raise DimensionError("cannot drop an axis the function depends on")
            acc.put(
                tuple(alpha[i] for i in keep0),
                mode,
                tuple(freq[i] for i in keep0),
                phase,
                c,
            )
        return acc.done()

    def integer_frequencies(self):
        return all(
            all(f.denominator == 1 for f in freq) for (_, _, freq, _) in self.terms
        )

    # -- evaluation --------------------------------------------------------

    def eval_float(self, point):
        if len(point) != self.dim:
            raise DimensionError("evaluation point has wrong length")
        tot = 0.0
        for (alpha, mode, freq, phase), c in self.terms.items():
            v = float(c)
            for xi, e in zip(point, alpha):
                if e:
                    v *= float(xi) ** e
            if mode != MODE_NONE:
                arg = 2.0 * _math.pi * (
                    sum(float(f) * float(xi) for f, xi in zip(freq, point)) + float(phase)
                )
                v *= _math.cos(arg) if mode == MODE_COS else _math.sin(arg)
            tot += v
        return tot

    # -- rendering ---------------------------------------------------------

    def _term_str(self, key):
        alpha, mode, freq, phase = key
        parts = []
        for i, e in enumerate(alpha):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        if mode != MODE_NONE:
            arg = ""
            for i, f in enumerate(freq):
                if f == 0:
                    continue
                mag = abs(f)
                piece = f"x{i + 1}" if mag == 1 else f"{mag}*x{i + 1}"
                if not arg:
                    arg = piece if f > 0 else f"-{piece}"
                else:
                    arg += f" + {piece}" if f > 0 else f" - {piece}"
            if phase != 0:
                mag = abs(phase)
                arg += f" + {mag}" if phase > 0 else f" - {mag}"
            name = "cos" if mode == MODE_COS else "sin"
            parts.append(f"{name}(2*pi*({arg}))")
        return parts

    @staticmethod
    def _coeff_str(c):
        if not c.is_exact:
            return repr(c.val), False
        items = sorted(c.pi.items())
        if len(items) == 1:
            m, q = items[0]
            s = []
            if q != 1 or m == 0:
                s.append(str(q))
            if m == 1:
                s.append("pi")
            elif m != 0:
                s.append(f"pi^{m}")
            return "*".join(s), False
        out = ""
        for m, q in items:
            t = []
            if abs(q) != 1 or m == 0:
                t.append(str(abs(q)))
            if m == 1:
                t.append("pi")
            elif m != 0:
                t.append(f"pi^{m}")
            chunk = "*".join(t)
            if not out:
                out = chunk if q > 0 else f"-{chunk}"
            else:
                out += f" + {chunk}" if q > 0 else f" - {chunk}"
        return f"({out})", True

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for key in sorted(self.terms, key=_term_sort_key):
            c = self.terms[key]
            cs, wrapped = self._coeff_str(c)
            factors = self._term_str(key)
            neg = cs.startswith("-") and not wrapped
            if neg:
                cs = cs[1:]
            if factors and cs == "1":
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            out.append(("- " if neg else "+ ") + body)
        s = " ".join(out)
        if s.startswith("+ "):
            s = s[2:]
        elif s.startswith("- "):
            s = "-" + s[2:]
        return s

    __repr__ = __str__


def _term_sort_key(key):
    alpha, mode, freq, phase = key
    return (alpha, mode, tuple(freq), phase)


class AffineMap:
    """Affine map y -> L y + t with rational linear part and Scalar translation."""

    __slots__ = ("lin", "trans", "out_dim", "in_dim")

    def __init__(self, lin, trans):
        self.lin = tuple(tuple(Fraction(v) for v in row) for row in lin)
        self.trans = tuple(Scalar.coerce(t) for t in trans)
        self.out_dim = len(self.lin)
        self.in_dim = len(self.lin[0]) if self.lin else 0
        if len(self.trans) != self.out_dim:
            raise DimensionError("translation length does not match linear part")
        for row in self.lin:
            if len(row) != self.in_dim:
                raise DimensionError("ragged linear part")

    @staticmethod
    def identity(d):
        return AffineMap(
            [[1 if i == j else 0 for j in range(d)] for i in range(d)], [0] * d
        )

    @staticmethod
    def translation(v):
        """x -> x + v."""
        d = len(v)
        return AffineMap(
            [[1 if i == j else 0 for j in range(d)] for i in range(d)], list(v)
        )

    def compose(self, other):
        """self after other: (self.compose(other))(y) = self(other(y))."""
        if self.in_dim != other.out_dim:
            raise DimensionError("maps are not composable")
        lin = [
            [
                sum((self.lin[i][k] * other.lin[k][j] for k in range(self.in_dim)), Fraction(0))
                for j in range(other.in_dim)
            ]
            for i in range(self.out_dim)
        ]
        trans = []
        for i in range(self.out_dim):
            t = self.trans[i]
            for k in range(self.in_dim):
                if self.lin[i][k] != 0:
                    t = t + other.trans[k] * Scalar.exact(self.lin[i][k])
            trans.append(t)
        return AffineMap(lin, trans)

    def __repr__(self):
        return f"AffineMap(out={self.out_dim}, in={self.in_dim})"


def pullback_fn(f, m):
    """f composed with m; errors if a trig frequency leaves the integer lattice."""
    if f.dim != m.out_dim:
        raise DimensionError(
            f"map lands in dimension {m.out_dim}, function lives in {f.dim}"
        )
    out = f._pullback(m.lin, m.trans, m.in_dim).expand_phases()
    if not out.integer_frequencies():
        raise FrequencyError("pullback produced a non-integer frequency")
    return out


def translate(f, v):
    """The shifted function x -> f(x - v)."""
    m = AffineMap.translation([-Fraction(x) for x in v])
    return pullback_fn(f, m)


def antiderivative_1d(f):
    """F with F' = f and F(0) = 0 for a one-variable PolyTrig."""
    if f.dim != 1:
        raise DimensionError("antiderivative_1d expects a one-variable function")
    return f.antiderivative(1)


def constant_mod_free(f, tol=DEFAULT_TOL):
    """The constant value of f, or None if f is nonconstant beyond tol."""
    const = Scalar.zero()
    for (alpha, mode, freq, phase), c in f.terms.items():
        if mode == MODE_NONE and all(a == 0 for a in alpha):
            const = const + c
            continue
        if c.is_exact or abs(c.val) > max(c.tol, tol):
            return None
    return const


def constant_mod(f, tol=DEFAULT_TOL):
    """Residue in [0, 2*pi) of a constant f mod 2*pi*Z, or None if nonconstant."""
    c = constant_mod_free(f, tol)
    if c is None:
        return None
    return c.mod_two_pi()


class U1Function:
    """A map x -> exp(i*theta(x)) represented by its real exponent theta."""

    __slots__ = ("exponent",)

    def __init__(self, exponent):
        self.exponent = exponent

    @staticmethod
    def one(d):
        return U1Function(PolyTrig.zero(d))

    @property
    def dim(self):
        return self.exponent.dim

    def __mul__(self, other):
        return U1Function(self.exponent + other.exponent)

    def inverse(self):
        return U1Function(-self.exponent)

    def __truediv__(self, other):
        return U1Function(self.exponent - other.exponent)

    def __pow__(self, n):
        return U1Function(self.exponent.scale(Fraction(n)))

    def translate(self, v):
        return U1Function(translate(self.exponent, v))

    def is_one(self, tol=DEFAULT_TOL):
        r = constant_mod_free(self.exponent, tol)
        return r is not None and r.in_two_pi_Z(tol)

    def equals(self, other, tol=DEFAULT_TOL):
        return (self / other).is_one(tol)

    def residue(self, tol=DEFAULT_TOL):
        """Exponent residue mod 2*pi if the quotient from 1 is constant, else None."""
        return constant_mod(self.exponent, tol)

    def is_periodic(self, tol=DEFAULT_TOL):
        """Whether exp(i*theta) descends to the torus R^d / Z^d."""
        d = self.dim
        for a in range(d):
            e = [0] * d
            e[a] = 1
            diff = translate(self.exponent, [-x for x in e]) - self.exponent
            r = constant_mod_free(diff, tol)
            if r is None or not r.in_two_pi_Z(tol):
                return False
        return True

    def eval(self, point):
        import cmath

        return cmath.exp(1j * self.exponent.eval_float(point))

    def __repr__(self):
        return f"exp(i*({self.exponent}))"
