"""Exact coefficient field: Gaussian-rational functions in commuting symbols.

Every symbolic coefficient in the toolkit is a ``Scalar``: a reduced quotient
of multivariate polynomials over the Gaussian rationals (``Fraction`` real and
imaginary parts) in the commuting symbols

    hbar, kappa, t, m_A, m_B, m_C, rt

plus any registered parameter symbols (``alpha``, ``beta``, ...) and
exponential units ``E_*`` created by :func:`exp_of`.  ``rt`` is the adjoined
square root of ``hbar*kappa``; the rewrite ``rt**2 -> hbar*kappa`` is applied
on every product so canonical forms never contain ``rt**2``, and denominators
are rationalized to be ``rt``-free.

Canonical form is unique: numerator and denominator are gcd-reduced, monomials
are ordered lexicographically over the fixed symbol order, and the
denominator's leading coefficient is normalized to one.  Structural equality
of canonical forms is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, isqrt  # noqa: F401  (comb/factorial re-exported for weyl)

__all__ = [
    "Scalar",
    "ScalarError",
    "DivisionByZero",
    "PoleAtSubstitution",
    "PoleAtKappaZero",
    "NonSquareRoot",
    "register_symbol",
    "symbol",
    "rational",
    "integer",
    "exp_of",
    "exp_unit_exponents",
    "ZERO",
    "ONE",
    "I",
    "HBAR",
    "KAPPA",
    "T",
    "M_A",
    "M_B",
    "M_C",
    "RT",
]


class ScalarError(Exception):
    """Base class for coefficient-field errors."""


class DivisionByZero(ScalarError):
    pass


class PoleAtSubstitution(ScalarError):
    pass


class PoleAtKappaZero(ScalarError):
    pass


class NonSquareRoot(ScalarError):
    pass


# ---------------------------------------------------------------------------
# symbol registry

_BASE_SYMBOLS = ("hbar", "kappa", "t", "m_A", "m_B", "m_C", "rt")
_SYMBOLS: list[str] = list(_BASE_SYMBOLS)
_INDEX: dict[str, int] = {name: i for i, name in enumerate(_SYMBOLS)}

_HBAR_IDX = _INDEX["hbar"]
_KAPPA_IDX = _INDEX["kappa"]
_T_IDX = _INDEX["t"]
_RT_IDX = _INDEX["rt"]

# exponential units: symbol name -> exponent Scalar (set lazily by exp_of)
_EXP_UNITS: dict[str, "Scalar"] = {}


def register_symbol(name: str) -> int:
    """Register a commuting symbol (idempotent) and return its index."""
    if not name or not all(c.isalnum() or c == "_" for c in name):
        raise ScalarError(f"invalid symbol name {name!r}")
    if name in _INDEX:
        return _INDEX[name]
    _SYMBOLS.append(name)
    _INDEX[name] = len(_SYMBOLS) - 1
    return _INDEX[name]


def symbol_names() -> tuple[str, ...]:
    return tuple(_SYMBOLS)


# ---------------------------------------------------------------------------
# Gaussian rationals

class GaussianRational:
    """Complex number with exact Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_one(self):
        return self.re == 1 and not self.im

    def sign_positive(self):
        """Canonical sign used for normalization and printing."""
        if self.re:
            return self.re > 0
        return self.im > 0

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)


def _gr_sqrt(g: GaussianRational) -> GaussianRational:
    """Exact square root of a nonnegative rational, else NonSquareRoot."""
    if g.im or g.re < 0:
        raise NonSquareRoot(f"no exact square root for {g!r}")
    p, q = g.re.numerator, g.re.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise NonSquareRoot(f"{g.re} is not a perfect square")
    return GaussianRational(Fraction(rp, rq))


# ---------------------------------------------------------------------------
# multivariate polynomials
#
# A monomial is a tuple of exponents aligned with the symbol registry, with
# trailing zeros stripped (so monomials stay valid as the registry grows).

Monomial = tuple


def _mono_pad(m: Monomial, n: int) -> tuple:
    return m + (0,) * (n - len(m))


def _mono_strip(m) -> Monomial:
    m = tuple(m)
    while m and m[-1] == 0:
        m = m[:-1]
    return m


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    n = max(len(m1), len(m2))
    return _mono_strip(a + b for a, b in zip(_mono_pad(m1, n), _mono_pad(m2, n)))


def _mono_div(m1: Monomial, m2: Monomial):
    n = max(len(m1), len(m2))
    out = tuple(a - b for a, b in zip(_mono_pad(m1, n), _mono_pad(m2, n)))
    if any(e < 0 for e in out):
        return None
    return _mono_strip(out)


def _mono_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    return _mono_strip(min(a, b) for a, b in zip(m1, m2))


def _mono_key(m: Monomial):
    # lexicographic over the fixed symbol order; longer tuples padded below
    return _mono_pad(m, len(_SYMBOLS))


def _mono_get(m: Monomial, idx: int) -> int:
    return m[idx] if idx < len(m) else 0


def _mono_set(m: Monomial, idx: int, e: int) -> Monomial:
    m = list(_mono_pad(m, max(len(m), idx + 1)))
    m[idx] = e
    return _mono_strip(m)


class Poly:
    """Multivariate polynomial over the Gaussian rationals (canonical dict)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = terms

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly({})

    @staticmethod
    def const(c: GaussianRational) -> "Poly":
        return Poly({(): c}) if c else Poly({})

    @staticmethod
    def symbol(idx: int) -> "Poly":
        mono = _mono_strip([0] * idx + [1])
        return Poly({mono: _GR_ONE})

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return len(self.terms) == 1 and () in self.terms and self.terms[()].is_one()

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    # -- ring operations -----------------------------------------------------

    def add(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    def neg(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def sub(self, other: "Poly") -> "Poly":
        return self.add(other.neg())

    def mul(self, other: "Poly", reduce_rt: bool = True) -> "Poly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                if reduce_rt:
                    e = _mono_get(m, _RT_IDX)
                    if e >= 2:
                        k, r = divmod(e, 2)
                        m = _mono_set(m, _RT_IDX, r)
                        m = _mono_set(m, _HBAR_IDX, _mono_get(m, _HBAR_IDX) + k)
                        m = _mono_set(m, _KAPPA_IDX, _mono_get(m, _KAPPA_IDX) + k)
                s = out.get(m)
                if s is None:
                    if c:
                        out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Poly(out)

    def scale(self, c: GaussianRational) -> "Poly":
        if not c:
            return Poly({})
        return Poly({m: v * c for m, v in self.terms.items()})

    # -- structure -----------------------------------------------------------

    def leading(self):
        """(monomial, coefficient) maximal in the lexicographic order."""
        if not self.terms:
            raise ScalarError("leading term of zero polynomial")
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def mono_content(self) -> Monomial:
        """Componentwise-min monomial dividing every term."""
        it = iter(self.terms)
        first = next(it)
        acc = first
        for m in it:
            n = max(len(acc), len(m))
            acc = _mono_strip(
                min(a, b) for a, b in zip(_mono_pad(acc, n), _mono_pad(m, n))
            )
            if not acc:
                break
        return acc

    def used_symbols(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def max_degree(self, idx: int) -> int:
        return max((_mono_get(m, idx) for m in self.terms), default=0)

    def coeff_of_power(self, idx: int, k: int) -> "Poly":
        """Coefficient of symbol(idx)**k, as a polynomial without that symbol."""
        out = {}
        for m, c in self.terms.items():
            if _mono_get(m, idx) == k:
                out[_mono_set(m, idx, 0)] = c
        return Poly(out)

    def derivative(self, idx: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            e = _mono_get(m, idx)
            if e:
                out[_mono_set(m, idx, e - 1)] = c * GaussianRational(e)
        return Poly(out)

    def __repr__(self):
        return f"Poly({self.terms!r})"


_P_ZERO = Poly.zero()
_P_ONE = Poly.const(_GR_ONE)


# ---------------------------------------------------------------------------
# exact division and gcd (rt treated as an ordinary symbol here; callers keep
# rt-degree <= 1 in numerators and rt out of denominators)

def poly_exact_div(f: Poly, g: Poly):
    """Exact quotient f/g in the free polynomial ring, or None."""
    if g.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if g.is_one():
        return f
    rem = f
    out: dict = {}
    gm, gc = g.leading()
    gc_inv = gc.inv()
    while not rem.is_zero():
        rm, rc = rem.leading()
        q = _mono_div(rm, gm)
        if q is None:
            return None
        c = rc * gc_inv
        out[q] = c
        rem = rem.sub(Poly({q: c}).mul(g, reduce_rt=False))
    return Poly(out)


def _poly_normalize_unit(f: Poly) -> Poly:
    """Scale so the lexicographic leading coefficient is one."""
    if f.is_zero():
        return f
    _, c = f.leading()
    if c.is_one():
        return f
    return f.scale(c.inv())


def _as_univar(f: Poly, idx: int) -> dict:
    """View f as a univariate polynomial in symbol idx: degree -> Poly."""
    out: dict = {}
    for m, c in f.terms.items():
        e = _mono_get(m, idx)
        base = _mono_set(m, idx, 0)
        coeff = out.setdefault(e, {})
        coeff[base] = coeff.get(base, _GR_ZERO) + c
    return {
        e: Poly({m: c for m, c in d.items() if c}) for e, d in out.items() if any(d.values())
    }


def _from_univar(coeffs: dict, idx: int) -> Poly:
    out: dict = {}
    for e, p in coeffs.items():
        for m, c in p.terms.items():
            out[_mono_set(m, idx, e)] = c
    return Poly(out)


def _pseudo_rem(f: Poly, g: Poly, idx: int) -> Poly:
    """Pseudo-remainder of f by g viewed as univariate in symbol idx."""
    fu = _as_univar(f, idx)
    gu = _as_univar(g, idx)
    dg = max(gu)
    lc_g = gu[dg]
    rem = fu
    df = max(rem) if rem else -1
    while rem and df >= dg:
        lc_r = rem[df]
        # rem <- lc_g * rem - lc_r * x^(df-dg) * g
        new: dict = {}
        for e, p in rem.items():
            new[e] = p.mul(lc_g, reduce_rt=False)
        for e, p in gu.items():
            shifted = e + df - dg
            term = p.mul(lc_r, reduce_rt=False)
            new[shifted] = new.get(shifted, _P_ZERO).sub(term)
        rem = {e: p for e, p in new.items() if not p.is_zero()}
        df = max(rem) if rem else -1
    return _from_univar(rem, idx)


def _content_and_pp(f: Poly, idx: int):
    fu = _as_univar(f, idx)
    cont = _P_ZERO
    for p in fu.values():
        cont = poly_gcd(cont, p)
    pp = poly_exact_div(f, cont)
    assert pp is not None
    return cont, pp


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """GCD in the free polynomial ring over QQ(i), unit-normalized."""
    if f.is_zero():
        return _poly_normalize_unit(g)
    if g.is_zero():
        return _poly_normalize_unit(f)
    # common monomial factor is cheap and covers most reductions here
    mono = _mono_gcd(f.mono_content(), g.mono_content())
    if f.is_monomial() or g.is_monomial():
        return Poly({mono: _GR_ONE})
    fr = poly_exact_div(f, Poly({mono: _GR_ONE}))
    gr = poly_exact_div(g, Poly({mono: _GR_ONE}))
    used = fr.used_symbols() | gr.used_symbols()
    if not used:
        return Poly({mono: _GR_ONE})
    idx = max(used)
    if fr.max_degree(idx) == 0 or gr.max_degree(idx) == 0:
        # one argument is free of the chosen variable: recurse on contents
        cf, _ = _content_and_pp(fr, idx) if fr.max_degree(idx) else (fr, None)
        cg, _ = _content_and_pp(gr, idx) if gr.max_degree(idx) else (gr, None)
        inner = poly_gcd(cf, cg)
    else:
        cont_f, pp_f = _content_and_pp(fr, idx)
        cont_g, pp_g = _content_and_pp(gr, idx)
        cont = poly_gcd(cont_f, cont_g)
        a, b = pp_f, pp_g
        if a.max_degree(idx) < b.max_degree(idx):
            a, b = b, a
        while True:
            r = _pseudo_rem(a, b, idx)
            if r.is_zero():
                _, gcd_pp = _content_and_pp(b, idx)
                break
            if r.max_degree(idx) == 0:
                gcd_pp = _P_ONE
                break
            _, r_pp = _content_and_pp(r, idx)
            a, b = b, r_pp
        inner = cont.mul(gcd_pp, reduce_rt=False)
    return _poly_normalize_unit(inner.mul(Poly({mono: _GR_ONE}), reduce_rt=False))


def _poly_sqrt_monomial(f: Poly) -> Poly:
    """Exact square root of a monomial with square coefficient."""
    if f.is_zero():
        return f
    if not f.is_monomial():
        raise NonSquareRoot("square root supported only for monomials")
    (m, c), = f.terms.items()
    if any(e % 2 for e in m):
        raise NonSquareRoot(f"odd exponent in {f!r}")
    return Poly({_mono_strip(e // 2 for e in m): _gr_sqrt(c)})


# ---------------------------------------------------------------------------
# the Scalar field

class Scalar:
    """Canonical quotient of two Polys; immutable value type."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, _canonical: bool = False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise DivisionByZero("scalar with zero denominator")
        if num.is_zero():
            self.num = _P_ZERO
            self.den = _P_ONE
            return
        # rationalize rt out of the denominator: den = d0 + rt*d1
        if den.max_degree(_RT_IDX) > 0:
            d0 = den.coeff_of_power(_RT_IDX, 0)
            d1 = den.coeff_of_power(_RT_IDX, 1)
            conj = d0.sub(Poly.symbol(_RT_IDX).mul(d1))
            num = num.mul(conj)
            den = den.mul(conj)
            if den.max_degree(_RT_IDX) > 0:  # pragma: no cover - defensive
                raise ScalarError("rt rationalization failed")
        if not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
                if num is None or den is None:  # pragma: no cover - defensive
                    raise ScalarError("gcd reduction failed")
            _, lc = den.leading()
            if not lc.is_one():
                inv = lc.inv()
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(re=0, im=0) -> "Scalar":
        return Scalar(Poly.const(GaussianRational(re, im)), _P_ONE)

    @staticmethod
    def from_symbol(name: str) -> "Scalar":
        if name not in _INDEX:
            raise ScalarError(f"unknown symbol {name!r}")
        return Scalar(Poly.symbol(_INDEX[name]), _P_ONE)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_rational(self) -> bool:
        return self.num.is_const() and self.den.is_one()

    def as_gaussian(self) -> GaussianRational:
        if not self.is_rational():
            raise ScalarError(f"{self} is not a constant")
        return self.num.terms.get((), _GR_ZERO)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- field arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return Scalar(self.num.add(other.num), self.den)
        return Scalar(
            self.num.mul(other.den).add(other.num.mul(self.den)),
            self.den.mul(other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.num.neg(), self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.num.mul(other.num), self.den.mul(other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by zero scalar")
        return Scalar(self.num.mul(other.den), self.den.mul(other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero scalar")
        return Scalar(self.den, self.num)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar(
            Poly({m: c.conjugate() for m, c in self.num.terms.items()}),
            Poly({m: c.conjugate() for m, c in self.den.terms.items()}),
        )

    # -- calculus and substitution -------------------------------------------

    def derivative(self, name: str = "t") -> "Scalar":
        idx = _INDEX[name]
        if idx == _RT_IDX:
            raise ScalarError("rt is a derived symbol")
        n = self.num.derivative(idx).mul(self.den).sub(
            self.num.mul(self.den.derivative(idx))
        )
        return Scalar(n, self.den.mul(self.den))

    def used_symbols(self) -> set:
        return {
            _SYMBOLS[i] for i in (self.num.used_symbols() | self.den.used_symbols())
        }

    def substitute(self, bindings: dict) -> "Scalar":
        """Replace bound symbols by Scalar values and recanonicalize.

        ``rt`` may not be bound directly; when ``hbar`` or ``kappa`` is bound
        and ``rt`` occurs, ``rt`` is rewritten to the exact square root of the
        substituted product (a pole-free perfect square is required).
        """
        if "rt" in bindings:
            raise ScalarError("rt is derived; bind hbar and kappa instead")
        values = {_INDEX[k]: _coerce(v) for k, v in bindings.items() if k in _INDEX}
        for k in bindings:
            if k not in _INDEX:
                raise ScalarError(f"unknown symbol {k!r}")
        used = self.num.used_symbols() | self.den.used_symbols()
        rt_bound = _RT_IDX in used and (_HBAR_IDX in values or _KAPPA_IDX in values)
        if not (set(values) & used) and not rt_bound:
            return self
        rt_value = None
        if rt_bound:
            h = values.get(_HBAR_IDX, HBAR)
            k = values.get(_KAPPA_IDX, KAPPA)
            prod = h * k
            if not prod.den.is_one():
                raise NonSquareRoot("rt substitution target is not polynomial")
            rt_value = Scalar(_poly_sqrt_monomial(prod.num), _P_ONE)
        num_v = _eval_poly(self.num, values, rt_value)
        den_v = _eval_poly(self.den, values, rt_value)
        if den_v.is_zero():
            raise PoleAtSubstitution(f"denominator of {self} vanishes under substitution")
        return num_v / den_v

    def kappa_zero_limit(self) -> "Scalar":
        try:
            return self.substitute({"kappa": ZERO})
        except PoleAtSubstitution as exc:
            raise PoleAtKappaZero(str(exc)) from exc

    def evaluate(self, bindings: dict) -> complex:
        """Numeric evaluation; exponential units default to exp(exponent)."""
        num = _eval_numeric(self.num, bindings)
        den = _eval_numeric(self.den, bindings)
        if den == 0:
            raise PoleAtSubstitution(f"denominator of {self} vanishes numerically")
        return num / den

    # -- printing -------------------------------------------------------------

    def __str__(self):
        from .expressions import format_scalar

        return format_scalar(self)

    def __repr__(self):
        return f"<Scalar {self}>"


def _coerce(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, int):
        return Scalar.from_rational(v)
    if isinstance(v, Fraction):
        return Scalar.from_rational(v)
    return NotImplemented


def _eval_poly(p: Poly, values: dict, rt_value) -> Scalar:
    total = ZERO
    for m, c in p.terms.items():
        term = Scalar(Poly.const(c), _P_ONE)
        for i, e in enumerate(m):
            if not e:
                continue
            if i in values:
                term = term * values[i] ** e
            elif i == _RT_IDX and rt_value is not None:
                term = term * rt_value ** e
            else:
                term = term * Scalar(Poly.symbol(i), _P_ONE) ** e
        total = total + term
    return total


def _eval_numeric(p: Poly, bindings: dict) -> complex:
    import cmath

    total = 0j
    for m, c in p.terms.items():
        v = c.to_complex()
        for i, e in enumerate(m):
            if not e:
                continue
            name = _SYMBOLS[i]
            if name in bindings:
                base = complex(bindings[name])
            elif i == _RT_IDX:
                h = complex(bindings["hbar"])
                k = complex(bindings["kappa"])
                base = cmath.sqrt(h * k)
            elif name in _EXP_UNITS:
                base = cmath.exp(_EXP_UNITS[name].evaluate(bindings))
            else:
                raise PoleAtSubstitution(f"unbound symbol {name!r} in numeric evaluation")
            v *= base ** e
        total += v
    return total


# ---------------------------------------------------------------------------
# exponential units

def _sanitize(text: str) -> str:
    out = []
    for ch in text:
        out.append(ch if (ch.isalnum() or ch == "_") else "_")
    name = "".join(out)
    while "__" in name:
        name = name.replace("__", "_")
    return name.strip("_")


def exp_of(exponent: Scalar) -> Scalar:
    """Formal exponential of a Scalar exponent, as a registered unit symbol.

    Opposite exponents return exact inverses, so E * (1/E) == 1 after
    normalization.  Numeric evaluation resolves the unit to exp(exponent).
    """
    exponent = _coerce(exponent)
    if exponent.is_zero():
        return ONE
    _, lc = exponent.num.leading()
    if not lc.sign_positive():
        return ONE / exp_of(-exponent)
    from .expressions import format_scalar

    name = "E_" + _sanitize(format_scalar(exponent))
    if name not in _INDEX:
        register_symbol(name)
        _EXP_UNITS[name] = exponent
    elif name not in _EXP_UNITS:  # pragma: no cover - name collision guard
        raise ScalarError(f"symbol {name!r} already registered as non-exponential")
    return Scalar.from_symbol(name)


def exp_unit_exponents() -> dict:
    """Mapping of registered exponential-unit names to their exponents."""
    return dict(_EXP_UNITS)


# ---------------------------------------------------------------------------
# public constants and helpers

ZERO = Scalar.from_rational(0)
ONE = Scalar.from_rational(1)
I = Scalar.from_rational(0, 1)
HBAR = Scalar.from_symbol("hbar")
KAPPA = Scalar.from_symbol("kappa")
T = Scalar.from_symbol("t")
M_A = Scalar.from_symbol("m_A")
M_B = Scalar.from_symbol("m_B")
M_C = Scalar.from_symbol("m_C")
RT = Scalar.from_symbol("rt")


def symbol(name: str) -> Scalar:
    """Scalar for a registered symbol, registering parameters on demand."""
    if name not in _INDEX:
        register_symbol(name)
    return Scalar.from_symbol(name)


def rational(p, q=1) -> Scalar:
    return Scalar.from_rational(Fraction(p, q))


def integer(n: int) -> Scalar:
    return Scalar.from_rational(n)
