"""Exact rational-function arithmetic for local L-factors.

All arithmetic happens in one Laurent ring with v the square root of
the residue cardinality and t the inverse power q^(-s): half-integer
shifts of q coming from the inductivity chain become integer powers of
v, and the s-line becomes integer powers of t.  Fractions are kept in a
deterministic reduced normal form (integer coefficients, no common
polynomial factor, sign pinned on the denominator's lowest term).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import sympy

__all__ = [
    "Monomial",
    "RationalFunc",
    "RamificationTag",
    "TateChar",
    "LFactorError",
    "tate_L",
    "tate_L_quadratic_ext",
    "gj_L_trivial",
    "i2_ratio",
    "SampleStatus",
    "NonvanishingReport",
    "eval_nonvanishing_at_s0",
]

V, T = sympy.symbols("v t", positive=True)


class LFactorError(ValueError):
    """Invalid L-factor parameters or a broken internal identity."""


class RamificationTag(Enum):
    UNRAMIFIED = "unramified"
    RAMIFIED = "ramified"


class TateChar(Enum):
    TRIV_F = "triv"
    ETA = "eta"


@dataclass(frozen=True)
class Monomial:
    """Integer multiple of v^v_exp t^t_exp; t_exp is non-negative."""

    coeff: int
    v_exp: int
    t_exp: int

    def __post_init__(self) -> None:
        if self.t_exp < 0:
            raise LFactorError("t exponents must be non-negative")

    def to_expr(self) -> sympy.Expr:
        return sympy.Integer(self.coeff) * V**self.v_exp * T**self.t_exp


def _terms_to_expr(terms: tuple[Monomial, ...]) -> sympy.Expr:
    return sympy.Add(*(m.to_expr() for m in terms)) if terms else sympy.Integer(0)


def _poly_to_terms(expr: sympy.Expr) -> tuple[Monomial, ...]:
    poly = sympy.Poly(sympy.expand(expr), V, T)
    terms = [
        Monomial(int(c), int(ev), int(et))
        for (ev, et), c in poly.terms()
    ]
    terms.sort(key=lambda mo: (mo.t_exp, mo.v_exp))
    return tuple(terms)


@dataclass(frozen=True)
class RationalFunc:
    """Reduced fraction of Laurent polynomials in v and t."""

    num: tuple[Monomial, ...]
    den: tuple[Monomial, ...]

    @classmethod
    def from_expr(cls, expr: sympy.Expr) -> "RationalFunc":
        expr = sympy.cancel(sympy.together(expr))
        num, den = sympy.fraction(expr)
        if den == 0 or sympy.expand(den) == 0:
            raise LFactorError("denominator vanishes")
        num = sympy.expand(num)
        den = sympy.expand(den)
        coeffs = [sympy.Rational(c) for c in sympy.Poly(num, V, T).coeffs()]
        coeffs += [sympy.Rational(c) for c in sympy.Poly(den, V, T).coeffs()]
        scale = math.lcm(*(int(c.q) for c in coeffs)) if coeffs else 1
        content = math.gcd(*(abs(int(c * scale)) for c in coeffs)) if coeffs else 1
        factor = sympy.Rational(scale, max(content, 1))
        num, den = sympy.expand(num * factor), sympy.expand(den * factor)
        nterms = _poly_to_terms(num)
        dterms = _poly_to_terms(den)
        if not dterms:
            raise LFactorError("denominator vanishes")
        if dterms[0].coeff < 0:
            nterms = tuple(Monomial(-m.coeff, m.v_exp, m.t_exp) for m in nterms)
            dterms = tuple(Monomial(-m.coeff, m.v_exp, m.t_exp) for m in dterms)
        return cls(num=nterms, den=dterms)

    @classmethod
    def one(cls) -> "RationalFunc":
        return cls.from_expr(sympy.Integer(1))

    @classmethod
    def from_fraction(
        cls, num: tuple[Monomial, ...], den: tuple[Monomial, ...]
    ) -> "RationalFunc":
        return cls.from_expr(_terms_to_expr(num) / _terms_to_expr(den))

    def to_expr(self) -> sympy.Expr:
        return _terms_to_expr(self.num) / _terms_to_expr(self.den)

    def __add__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc.from_expr(self.to_expr() + other.to_expr())

    def __sub__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc.from_expr(self.to_expr() - other.to_expr())

    def __mul__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc.from_expr(self.to_expr() * other.to_expr())

    def __truediv__(self, other: "RationalFunc") -> "RationalFunc":
        if not other.num:
            raise LFactorError("division by zero")
        return RationalFunc.from_expr(self.to_expr() / other.to_expr())

    def is_zero(self) -> bool:
        return not self.num

    def unit_equivalent(self, other: "RationalFunc") -> bool:
        """Equal up to a single-monomial unit."""
        if other.is_zero():
            return self.is_zero()
        q = self / other
        return len(q.num) == 1 and len(q.den) == 1

    def subs_t1(self) -> "RationalFunc":
        """Specialize t to 1 (the point s = 0)."""
        den = sympy.expand(_terms_to_expr(self.den).subs(T, 1))
        if den == 0:
            raise LFactorError("pole at t = 1")
        return RationalFunc.from_expr(_terms_to_expr(self.num).subs(T, 1) / den)

    def eval_exact(self, q: int, t_value=1) -> sympy.Expr | None:
        """Exact value at v = sqrt(q); None signals a pole."""
        subs = {V: sympy.sqrt(sympy.Integer(q)), T: t_value}
        den = sympy.simplify(_terms_to_expr(self.den).subs(subs))
        if den == 0:
            return None
        num = sympy.simplify(_terms_to_expr(self.num).subs(subs))
        return sympy.simplify(num / den)

    def render(self) -> str:
        num = _render_poly(self.num)
        if self.den == (Monomial(1, 0, 0),):
            return num
        return f"({num})/({_render_poly(self.den)})"

    def to_json(self) -> dict:
        return {
            "num": [[m.coeff, m.v_exp, m.t_exp] for m in self.num],
            "den": [[m.coeff, m.v_exp, m.t_exp] for m in self.den],
        }


def _render_poly(terms: tuple[Monomial, ...]) -> str:
    if not terms:
        return "0"
    pieces = []
    for idx, m in enumerate(terms):
        factors = []
        if m.v_exp:
            factors.append("v" if m.v_exp == 1 else f"v^{m.v_exp}")
        if m.t_exp:
            factors.append("t" if m.t_exp == 1 else f"t^{m.t_exp}")
        mag = abs(m.coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = " ".join(factors)
        if idx == 0:
            pieces.append(body if m.coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if m.coeff > 0 else f"- {body}")
    return " ".join(pieces)


def _check_half_integer(c: Fraction) -> None:
    c = Fraction(c)
    if (2 * c).denominator != 1:
        raise LFactorError(f"shift {c} is not a half-integer")


def tate_L(
    char: TateChar,
    ram: RamificationTag,
    shift: Fraction,
    s_coeff: int,
) -> RationalFunc:
    """Tate L-factor of the base field at the point shift + s_coeff * s.

    Trivial character: 1 / (1 - q^-shift t^s_coeff); the quadratic
    character flips the sign when unramified and degenerates to 1 when
    ramified.
    """
    shift = Fraction(shift)
    _check_half_integer(shift)
    if s_coeff < 0:
        raise LFactorError("s coefficient must be non-negative")
    v_exp = int(-2 * shift)
    if char is TateChar.ETA and ram is RamificationTag.RAMIFIED:
        return RationalFunc.one()
    sign = -1 if char is TateChar.TRIV_F else 1
    den = (Monomial(1, 0, 0), Monomial(sign, v_exp, s_coeff))
    return RationalFunc.from_fraction((Monomial(1, 0, 0),), den)


def tate_L_quadratic_ext(
    shift: Fraction, s_coeff: int, ram: RamificationTag
) -> RationalFunc:
    """Tate L-factor of the trivial character of the quadratic extension.

    The extension's residue cardinality is q^2 when unramified and q
    when ramified, so all exponents double in the unramified case.
    """
    shift = Fraction(shift)
    _check_half_integer(shift)
    mult = 2 if ram is RamificationTag.UNRAMIFIED else 1
    v_exp = int(-2 * shift) * mult
    den = (Monomial(1, 0, 0), Monomial(-1, v_exp, s_coeff * mult))
    return RationalFunc.from_fraction((Monomial(1, 0, 0),), den)


def gj_L_trivial(k: int, d: int, shift: Fraction, s_coeff: int) -> RationalFunc:
    """L-factor of the trivial representation of the k x k group over a
    division algebra of index d, via the inductivity chain.

    Factorizes into k shifted division-algebra factors, each of which is
    a base-field Tate factor shifted by (d - 1)/2.
    """
    if k < 1 or d < 1:
        raise LFactorError("k and d must be positive")
    shift = Fraction(shift)
    _check_half_integer(shift)
    result = RationalFunc.one()
    for i in range(k):
        c_i = shift + Fraction(2 * i - (k - 1), 2) * d + Fraction(d - 1, 2)
        result = result * tate_L(TateChar.TRIV_F, RamificationTag.UNRAMIFIED, c_i, s_coeff)
    return result


def i2_ratio(d: int, ram: RamificationTag) -> RationalFunc:
    """Closed-form value of the rank-one open-orbit integral.

    Equals the trivial Tate factor at d(2s - 1) divided by the quadratic
    one at 2ds; the full inductivity chain is recomputed and must agree,
    otherwise an internal error is raised.
    """
    if d < 1:
        raise LFactorError("d must be positive")
    ratio = tate_L(TateChar.TRIV_F, ram, Fraction(-d), 2 * d) / tate_L(
        TateChar.ETA, ram, Fraction(0), 2 * d
    )
    chain = gj_L_trivial(2, d, Fraction(1 - 2 * d, 2), 2 * d) / tate_L_quadratic_ext(
        Fraction(0), 2 * d, ram
    )
    if chain != ratio:
        raise LFactorError(
            f"inductivity chain disagrees with the closed form for d={d}, {ram.value}"
        )
    return ratio


class SampleStatus(Enum):
    NONZERO = "nonzero"
    ZERO = "zero"
    POLE = "pole"


@dataclass(frozen=True)
class NonvanishingReport:
    value_at_t1: RationalFunc | None
    samples: tuple[tuple[int, SampleStatus, str], ...]
    nonvanishing: bool

    def to_json(self) -> dict:
        return {
            "value_at_t1": self.value_at_t1.to_json() if self.value_at_t1 else None,
            "samples": [
                {"q": q, "status": st.value, "value": val}
                for q, st, val in self.samples
            ],
            "nonvanishing": self.nonvanishing,
        }


def eval_nonvanishing_at_s0(
    rf: RationalFunc, q_samples: list[int]
) -> NonvanishingReport:
    """Specialize at s = 0 (t = 1) and probe the given residue sizes.

    Poles are reported as such, distinct from zeros; the verdict is
    nonvanishing iff every sample is finite and nonzero.  A pole of the
    whole family at t = 1 leaves the symbolic value empty.
    """
    try:
        at_t1 = rf.subs_t1()
    except LFactorError:
        at_t1 = None
    samples = []
    ok = True
    for q in q_samples:
        value = rf.eval_exact(q, t_value=1)
        if value is None:
            samples.append((q, SampleStatus.POLE, "pole"))
            ok = False
        elif value == 0:
            samples.append((q, SampleStatus.ZERO, "0"))
            ok = False
        else:
            samples.append((q, SampleStatus.NONZERO, str(value)))
    return NonvanishingReport(
        value_at_t1=at_t1, samples=tuple(samples), nonvanishing=ok
    )
