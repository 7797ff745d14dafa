"""One-parameter families of elliptic curves over Q(t).

A family is given by Weierstrass coefficient polynomials a1..a6 in Z[t],
an optional affine reparametrization t -> c*t + t0 (applied once, up
front), a sign rule for the functional equation, and a claimed rank.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .polyint import IntPoly, divexact, gcd, poly, radical


class DegenerateFamilyError(ValueError):
    pass


class SingularFiberError(ValueError):
    pass


@dataclass(frozen=True)
class SignRule:
    """Closed-form root-number rule.

    kind is one of AllEven, AllOdd, BirchStephensCubic, BirchStephensQuartic,
    Equidistributed.  The Birch-Stephens rules carry the integer-valued
    polynomial D(t) they inspect.
    """

    kind: str
    D: Optional[IntPoly] = None

    def __post_init__(self):
        kinds = {"AllEven", "AllOdd", "BirchStephensCubic",
                 "BirchStephensQuartic", "Equidistributed"}
        if self.kind not in kinds:
            raise ValueError(f"unknown sign rule {self.kind!r}")
        if self.kind.startswith("BirchStephens") and self.D is None:
            raise ValueError(f"{self.kind} needs a polynomial D")


@dataclass(frozen=True)
class FamilyDef:
    label: str
    a1: IntPoly
    a2: IntPoly
    a3: IntPoly
    a4: IntPoly
    a6: IntPoly
    reparam: tuple = (1, 0)
    B: int = 1
    sign_rule: SignRule = field(default_factory=lambda: SignRule("Equidistributed"))
    rank: int = 0
    expected_conductor: Optional[IntPoly] = None
    assert_factor_degrees_le3: bool = False

    def __post_init__(self):
        c, t0 = self.reparam
        if c <= 0:
            raise ValueError("reparametrization scale must be positive")
        if c != 1 or t0 != 0:
            for name in ("a1", "a2", "a3", "a4", "a6"):
                object.__setattr__(self, name,
                                   getattr(self, name).compose_affine(c, t0))
        inv = invariants(self)
        object.__setattr__(self, "_inv", inv)

    # -- derived data ------------------------------------------------------

    @property
    def inv(self):
        return self._inv

    @property
    def abc_flag(self):
        """True when an irreducible factor of the discriminant may have
        degree >= 4, making the sieve cardinality ABC-conditional."""
        if self.assert_factor_degrees_le3:
            return False
        return self._inv["D"].degree >= 4

    def specialize(self, t):
        """Integer Weierstrass coefficients of the fiber at integer t."""
        if self._inv["delta"].eval(t) == 0:
            raise SingularFiberError(f"{self.label}: singular fiber at t={t}")
        return (self.a1.eval(t), self.a2.eval(t), self.a3.eval(t),
                self.a4.eval(t), self.a6.eval(t))

    def delta_at(self, t):
        return self._inv["delta"].eval(t)


def invariants(f: FamilyDef) -> dict:
    """Standard Weierstrass quantities of the family as polynomials.

    D is the primitive square-free part of the discriminant; D1 collects
    the factors shared with c4, D2 = D/D1 the rest (M = D2).
    """
    a1, a2, a3, a4, a6 = f.a1, f.a2, f.a3, f.a4, f.a6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    delta = -b2 * b2 * b8 - 8 * (b4 ** 3) - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if delta.is_zero():
        raise DegenerateFamilyError(f"{f.label}: discriminant identically zero")
    assert c4 ** 3 - c6 ** 2 == 1728 * delta
    assert 4 * b8 == b2 * b6 - b4 * b4
    D = radical(delta)
    if c4.is_zero():
        D1 = IntPoly([1])
    else:
        D1 = gcd(D, radical(c4))
    D2 = divexact(D, D1).primitive()
    return {"b2": b2, "b4": b4, "b6": b6, "b8": b8, "c4": c4, "c6": c6,
            "delta": delta, "D": D, "D1": D1, "D2": D2, "M": D2}


def is_rational_surface(f: FamilyDef):
    """Classify the family as a rational elliptic surface.

    After reduction to y^2 = x^3 + A(t)x + B(t) (constant rescaling of
    c4, c6), the family is rational when 0 < max(3 deg A, 2 deg B) < 12
    (case 1), or when that maximum is 12 and the short-form discriminant
    has degree exactly 12 (case 2).
    """
    inv = f.inv
    degA = max(inv["c4"].degree, 0)
    degB = max(inv["c6"].degree, 0)
    if inv["c4"].is_zero():
        degA = 0
    if inv["c6"].is_zero():
        degB = 0
    m = max(3 * degA, 2 * degB)
    if 0 < m < 12:
        return True, 1
    if m == 12:
        # case 2: t^12 * Delta(1/t) is nonzero at t=0, i.e. the
        # discriminant has degree exactly 12
        if inv["delta"].degree == 12:
            return True, 2
    return False, 0


def sign(f: FamilyDef, t: int):
    """Sign of the functional equation of the fiber at t, or None.

    Returns +1, -1, or None ("unknown") when the rule's factorization
    backend cannot complete or the rule's precondition fails at t.
    """
    rule = f.sign_rule
    if rule.kind == "AllEven":
        return 1
    if rule.kind == "AllOdd":
        return -1
    if rule.kind == "Equidistributed":
        raise ValueError("equidistributed rule has no per-fiber sign")
    from .tate import factorize

    Dval = rule.D.eval(t)
    if Dval == 0:
        return None
    fac = factorize(abs(Dval))
    if fac.cofactor != 1:
        return None
    if rule.kind == "BirchStephensCubic":
        # curve y^2 = x^3 + D^2-flavored cubic twist; D must be cube-free
        if any(e >= 3 for e in fac.prime_powers.values()):
            return None
        w3 = -1 if Dval % 9 in (1, 3, 6, 8) else 1
        eps = -w3
        for p in fac.prime_powers:
            if p != 3 and p % 3 == 2:
                eps = -eps
        return eps
    # BirchStephensQuartic: y^2 = x^3 + 4Dx with 4 not | D, D 4th-power-free
    if Dval % 4 == 0 or any(e >= 4 for e in fac.prime_powers.values()):
        return None
    eps = -1 if Dval > 0 else 1  # w_infinity = sgn(-D)
    if Dval % 16 in (1, 3, 11, 13):
        eps = -eps  # w_2
    for p, e in fac.prime_powers.items():
        if e == 2 and p % 4 == 3:
            eps = -eps
    return eps


def n_minus(f: FamilyDef, good_t) -> Fraction:
    """Exact fraction of odd-sign fibers among the given good t values.

    The Equidistributed rule returns 1/2 exactly; fibers whose sign the
    rule cannot decide are counted at 1/2 as well.
    """
    rule = f.sign_rule
    if rule.kind == "Equidistributed":
        return Fraction(1, 2)
    if rule.kind == "AllEven":
        return Fraction(0)
    if rule.kind == "AllOdd":
        return Fraction(1)
    good_t = list(good_t)
    if not good_t:
        return Fraction(0)
    acc = Fraction(0)
    for t in good_t:
        s = sign(f, t)
        if s is None:
            acc += Fraction(1, 2)
        elif s == -1:
            acc += 1
    return acc / len(good_t)


# -- built-in presets ------------------------------------------------------

def _presets():
    z = poly()
    f1 = FamilyDef(
        label="F1",
        a1=z, a2=z, a3=z, a4=z,
        a6=IntPoly([-432]) * poly(1, 9) ** 2,
        sign_rule=SignRule("BirchStephensCubic", poly(1, 9)),
        rank=0,
        expected_conductor=IntPoly([27]) * poly(1, 9) ** 2,
        assert_factor_degrees_le3=True,
    )
    f2p = FamilyDef(
        label="F2plus",
        a1=z, a2=z, a3=z,
        a4=poly(8, 16), a6=z,
        sign_rule=SignRule("BirchStephensQuartic", poly(2, 4)),
        rank=0,
        expected_conductor=IntPoly([64]) * poly(2, 4) ** 2,
        assert_factor_degrees_le3=True,
    )
    f2m = FamilyDef(
        label="F2minus",
        a1=z, a2=z, a3=z,
        a4=poly(-8, -16), a6=z,
        sign_rule=SignRule("BirchStephensQuartic", poly(-2, -4)),
        rank=0,
        expected_conductor=IntPoly([64]) * poly(2, 4) ** 2,
        assert_factor_degrees_le3=True,
    )
    washington = FamilyDef(
        label="washington",
        a1=z, a2=poly(0, 1), a3=z,
        a4=poly(-3, -1), a6=poly(1),
        reparam=(12, 1),
        sign_rule=SignRule("AllOdd"),
        rank=1,
        expected_conductor=IntPoly([8]) * poly(13, 60, 144),
        assert_factor_degrees_le3=True,
    )
    rank1 = FamilyDef(
        label="rank1",
        a1=z, a2=poly(0, 1), a3=z,
        a4=z, a6=poly(1),
        reparam=(6, 1),
        sign_rule=SignRule("Equidistributed"),
        rank=1,
        expected_conductor=IntPoly([4]) * (4 * poly(1, 6) ** 3 + 27),
        assert_factor_degrees_le3=True,
    )
    A = 8916100448256000000
    B = -811365140824616222208
    C = 26497490347321493520384
    D = -343107594345448813363200
    a = 16660111104
    b = -1603174809600
    c = 2149908480000
    q = poly(1 - A, 2, 1)  # t^2 + 2t - A + 1
    rank6 = FamilyDef(
        label="rank6",
        a1=z, a3=z,
        a2=poly(-B, 2 * a),
        a4=poly(-C, 2 * b) * q,
        a6=poly(-D, 2 * c) * q ** 2,
        sign_rule=SignRule("Equidistributed"),
        rank=6,
    )
    return {f.label: f for f in (f1, f2p, f2m, washington, rank1, rank6)}


PRESETS = _presets()


def get_family(name: str) -> FamilyDef:
    key = name.strip()
    for label, fam in PRESETS.items():
        if label.lower() == key.lower():
            return fam
    raise KeyError(f"unknown family {name!r}; presets: {sorted(PRESETS)}")


# -- config file I/O -------------------------------------------------------

def load_family(path) -> FamilyDef:
    """Load a family from a UTF-8 JSON config file.

    Schema: {"label", "a": [[a1],...,[a6]] ascending coefficient lists,
    "reparam": [c, t0], "B": int, "sign_rule": {"kind", "D": coeffs?},
    "rank": int, "expected_conductor": coeffs or null,
    "assert_factor_degrees_le3": bool}.
    """
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    a = [IntPoly(cs) for cs in cfg["a"]]
    if len(a) == 6:
        a = a[:4] + [a[5]]  # drop the unused a5 slot
    if len(a) != 5:
        raise ValueError("config 'a' must list coefficient arrays for "
                         "a1, a2, a3, a4, a6")
    sr = cfg.get("sign_rule", {"kind": "Equidistributed"})
    if isinstance(sr, str):
        sr = {"kind": sr}
    rule = SignRule(sr["kind"], IntPoly(sr["D"]) if sr.get("D") else None)
    ec = cfg.get("expected_conductor")
    return FamilyDef(
        label=cfg["label"],
        a1=a[0], a2=a[1], a3=a[2], a4=a[3], a6=a[4],
        reparam=tuple(cfg.get("reparam", (1, 0))),
        B=int(cfg.get("B", 1)),
        sign_rule=rule,
        rank=int(cfg.get("rank", 0)),
        expected_conductor=IntPoly(ec) if ec else None,
        assert_factor_degrees_le3=bool(cfg.get("assert_factor_degrees_le3", False)),
    )
