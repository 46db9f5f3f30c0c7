"""Exact arithmetic for the continuum family of semilattices on {m + n*alpha}.

For a quadratic irrational alpha, the set {m + n*alpha : m, n integers} with
minimum as meet and the two coordinate shifts as commuting automorphisms is a
semilattice over the free abelian group of rank two.  Every comparison here
is exact integer arithmetic: the sign of A + B*sqrt(d) is resolved by
comparing A^2 against B^2*d with the signs of A and B, which can never tie
because d is square-free.  No floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def _sqrtfree(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def sign_with_radical(a: int, b: int, d: int) -> int:
    """Exact sign of a + b*sqrt(d), d square-free and >= 2."""
    if b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with b^2*d; equality would make sqrt(d) rational
    cmp = _sign(a * a - b * b * d)
    assert cmp != 0, "square-free radicand cannot produce a tie"
    return cmp if a > 0 else -cmp


@dataclass(frozen=True)
class QuadraticIrrational:
    """(p + q*sqrt(d)) / r with q != 0, r > 0, d square-free >= 2, gcd(p,q,r) = 1."""

    p: int
    q: int
    r: int
    d: int

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q = 0 would make the value rational")
        if self.r == 0:
            raise ValueError("zero denominator")
        if not _sqrtfree(self.d):
            raise ValueError(f"radicand {self.d} must be square-free and >= 2")
        p, q, r = self.p, self.q, self.r
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(abs(p), abs(q)), r)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "r", r // g)

    def __str__(self) -> str:
        if self.p == 0 and self.q == 1 and self.r == 1:
            return f"sqrt:{self.d}"
        return f"({self.p}+{self.q}*sqrt:{self.d})/{self.r}"


def sqrt_of(d: int) -> QuadraticIrrational:
    return QuadraticIrrational(0, 1, 1, d)


_IRRATIONAL_RE = re.compile(
    r"^\(\s*(-?\d+)\s*\+\s*(-?\d+)\s*\*\s*sqrt:(\d+)\s*\)\s*/\s*(-?\d+)$"
)


def parse_irrational(text: str) -> QuadraticIrrational:
    """Accepts ``sqrt:D`` or ``(P+Q*sqrt:D)/R``."""
    text = text.strip()
    if text.startswith("sqrt:"):
        return sqrt_of(int(text[5:]))
    m = _IRRATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse irrational {text!r}; use sqrt:D or (P+Q*sqrt:D)/R")
    p, q, d, r = (int(m.group(i)) for i in (1, 2, 3, 4))
    return QuadraticIrrational(p, q, r, d)


def compare_values(alpha: QuadraticIrrational, beta: QuadraticIrrational) -> int:
    """Exact sign of alpha - beta, also across different radicands.

    The difference has the shape A + B*sqrt(d1) + C*sqrt(d2); the two-radical
    case is settled by comparing X = A + B*sqrt(d1) against Y = -C*sqrt(d2):
    with equal signs, sign(X^2 - Y^2) is again a single-radical sign.
    """
    a = alpha.p * beta.r - beta.p * alpha.r
    b = alpha.q * beta.r
    c = -beta.q * alpha.r
    if alpha.d == beta.d:
        return sign_with_radical(a, b + c, alpha.d)
    if b == 0:
        return sign_with_radical(a, c, beta.d)
    if c == 0:
        return sign_with_radical(a, b, alpha.d)
    sx = sign_with_radical(a, b, alpha.d)
    sy = _sign(-c)
    if sx != sy:
        return sx if sx != 0 else -sy
    if sx == 0:
        return 0
    diff_sq = sign_with_radical(a * a + b * b * alpha.d - c * c * beta.d, 2 * a * b, alpha.d)
    return diff_sq if sx > 0 else -diff_sq


def compare_with_rational(alpha: QuadraticIrrational, num: int, den: int) -> int:
    """Exact sign of num/den - alpha (den > 0)."""
    if den <= 0:
        raise ValueError("positive denominators only")
    return sign_with_radical(num * alpha.r - den * alpha.p, -den * alpha.q, alpha.d)


@dataclass(frozen=True)
class BAlphaElement:
    """The carrier element m + n*alpha, unique as a pair because alpha is irrational."""

    m: int
    n: int

    def __str__(self) -> str:
        return f"{self.m}+{self.n}a"


def cmp(alpha: QuadraticIrrational, x: BAlphaElement, y: BAlphaElement) -> int:
    """Exact sign of x - y: (dm*r + dn*p) + dn*q*sqrt(d), all integers."""
    dm = x.m - y.m
    dn = x.n - y.n
    return sign_with_radical(dm * alpha.r + dn * alpha.p, dn * alpha.q, alpha.d)


def act(alpha: QuadraticIrrational, g: tuple[int, int], x: BAlphaElement) -> BAlphaElement:
    """Action of the group pair (i, j): add i to the rational and j to the
    irrational coordinate."""
    i, j = g
    return BAlphaElement(x.m + i, x.n + j)


def meet(alpha: QuadraticIrrational, x: BAlphaElement, y: BAlphaElement) -> BAlphaElement:
    return x if cmp(alpha, x, y) <= 0 else y


def rational_between(alpha: QuadraticIrrational, beta: QuadraticIrrational) -> tuple[int, int]:
    """Minimal-denominator rational strictly between alpha < beta, found by
    descending the Stern-Brocot tree of all rationals."""
    if compare_values(alpha, beta) >= 0:
        raise ValueError("need alpha < beta")
    lo = (-1, 0)
    hi = (1, 0)
    while True:
        num, den = lo[0] + hi[0], lo[1] + hi[1]
        if den == 0:
            num, den = 0, 1  # root of the tree extended over all rationals
        if compare_with_rational(alpha, num, den) <= 0:
            lo = (num, den)
        elif compare_with_rational(beta, num, den) >= 0:
            hi = (num, den)
        else:
            return num, den


def _sample_points(count: int, window: int = 8) -> list[BAlphaElement]:
    """Deterministic sample order: expanding square shells around the origin."""
    points = sorted(
        (
            (max(abs(m), abs(n)), m, n)
            for m in range(-window, window + 1)
            for n in range(-window, window + 1)
        ),
    )
    return [BAlphaElement(m, n) for _, m, n in points[:count]]


@dataclass(frozen=True)
class IdentityCertificate:
    """Exact verdict for min(x + p, x + q*alpha) = x + q*alpha in one algebra.

    The identity is element-independent: it holds exactly when q*alpha < p,
    whose sign reduces to the integers below (a + b*sqrt(d) with its squared
    comparison a^2 versus b^2*d)."""

    alpha: str
    holds: bool
    a: int
    b: int
    d: int
    a_squared: int
    b_squared_d: int

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "holds": self.holds,
            "sign_terms": {"a": self.a, "b": self.b, "d": self.d},
            "squares": {"a^2": self.a_squared, "b^2*d": self.b_squared_d},
        }


def _identity_certificate(alpha: QuadraticIrrational, p: int, q: int) -> IdentityCertificate:
    a = p * alpha.r - q * alpha.p
    b = -q * alpha.q
    return IdentityCertificate(
        alpha=str(alpha),
        holds=sign_with_radical(a, b, alpha.d) > 0,
        a=a,
        b=b,
        d=alpha.d,
        a_squared=a * a,
        b_squared_d=b * b * alpha.d,
    )


@dataclass(frozen=True)
class SampleLine:
    x: BAlphaElement
    equal: bool


@dataclass(frozen=True)
class SeparationReport:
    p: int
    q: int
    alpha_certificate: IdentityCertificate
    beta_certificate: IdentityCertificate
    alpha_samples: tuple[SampleLine, ...]
    beta_samples: tuple[SampleLine, ...]
    witness: BAlphaElement | None

    @property
    def separates(self) -> bool:
        return self.alpha_certificate.holds and not self.beta_certificate.holds

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "separates": self.separates,
            "alpha": self.alpha_certificate.to_dict(),
            "beta": self.beta_certificate.to_dict(),
            "witness": None if self.witness is None else [self.witness.m, self.witness.n],
            "alpha_samples": [[s.x.m, s.x.n, s.equal] for s in self.alpha_samples],
            "beta_samples": [[s.x.m, s.x.n, s.equal] for s in self.beta_samples],
        }


def _identity_samples(
    alpha: QuadraticIrrational, p: int, q: int, count: int
) -> tuple[SampleLine, ...]:
    lines = []
    for x in _sample_points(count):
        lhs = meet(alpha, act(alpha, (p, 0), x), act(alpha, (0, q), x))
        rhs = act(alpha, (0, q), x)
        lines.append(SampleLine(x, cmp(alpha, lhs, rhs) == 0))
    return tuple(lines)


def check_separating_identity(
    alpha: QuadraticIrrational,
    beta: QuadraticIrrational,
    p: int,
    q: int,
    sample_count: int = 25,
) -> SeparationReport:
    """Certify that min((p,0)x, (0,q)x) = (0,q)x holds in the alpha-algebra
    and fails in the beta-algebra, given alpha < p/q < beta.

    The universal verdict is the exact sign of p - q*alpha (the identity never
    depends on x); the samples are an illustrative trace on a finite window.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if not (compare_with_rational(alpha, p, q) > 0 and compare_with_rational(beta, p, q) < 0):
        raise ValueError("need alpha < p/q < beta")
    cert_a = _identity_certificate(alpha, p, q)
    cert_b = _identity_certificate(beta, p, q)
    samples_a = _identity_samples(alpha, p, q, sample_count)
    samples_b = _identity_samples(beta, p, q, sample_count)
    witness = next((s.x for s in samples_b if not s.equal), None)
    return SeparationReport(p, q, cert_a, cert_b, samples_a, samples_b, witness)
