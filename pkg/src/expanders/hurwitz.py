"""Exact arithmetic in the Hurwitz order, norm-form enumeration, and the M₂(F_p) ideal census.

A ``HurwitzInt`` stores doubled coordinates ``(u0, u1, u2, u3)`` of
``(u0 + u1 i + u2 j + u3 k) / 2``; all four share a parity.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal, NamedTuple

Ring = Literal["integral", "hurwitz"]
ENUMERATION_LIMIT = 10**4


@dataclass(frozen=True, order=True)
class HurwitzInt:
    u0: int
    u1: int
    u2: int
    u3: int

    def __post_init__(self) -> None:
        if len({self.u0 & 1, self.u1 & 1, self.u2 & 1, self.u3 & 1}) != 1:
            raise ValueError("doubled coordinates must share a parity")

    @classmethod
    def integral(cls, a0: int, a1: int = 0, a2: int = 0, a3: int = 0) -> "HurwitzInt":
        return cls(2 * a0, 2 * a1, 2 * a2, 2 * a3)

    @property
    def doubled(self) -> tuple[int, int, int, int]:
        return (self.u0, self.u1, self.u2, self.u3)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(u, 2) for u in self.doubled)

    @property
    def is_integral(self) -> bool:
        return self.u0 % 2 == 0

    def integer_coords(self) -> tuple[int, int, int, int]:
        if not self.is_integral:
            raise ValueError("element has half-integer coordinates")
        return tuple(u // 2 for u in self.doubled)  # type: ignore[return-value]

    def __add__(self, o: "HurwitzInt") -> "HurwitzInt":
        return HurwitzInt(*(a + b for a, b in zip(self.doubled, o.doubled)))

    def __sub__(self, o: "HurwitzInt") -> "HurwitzInt":
        return HurwitzInt(*(a - b for a, b in zip(self.doubled, o.doubled)))

    def __neg__(self) -> "HurwitzInt":
        return HurwitzInt(-self.u0, -self.u1, -self.u2, -self.u3)

    def __mul__(self, o: "HurwitzInt | int") -> "HurwitzInt":
        if isinstance(o, int):
            return HurwitzInt(*(o * a for a in self.doubled))
        return mul(self, o)

    __rmul__ = __mul__

    def conj(self) -> "HurwitzInt":
        return conj(self)

    def norm(self) -> int:
        return norm(self)

    def scaled_down(self, d: int) -> "HurwitzInt":
        """Exact division by the integer d."""
        if any(u % d for u in self.doubled):
            raise ValueError(f"{self} is not divisible by {d}")
        return HurwitzInt(*(u // d for u in self.doubled))

    def divisible_by(self, d: int) -> bool:
        """True when ``self = d·γ`` for a Hurwitz integer γ."""
        try:
            self.scaled_down(d)
            return True
        except ValueError:
            return False

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


ZERO = HurwitzInt(0, 0, 0, 0)
ONE = HurwitzInt.integral(1)
I = HurwitzInt.integral(0, 1)
J = HurwitzInt.integral(0, 0, 1)
K = HurwitzInt.integral(0, 0, 0, 1)
F = HurwitzInt(1, 1, 1, 1)  # (1 + i + j + k)/2


def _hamilton(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, int, int, int]:
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def mul(a: HurwitzInt, b: HurwitzInt) -> HurwitzInt:
    # (u/2)(v/2) = uv/4, so the doubled result is uv/2
    prod = _hamilton(a.doubled, b.doubled)
    if any(x % 2 for x in prod):  # pragma: no cover - the order is closed under products
        raise ArithmeticError("product left the Hurwitz order")
    return HurwitzInt(*(x // 2 for x in prod))


def conj(a: HurwitzInt) -> HurwitzInt:
    return HurwitzInt(a.u0, -a.u1, -a.u2, -a.u3)


def norm(a: HurwitzInt) -> int:
    s = sum(u * u for u in a.doubled)
    return s // 4


def units() -> list[HurwitzInt]:
    """The 24 units: ±1, ±i, ±j, ±k and (±1 ± i ± j ± k)/2."""
    out = []
    for pos in range(4):
        for sign in (2, -2):
            u = [0, 0, 0, 0]
            u[pos] = sign
            out.append(HurwitzInt(*u))
    out += [HurwitzInt(*s) for s in itertools.product((1, -1), repeat=4)]
    return out


def integral_units() -> list[HurwitzInt]:
    return [u for u in units() if u.is_integral]


# ---------------------------------------------------------------- division

def _nearest_on_grid(values: list[Fraction], offset: Fraction) -> list[Fraction]:
    # nearest point of (offset + Z)^4, ties to even
    return [offset + round(v - offset) for v in values]


def _divide_by_integer(alpha: HurwitzInt, n: int) -> HurwitzInt:
    """Hurwitz integer nearest to ``alpha / n``.

    Both cosets of the integral lattice inside the Hurwitz order are rounded
    coordinatewise (ties to even) and the closer candidate wins, the integral
    one on a tie.  The squared distance is at most 1/2, so the remainder norm
    is at most half the divisor's norm.
    """
    target = [Fraction(u, 2 * n) for u in alpha.doubled]
    best = None
    for offset in (Fraction(0), Fraction(1, 2)):
        cand = _nearest_on_grid(target, offset)
        dist = sum((c - t) ** 2 for c, t in zip(cand, target))
        if best is None or dist < best[0]:
            best = (dist, cand)
    return HurwitzInt(*(int(2 * c) for c in best[1]))


def left_divmod(alpha: HurwitzInt, beta: HurwitzInt) -> tuple[HurwitzInt, HurwitzInt]:
    """``(γ, δ)`` with ``α = γβ + δ`` and ``N(δ) < N(β)``."""
    if beta == ZERO:
        raise ZeroDivisionError("division by zero quaternion")
    nb = norm(beta)
    gamma = _divide_by_integer(alpha * conj(beta), nb)
    delta = alpha - gamma * beta
    if not norm(delta) < nb:  # pragma: no cover - guaranteed by the rounding bound
        raise ArithmeticError("division remainder too large")
    return gamma, delta


def left_xgcd(alpha: HurwitzInt, beta: HurwitzInt) -> tuple[HurwitzInt, HurwitzInt, HurwitzInt]:
    """``(g, x, y)`` with ``g = xα + yβ`` generating the left ideal ``Hα + Hβ``."""
    if alpha == ZERO and beta == ZERO:
        raise ValueError("both arguments are zero")
    # invariants: a = xa*alpha + ya*beta, b = xb*alpha + yb*beta
    a, xa, ya = alpha, ONE, ZERO
    b, xb, yb = beta, ZERO, ONE
    while b != ZERO:
        q, rem = left_divmod(a, b)
        a, xa, ya, b, xb, yb = b, xb, yb, rem, xa - q * xb, ya - q * yb
    return a, xa, ya


def left_gcd(alpha: HurwitzInt, beta: HurwitzInt) -> HurwitzInt:
    return left_xgcd(alpha, beta)[0]


def right_divides(g: HurwitzInt, alpha: HurwitzInt) -> bool:
    """True when ``α = sg`` for some Hurwitz integer s."""
    return left_divmod(alpha, g)[1] == ZERO


def same_left_ideal(a: HurwitzInt, b: HurwitzInt) -> bool:
    """Mutual membership: each generator lies in the ideal of the other."""
    return right_divides(a, b) and right_divides(b, a)


# ---------------------------------------------------------------- enumeration

def _sum_of_four_squares(total: int, odd: bool | None) -> list[tuple[int, int, int, int]]:
    """Integer 4-tuples with square sum ``total``; ``odd`` restricts every entry's parity (None: any)."""
    out = []
    bound = math.isqrt(total)
    grid = [x for x in range(-bound, bound + 1) if odd is None or (x & 1) == odd]
    for x0 in grid:
        r0 = total - x0 * x0
        b1 = math.isqrt(r0)
        for x1 in grid:
            if abs(x1) > b1:
                continue
            r1 = r0 - x1 * x1
            b2 = math.isqrt(r1)
            for x2 in grid:
                if abs(x2) > b2:
                    continue
                r2 = r1 - x2 * x2
                x3 = math.isqrt(r2)
                if x3 * x3 == r2 and (odd is None or (x3 & 1) == odd):
                    out.append((x0, x1, x2, x3))
                    if x3:
                        out.append((x0, x1, x2, -x3))
    return out


def enumerate_norm(N: int, ring: Ring = "integral") -> list[HurwitzInt]:
    """Every element of the chosen ring with norm N."""
    if not 0 <= N <= ENUMERATION_LIMIT:
        raise ValueError(f"norm must lie in 0..{ENUMERATION_LIMIT}")
    if ring not in ("integral", "hurwitz"):
        raise ValueError(f"unknown ring {ring!r}")
    found = [HurwitzInt(*(2 * x for x in t)) for t in _sum_of_four_squares(N, odd=None)]
    if ring == "hurwitz":
        found += [HurwitzInt(*t) for t in _sum_of_four_squares(4 * N, odd=True)]
    return sorted(found)


def divisor_sum(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def representatives_S(p: int) -> list[HurwitzInt]:
    """Integral norm-p elements with odd positive real part (p ≡ 1 mod 4)."""
    if p % 4 != 1 or p > ENUMERATION_LIMIT or not _is_prime(p):
        raise ValueError("p must be a prime ≡ 1 (mod 4) up to 10^4")
    return [a for a in enumerate_norm(p) if a.u0 > 0 and (a.u0 // 2) % 2 == 1]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def canonical_associate(alpha: HurwitzInt) -> HurwitzInt:
    """Canonical member of ``{ε α : ε integral unit}`` for an integral α of odd norm.

    Preference order: real part odd when N(α) ≡ 1 (mod 4) and even otherwise,
    then positive real part, then the lexicographically largest coordinates.
    For p ≡ 1 (mod 4) and norm p this is the unique associate with odd
    positive real part.
    """
    return max(integral_associates(alpha), key=_associate_rank)


def integral_associates(alpha: HurwitzInt) -> list[HurwitzInt]:
    return [e * alpha for e in integral_units()]


def _associate_rank(a: HurwitzInt) -> tuple:
    c = a.integer_coords()
    wanted_parity = 1 if norm(a) % 4 == 1 else 0
    return (c[0] % 2 == wanted_parity, c[0] > 0, c)


def representative_set(p: int) -> list[HurwitzInt]:
    """One canonical integral associate per class of integral norm-p elements (p + 1 classes)."""
    return sorted({canonical_associate(a) for a in enumerate_norm(p)})


def factor_out_norm_p(alpha: HurwitzInt, p: int) -> tuple[HurwitzInt, HurwitzInt]:
    """``(β, π)`` with ``α = βπ``, ``N(π) = p`` and π the canonical integral associate."""
    if norm(alpha) % p:
        raise ValueError("p does not divide N(α)")
    if alpha.divisible_by(p):
        raise ValueError("α is divisible by p; divide it out first")
    g = left_gcd(alpha, HurwitzInt.integral(p))
    if norm(g) != p:  # pragma: no cover - the ideal is proper and strictly contains (p)
        raise ArithmeticError("gcd does not have norm p")
    pi = canonical_associate(next(u * g for u in units() if (u * g).is_integral))
    beta = (alpha * conj(pi)).scaled_down(p)
    assert beta * pi == alpha
    return beta, pi


def factor_norm_power(alpha: HurwitzInt, p: int) -> tuple[HurwitzInt, list[HurwitzInt]]:
    """``α = ε π_1 π_2 ... π_m`` with canonical norm-p factors and a unit ε."""
    factors: list[HurwitzInt] = []
    rest = alpha
    while norm(rest) > 1:
        rest, pi = factor_out_norm_p(rest, p)
        factors.insert(0, pi)
    return rest, factors


def reduced_words(S: list[HurwitzInt], m: int) -> list[tuple[HurwitzInt, ...]]:
    """Words over S of length m in which no letter is followed by the representative of its conjugate."""
    conj_rep = {s: canonical_associate(conj(s)) for s in S}
    words: list[tuple[HurwitzInt, ...]] = [()]
    for _ in range(m):
        words = [w + (s,) for w in words for s in S if not w or conj_rep[w[-1]] != s]
    return words


def word_product(w: tuple[HurwitzInt, ...]) -> HurwitzInt:
    out = ONE
    for s in w:
        out = out * s
    return out


def expression_census(p: int, k: int) -> tuple[int, int, bool]:
    """Count expressions ``ε p^r R_m`` (ε an integral unit, 2r + m = k) and compare with the norm-p^k elements.

    Returns (number of expressions, number of integral elements of norm p^k,
    whether the expressions hit every element exactly once).
    """
    S = representative_set(p)
    target = set(enumerate_norm(p ** k))
    products = []
    for r in range(k // 2 + 1):
        m = k - 2 * r
        for w in reduced_words(S, m):
            base = word_product(w) * (p ** r)
            products += [e * base for e in integral_units()]
    return len(products), len(target), len(set(products)) == len(products) and set(products) == target


# ---------------------------------------------------------------- M2(F_p)

Mat2 = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]]


def _m2_mul(x: Mat2, y: Mat2, p: int) -> Mat2:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _row_space(x: Mat2, p: int) -> frozenset[tuple[int, int]]:
    a, b, c, d = x
    return frozenset(((s * a + t * c) % p, (s * b + t * d) % p) for s in range(p) for t in range(p))


class IdealCensus(NamedTuple):
    singular_nonzero: int
    principal_proper_ideals: int
    orbit_size: int


def m2fp_ideal_census(p: int) -> IdealCensus:
    """Nonzero singular 2×2 matrices over F_p, grouped into left ideals by row space.

    Orbit sizes under left multiplication by GL₂(F_p) are computed explicitly
    and must all agree.
    """
    if p > 13 or not _is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime ≤ 13")
    allm = list(itertools.product(range(p), repeat=4))
    singular = [x for x in allm if any(x) and (x[0] * x[3] - x[1] * x[2]) % p == 0]
    classes: dict[frozenset, list[Mat2]] = {}
    for x in singular:
        classes.setdefault(_row_space(x, p), []).append(x)
    gl2 = [g for g in allm if (g[0] * g[3] - g[1] * g[2]) % p]
    sizes = set()
    for members_ in classes.values():
        rep = members_[0]
        orbit = {_m2_mul(g, rep, p) for g in gl2}
        if orbit != set(members_):
            raise AssertionError("orbit differs from the row-space class")
        sizes.add(len(orbit))
    if len(sizes) != 1:
        raise AssertionError("orbit sizes differ")
    return IdealCensus(len(singular), len(classes), sizes.pop())


class QuaternionMatrixMap(NamedTuple):
    p: int
    x: int  # square root of -1 mod p
    images: dict[str, Mat2]

    def __call__(self, coords: tuple[int, int, int, int]) -> Mat2:
        out = [0, 0, 0, 0]
        for c, name in zip(coords, ("1", "i", "j", "k")):
            out = [(o + c * m) % self.p for o, m in zip(out, self.images[name])]
        return tuple(out)  # type: ignore[return-value]


def sqrt_minus_one(p: int) -> int:
    return next(x for x in range(1, p) if (x * x + 1) % p == 0)


def hfp_to_m2(p: int) -> QuaternionMatrixMap:
    """Explicit isomorphism ``H(F_p) → M₂(F_p)`` for p ≡ 1 (mod 4)."""
    if p % 4 != 1 or not _is_prime(p):
        raise ValueError("only primes p ≡ 1 (mod 4) are supported")
    x = sqrt_minus_one(p)
    one = (1, 0, 0, 1)
    i_img = (x % p, 0, 0, (-x) % p)
    j_img = (0, 1, p - 1, 0)
    k_img = _m2_mul(i_img, j_img, p)
    return QuaternionMatrixMap(p, x, {"1": one, "i": i_img, "j": j_img, "k": k_img})


def quaternion_mul_mod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, int, int, int]:
    return tuple(x % p for x in _hamilton(a, b))  # type: ignore[return-value]


def count_summary(p: int, k: int, counter: Callable[[int], int] | None = None) -> tuple[int, int]:
    """(enumerated integral count of norm p^k, the value 8·Σ_{j≤k} p^j)."""
    counter = counter or (lambda N: len(enumerate_norm(N)))
    return counter(p ** k), 8 * sum(p ** j for j in range(k + 1))
