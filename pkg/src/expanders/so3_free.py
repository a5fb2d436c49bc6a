"""Exact certification that two rational rotations of R³ generate a free group.

The rotations are by ``arccos(1/3)`` about the x-axis (A) and the z-axis (B).
Words are strings over ``A, a, B, b`` where the lowercase letter is the
inverse; a word acts right-to-left, so its last letter is applied first.
Orbit points of ``e₁`` are stored as ``3^(-k)·(x, y√2, z)`` with integer x, y, z.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Literal

LETTERS = "AaBb"
INVERSE = {"A": "a", "a": "A", "B": "b", "b": "B"}


@dataclass(frozen=True)
class ScaledVector:
    k: int
    x: int
    y: int
    z: int

    def canonical(self) -> "ScaledVector":
        k, x, y, z = self.k, self.x, self.y, self.z
        while k > 0 and x % 3 == 0 and y % 3 == 0 and z % 3 == 0:
            k, x, y, z = k - 1, x // 3, y // 3, z // 3
        return ScaledVector(k, x, y, z)

    def value(self) -> tuple[Fraction, Fraction, Fraction]:
        """Coordinates as ``(x, y', z)`` where the middle entry multiplies √2."""
        s = 3 ** self.k
        return (Fraction(self.x, s), Fraction(self.y, s), Fraction(self.z, s))

    def is_e1(self) -> bool:
        return self.value() == (1, 0, 0)


E1 = ScaledVector(0, 1, 0, 0)


def _step(letter: str, v: ScaledVector) -> ScaledVector:
    """Unreduced update: exponent grows by one."""
    x, y, z = v.x, v.y, v.z
    if letter == "A":
        return ScaledVector(v.k + 1, 3 * x, y - 2 * z, z + 4 * y)
    if letter == "a":
        return ScaledVector(v.k + 1, 3 * x, y + 2 * z, z - 4 * y)
    if letter == "B":
        return ScaledVector(v.k + 1, x - 4 * y, y + 2 * x, 3 * z)
    if letter == "b":
        return ScaledVector(v.k + 1, x + 4 * y, y - 2 * x, 3 * z)
    raise ValueError(f"unknown letter {letter!r}")


def apply_letter(letter: str, v: ScaledVector, reduce: bool = True) -> ScaledVector:
    out = _step(letter, v)
    return out.canonical() if reduce else out


def is_reduced(word: str) -> bool:
    return all(c in LETTERS for c in word) and all(INVERSE[a] != b for a, b in zip(word, word[1:]))


def evaluate_word(word: str, reduce: bool = False) -> ScaledVector:
    """``w(e₁)``; unreduced by default so the exponent equals ``len(word)``."""
    if not is_reduced(word):
        raise ValueError(f"{word!r} is not a reduced word over {LETTERS}")
    v = E1
    for letter in reversed(word):
        v = _step(letter, v)
    return v.canonical() if reduce else v


def letter_divisibility_holds(letter: str, v: ScaledVector) -> bool:
    """After A or a the x-coordinate is divisible by 3; after B or b the z-coordinate is."""
    return (v.x if letter in "Aa" else v.z) % 3 == 0


# ---------------------------------------------------------------- exact matrices over Q(√2)

Q2 = tuple[Fraction, Fraction]  # a + b√2


def q2_add(p: Q2, q: Q2) -> Q2:
    return (p[0] + q[0], p[1] + q[1])


def q2_mul(p: Q2, q: Q2) -> Q2:
    return (p[0] * q[0] + 2 * p[1] * q[1], p[0] * q[1] + p[1] * q[0])


Q2Matrix = tuple[tuple[Q2, ...], ...]


def _q(a: int | Fraction = 0, b: int | Fraction = 0) -> Q2:
    return (Fraction(a), Fraction(b))


def rotation_matrices() -> dict[str, Q2Matrix]:
    third, root = Fraction(1, 3), Fraction(2, 3)
    zero, one = _q(), _q(1)
    A = ((one, zero, zero), (zero, _q(third), _q(0, -root)), (zero, _q(0, root), _q(third)))
    B = ((_q(third), _q(0, -root), zero), (_q(0, root), _q(third), zero), (zero, zero, one))
    return {"A": A, "a": q2_transpose(A), "B": B, "b": q2_transpose(B)}


def q2_transpose(M: Q2Matrix) -> Q2Matrix:
    return tuple(tuple(M[j][i] for j in range(len(M))) for i in range(len(M[0])))


def q2_matmul(M: Q2Matrix, N: Q2Matrix) -> Q2Matrix:
    out = []
    for i in range(len(M)):
        row = []
        for j in range(len(N[0])):
            acc = _q()
            for t in range(len(N)):
                acc = q2_add(acc, q2_mul(M[i][t], N[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def is_orthogonal(M: Q2Matrix) -> bool:
    n = len(M)
    eye = tuple(tuple(_q(int(i == j)) for j in range(n)) for i in range(n))
    return q2_matmul(q2_transpose(M), M) == eye


def evaluate_word_matrices(word: str) -> tuple[Q2, Q2, Q2]:
    """``w(e₁)`` via the exact matrix product; an independent route for checking ``evaluate_word``."""
    mats = rotation_matrices()
    col: Q2Matrix = ((_q(1),), (_q(),), (_q(),))
    for letter in reversed(word):
        col = q2_matmul(mats[letter], col)
    return (col[0][0], col[1][0], col[2][0])


def scaled_to_q2(v: ScaledVector) -> tuple[Q2, Q2, Q2]:
    x, y, z = v.value()
    return ((x, Fraction(0)), (Fraction(0), y), (z, Fraction(0)))


# ---------------------------------------------------------------- certification

def words_ending_in_b(max_length: int) -> Iterator[str]:
    """Reduced words of length 1..max_length whose last letter is B or b."""
    stack = [(c,) for c in "Bb"]
    while stack:
        w = stack.pop()
        yield "".join(w)
        if len(w) < max_length:
            stack.extend((c,) + w for c in LETTERS if c != INVERSE[w[0]])


@dataclass
class FreenessCertificate:
    max_length: int
    mode: Literal["exact", "residue"]
    words_checked: int
    words_by_length: list[int]
    passed: bool
    divisibility_checked: bool
    first_failure: str | None = None
    conjugation_note: str = field(default="words ending in A or a reduce to B-ending words by conjugation with B")

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def certify_free(max_length: int, residue_only: bool = False) -> FreenessCertificate:
    """Check ``y ≢ 0 (mod 3)`` for every reduced word of length ≤ L ending in B or b.

    Exact mode walks the word tree depth-first with the integer vector carried
    along (and also checks the divisibility of x or z after each letter).
    Residue mode propagates path counts over the 27·4 states of coordinates
    mod 3 and the leading letter, so long lengths stay cheap.
    """
    if max_length < 1:
        raise ValueError("max_length ≥ 1 required")
    if residue_only:
        return _certify_residues(max_length)
    by_length = [0] * (max_length + 1)
    stack: list[tuple[str, ScaledVector, int]] = [(c, _step(c, E1), 1) for c in "bB"]
    failure = None
    divisibility = True
    while stack:
        lead, v, length = stack.pop()
        by_length[length] += 1
        if not letter_divisibility_holds(lead, v):
            divisibility = False
        if v.y % 3 == 0 and failure is None:
            failure = f"length {length}, leading letter {lead}"
        if length < max_length:
            for c in LETTERS:
                if c != INVERSE[lead]:
                    stack.append((c, _step(c, v), length + 1))
    return FreenessCertificate(max_length, "exact", sum(by_length), by_length[1:],
                               failure is None and divisibility, divisibility, failure)


def _certify_residues(max_length: int) -> FreenessCertificate:
    counts: dict[tuple[str, int, int, int], int] = {}
    for c in "Bb":
        v = _step(c, E1)
        key = (c, v.x % 3, v.y % 3, v.z % 3)
        counts[key] = counts.get(key, 0) + 1
    by_length = []
    failure = None
    divisibility = True
    for length in range(1, max_length + 1):
        by_length.append(sum(counts.values()))
        for (lead, x, y, z), _ in counts.items():
            if not letter_divisibility_holds(lead, ScaledVector(0, x, y, z)):
                divisibility = False
            if y == 0 and failure is None:
                failure = f"length {length}, leading letter {lead}"
        if length == max_length:
            break
        nxt: dict[tuple[str, int, int, int], int] = {}
        for (lead, x, y, z), cnt in counts.items():
            for c in LETTERS:
                if c == INVERSE[lead]:
                    continue
                w = _step(c, ScaledVector(0, x, y, z))
                key = (c, w.x % 3, w.y % 3, w.z % 3)
                nxt[key] = nxt.get(key, 0) + cnt
        counts = nxt
    return FreenessCertificate(max_length, "residue", sum(by_length), by_length,
                               failure is None and divisibility, divisibility, failure)
