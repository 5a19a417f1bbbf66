"""Permutation algebra over {1, ..., n} in one-line notation.

A permutation is stored as a plain tuple of 1-based symbols, where entry
``k`` (0-based) is the image of position ``k+1``.  Tuples keep vertices
hashable and cheap, which matters because the bubble-sort network is
explored implicitly at n! scale.  Ranks follow the Lehmer code, so rank
order coincides with lexicographic order of the tuples; rank order is the
canonical tie-breaking order everywhere in this package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

Perm = tuple[int, ...]

MAX_ARITY = 12  # 12! still fits comfortably in a 64-bit rank

_FACT = [1]
for _k in range(1, MAX_ARITY + 1):
    _FACT.append(_FACT[-1] * _k)


def factorial(k: int) -> int:
    return _FACT[k]


def validate_perm(seq) -> Perm:
    """Return ``seq`` as a tuple after checking it is a permutation of 1..n.

    >>> validate_perm([2, 1, 3])
    (2, 1, 3)
    """
    u = tuple(seq)
    n = len(u)
    if not 2 <= n <= MAX_ARITY:
        raise ValueError(f"arity must be between 2 and {MAX_ARITY}, got {n}")
    if sorted(u) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {u!r}")
    return u


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def parse_perm(text: str) -> Perm:
    """Parse the textual form ``"(2,1,3)"``; whitespace is optional.

    >>> parse_perm(" ( 2, 1 ,3 ) ")
    (2, 1, 3)
    """
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"permutation text must be parenthesised: {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError("empty permutation")
    try:
        symbols = [int(p.strip()) for p in body.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad permutation text {text!r}") from exc
    return validate_perm(symbols)


def format_perm(u: Perm) -> str:
    return "(" + ",".join(str(s) for s in u) + ")"


def compose(sigma: Perm, pi: Perm) -> Perm:
    """Composition sigma∘pi, mapping i to sigma(pi(i)).

    >>> compose((2, 1, 3), (1, 3, 2))
    (2, 3, 1)
    """
    if len(sigma) != len(pi):
        raise ValueError(f"arity mismatch: {len(sigma)} vs {len(pi)}")
    return tuple(sigma[p - 1] for p in pi)


@dataclass(frozen=True)
class Transposition:
    """The permutation that swaps the objects at positions i and j (1-based)."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise ValueError(f"need 1 <= i < j, got i={self.i}, j={self.j}")

    def as_perm(self, n: int) -> Perm:
        if self.j > n:
            raise ValueError(f"transposition [{self.i},{self.j}] out of range for arity {n}")
        seq = list(range(1, n + 1))
        seq[self.i - 1], seq[self.j - 1] = seq[self.j - 1], seq[self.i - 1]
        return tuple(seq)


def apply_transposition(sigma: Perm, t: Transposition) -> Perm:
    """Right-multiply by [i,j]: exchange the entries at positions i and j.

    >>> apply_transposition((3, 1, 2), Transposition(1, 2))
    (1, 3, 2)
    """
    if t.j > len(sigma):
        raise ValueError(f"transposition [{t.i},{t.j}] out of range for arity {len(sigma)}")
    i, j = t.i - 1, t.j - 1
    seq = list(sigma)
    seq[i], seq[j] = seq[j], seq[i]
    return tuple(seq)


def swap(u: Perm, i: int) -> Perm:
    """Fast path for the adjacent generator: exchange 0-based positions i, i+1."""
    return u[:i] + (u[i + 1], u[i]) + u[i + 2 :]


def inversion_count(u: Perm) -> int:
    n = len(u)
    return sum(1 for a in range(n) for b in range(a + 1, n) if u[a] > u[b])


def parity(sigma: Perm) -> str:
    """Parity of the inversion count: "even" or "odd"."""
    return "even" if inversion_count(sigma) % 2 == 0 else "odd"


def rank(sigma: Perm) -> int:
    """Lehmer rank in [0, n!-1]; the identity ranks 0.

    >>> rank((1, 2, 4, 3))
    1
    """
    n = len(sigma)
    r = 0
    for i in range(n):
        smaller_later = sum(1 for j in range(i + 1, n) if sigma[j] < sigma[i])
        r += smaller_later * _FACT[n - 1 - i]
    return r


def unrank(r: int, n: int) -> Perm:
    """Inverse of :func:`rank`.

    >>> unrank(23, 4)
    (4, 3, 2, 1)
    """
    if not 2 <= n <= MAX_ARITY:
        raise ValueError(f"arity must be between 2 and {MAX_ARITY}, got {n}")
    if not 0 <= r < _FACT[n]:
        raise ValueError(f"rank {r} out of range for arity {n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n):
        f = _FACT[n - 1 - i]
        digit, r = divmod(r, f)
        out.append(pool.pop(digit))
    return tuple(out)


def all_perms(n: int) -> Iterator[Perm]:
    """All permutations of arity n in rank (= lexicographic) order."""
    return itertools.permutations(range(1, n + 1))
