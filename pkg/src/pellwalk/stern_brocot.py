"""Stern-Brocot positions of L/R words and the convergents they give for sqrt(D)."""

from __future__ import annotations

from itertools import cycle, islice
from typing import NamedTuple

from pellwalk.cycle import solve, validate_d
from pellwalk.forms import Mat2, StepWord, mat_of_word, step_matrix


class Fraction(NamedTuple):
    """A positive fraction p/q as it sits in the tree (not renormalised)."""

    p: int
    q: int

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> "Fraction":
        p, q = text.split("/")
        return cls(int(p), int(q))


def _column_sum(m: Mat2) -> Fraction:
    return Fraction(m.e11 + m.e12, m.e21 + m.e22)


def fraction_of_word(w: StepWord) -> Fraction:
    """The tree node reached by ``w``; the empty word is the root 1/1."""
    return _column_sum(mat_of_word(w))


def convergents(D: int, count: int) -> list[Fraction]:
    """Fractions at the first ``count`` letter-prefixes of the periodic cycle word."""
    validate_d(D)
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    word = solve(D).word
    m = Mat2.identity()
    out = []
    for d in islice(cycle(word.letters()), count):
        m = m @ step_matrix(d)
        out.append(_column_sum(m))
    return out


def prefix_value(D: int, w_prefix: StepWord) -> int:
    """p^2 - D q^2 for the fraction of ``w_prefix``.

    This equals the total a + 2b + c of the form reached by replaying the
    prefix from (1, 0, -D).
    """
    validate_d(D)
    word = solve(D).word
    expected = islice(cycle(word.letters()), w_prefix.length)
    if any(a is not b for a, b in zip(w_prefix.letters(), expected)):
        raise ValueError(f"{w_prefix} is not a prefix of the repeated cycle word {word}")
    p, q = fraction_of_word(w_prefix)
    return p * p - D * q * q
