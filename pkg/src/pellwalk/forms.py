"""Binary quadratic forms ax^2 + 2bxy + cy^2 and the L/R step calculus.

Everything here is exact Python ``int`` arithmetic. Steps are total functions
on any triple; only :func:`max_run` insists on a balanced form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple

from pellwalk.errors import UnbalancedFormError


class Direction(str, Enum):
    L = "L"
    R = "R"

    @property
    def other(self) -> "Direction":
        return Direction.R if self is Direction.L else Direction.L


class Form(NamedTuple):
    """The triple (a, b, c) standing for ax^2 + 2bxy + cy^2."""

    a: int
    b: int
    c: int

    @property
    def is_balanced(self) -> bool:
        return self.a > 0 and self.c < 0

    def negate_middle(self) -> "Form":
        return Form(self.a, -self.b, self.c)

    def matrix(self) -> "Mat2":
        return Mat2(self.a, self.b, self.b, self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + 2 * self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def pell_form(D: int) -> Form:
    return Form(1, 0, -D)


class Mat2(NamedTuple):
    """Row-major 2x2 integer matrix (e11, e12; e21, e22)."""

    e11: int
    e12: int
    e21: int
    e22: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "Mat2") -> "Mat2":  # type: ignore[override]
        a, b, c, d = self
        e, f, g, h = other
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            raise ValueError("negative matrix power")
        result, base = Mat2.identity(), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> "Mat2":
        return Mat2(self.e11, self.e21, self.e12, self.e22)

    def det(self) -> int:
        return self.e11 * self.e22 - self.e12 * self.e21

    def first_column(self) -> tuple[int, int]:
        return self.e11, self.e21

    def second_column(self) -> tuple[int, int]:
        return self.e12, self.e22

    def __str__(self) -> str:
        return f"({self.e11}, {self.e12}; {self.e21}, {self.e22})"


L_MATRIX = Mat2(1, 0, 1, 1)
R_MATRIX = Mat2(1, 1, 0, 1)


def step_matrix(direction: Direction, n: int = 1) -> Mat2:
    """R^n = (1, n; 0, 1) and L^n = (1, 0; n, 1)."""
    if direction is Direction.R:
        return Mat2(1, n, 0, 1)
    return Mat2(1, 0, n, 1)


def congruent(f: Form, S: Mat2) -> Form:
    """The form whose matrix is S^T A S."""
    m = S.T @ f.matrix() @ S
    return Form(m.e11, m.e12, m.e22)


@dataclass(frozen=True)
class Run:
    dir: Direction
    len: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "dir", Direction(self.dir))
        if self.len < 1:
            raise ValueError(f"run length must be positive, got {self.len}")

    def __str__(self) -> str:
        return self.dir.value if self.len == 1 else f"{self.dir.value}^{self.len}"


_RUN_RE = re.compile(r"([LR])(?:\^([0-9]+))?\Z")


@dataclass(frozen=True)
class StepWord:
    """Run-length encoded L/R word; adjacent runs always alternate.

    Construction merges neighbouring runs of the same direction, so
    ``StepWord([Run("L", 7), Run("L", 7)])`` is stored as ``L^14``.
    """

    runs: tuple[Run, ...] = ()

    def __init__(self, runs: Iterable[Run] = ()):
        merged: list[Run] = []
        for run in runs:
            if merged and merged[-1].dir is run.dir:
                merged[-1] = Run(run.dir, merged[-1].len + run.len)
            else:
                merged.append(run)
        object.__setattr__(self, "runs", tuple(merged))

    @classmethod
    def from_letters(cls, letters: Iterable[Direction | str]) -> "StepWord":
        return cls(Run(Direction(ch), 1) for ch in letters)

    @classmethod
    def parse(cls, text: str) -> "StepWord":
        """Parse the text format, e.g. ``"R^7 L R^4"``; empty text is the empty word."""
        runs = []
        for token in text.split():
            m = _RUN_RE.match(token)
            if m is None:
                raise ValueError(f"malformed run {token!r} in word {text!r}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if m.group(2) is not None and exp < 2:
                raise ValueError(f"explicit exponent must be >= 2 in {token!r}")
            runs.append(Run(Direction(m.group(1)), exp))
        return cls(runs)

    def __str__(self) -> str:
        return " ".join(str(r) for r in self.runs)

    def __repr__(self) -> str:
        return f"StepWord({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __add__(self, other: "StepWord") -> "StepWord":
        return StepWord(self.runs + other.runs)

    @property
    def length(self) -> int:
        """Number of single letters."""
        return sum(r.len for r in self.runs)

    def letters(self) -> Iterator[Direction]:
        for run in self.runs:
            for _ in range(run.len):
                yield run.dir

    def reversed(self) -> "StepWord":
        return StepWord(reversed(self.runs))

    def swapped(self) -> "StepWord":
        return StepWord(Run(r.dir.other, r.len) for r in self.runs)


def total(f: Form) -> int:
    return f.a + 2 * f.b + f.c


def determinant(f: Form) -> int:
    return f.a * f.c - f.b * f.b


def step_right(f: Form) -> Form:
    a, b, c = f
    return Form(a, a + b, a + 2 * b + c)


def step_left(f: Form) -> Form:
    a, b, c = f
    return Form(a + 2 * b + c, b + c, c)


def run_right(f: Form, n: int) -> Form:
    a, b, c = f
    return Form(a, b + a * n, c + 2 * b * n + a * n * n)


def run_left(f: Form, m: int) -> Form:
    a, b, c = f
    return Form(a + 2 * b * m + c * m * m, b + c * m, c)


def apply_run(f: Form, run: Run) -> Form:
    if run.dir is Direction.R:
        return run_right(f, run.len)
    return run_left(f, run.len)


def step(f: Form, direction: Direction) -> Form:
    return step_right(f) if direction is Direction.R else step_left(f)


def invert_step(f: Form, direction: Direction) -> Form:
    a, b, c = f
    if Direction(direction) is Direction.L:
        return Form(a - 2 * b + c, b - c, c)
    return Form(a, b - a, a - 2 * b + c)


def isqrt(n: int) -> int:
    """floor(sqrt(n)) for n >= 0."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _run_fits(f: Form, direction: Direction, k: int) -> bool:
    # True while k steps in `direction` keep the form balanced
    if direction is Direction.R:
        return run_right(f, k).c < 0
    return run_left(f, k).a > 0


def max_run(f: Form, D: int) -> Run:
    """Longest run in the direction picked by the sign of the total.

    The length comes from the positive root of the quadratic that turns the
    form unbalanced; it is then checked at the boundary, with a linear search
    as a fallback.
    """
    if not f.is_balanced:
        raise UnbalancedFormError(f"form {f} is not balanced")
    t = total(f)
    if t == 0:
        raise UnbalancedFormError(f"form {f} has zero total; is D={D} a square?")
    r = isqrt(D)
    if t < 0:
        direction, length = Direction.R, (-f.b + r) // f.a
    else:
        direction, length = Direction.L, (f.b + r) // (-f.c)
    if length < 1 or not _run_fits(f, direction, length) or _run_fits(f, direction, length + 1):
        length = 1
        while _run_fits(f, direction, length + 1):
            length += 1
    return Run(direction, length)


def classify_step(pred: Form, succ: Form) -> Direction:
    """Recover the direction of the step pred -> succ from succ alone."""
    t = total(succ.negate_middle())
    if t > 0:
        return Direction.L
    if t < 0:
        return Direction.R
    raise UnbalancedFormError(f"cannot classify step into {succ}: reversed total is zero")


def mat_of_word(w: StepWord) -> Mat2:
    m = Mat2.identity()
    for run in w.runs:
        m = m @ step_matrix(run.dir, run.len)
    return m
