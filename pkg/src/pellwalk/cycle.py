"""Walking the cycle of balanced forms from x^2 - Dy^2 back to itself.

The walk collects an L/R word whose matrix N is an automorphism of the Pell
form; N's first column is the fundamental solution. When the walk passes the
center form (D, 0, -1), the half word yields a solution of x^2 - Dy^2 = -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from pellwalk.errors import DIsSquare, DNotPositive, InternalStateError, UnbalancedFormError
from pellwalk.forms import (
    Direction,
    Form,
    Mat2,
    Run,
    StepWord,
    apply_run,
    determinant,
    is_square,
    isqrt,
    mat_of_word,
    max_run,
    pell_form,
    step,
    total,
)


@dataclass(frozen=True)
class PellSolution:
    D: int
    x: int
    y: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.x * self.x - self.D * self.y * self.y != self.sign:
            raise ValueError(
                f"({self.x}, {self.y}) does not satisfy x^2 - {self.D}y^2 = {self.sign}"
            )

    def as_tuple(self) -> tuple[int, int]:
        return self.x, self.y


@dataclass(frozen=True)
class NegPellCertificate:
    u1: int
    v1: int
    M: Mat2
    half_word: StepWord

    def root_matrix(self, D: int) -> Mat2:
        """P = (u1, D v1; v1, u1), whose square is the cycle matrix N."""
        return Mat2(self.u1, D * self.v1, self.v1, self.u1)


@dataclass(frozen=True)
class CycleResult:
    D: int
    word: StepWord
    N: Mat2
    fundamental: PellSolution
    negative: Optional[NegPellCertificate] = None
    trace: Optional[tuple[tuple[Form, Run], ...]] = field(default=None, compare=False)


def validate_d(D: int) -> int:
    if D <= 0:
        raise DNotPositive(f"D must be positive, got {D}")
    if is_square(D):
        raise DIsSquare(f"D must not be a perfect square, got {D}")
    return D


def pell_matrix(D: int) -> Mat2:
    return Mat2(1, 0, 0, -D)


def solve(D: int, *, trace: bool = False, max_steps: Optional[int] = None) -> CycleResult:
    """Walk the balanced cycle of (1, 0, -D) using maximal runs.

    ``max_steps`` bounds the number of single letters walked; exceeding it
    raises :class:`InternalStateError`. ``trace=True`` keeps every
    (form, run) pair at run boundaries.
    """
    validate_d(D)
    start = pell_form(D)
    f = start
    runs: list[Run] = []
    visited: list[tuple[Form, Run]] = []
    steps = 0
    half: Optional[StepWord] = None

    while True:
        try:
            run = max_run(f, D)
        except UnbalancedFormError as exc:
            raise InternalStateError(f"D={D}: {exc}") from exc
        closing = False
        if run.dir is Direction.R and f.a == 1 and f.b < 0 and -f.b <= run.len:
            # b reaches 0 after -b steps and the determinant pins c = -D
            run = Run(Direction.R, -f.b)
            closing = True
        if half is None and run.dir is Direction.L and f.c == -1 and 0 < f.b < run.len:
            half = StepWord(runs + [Run(Direction.L, f.b)])

        nxt = apply_run(f, run)
        if determinant(nxt) != -D or not nxt.is_balanced:
            raise InternalStateError(f"D={D}: run {run} from {f} gave {nxt}")
        visited.append((f, run))
        runs.append(run)
        steps += run.len
        f = nxt
        if closing:
            if f != start:
                raise InternalStateError(f"D={D}: closing run ended at {f}, not {start}")
            break
        if max_steps is not None and steps > max_steps:
            raise InternalStateError(f"D={D}: walk exceeded {max_steps} steps")

    word = StepWord(runs)
    N = mat_of_word(word)
    u, v = N.first_column()
    negative = None
    if half is not None:
        M = mat_of_word(half)
        u1, v1 = M.second_column()
        negative = NegPellCertificate(u1, v1, M, half)
    return CycleResult(
        D=D,
        word=word,
        N=N,
        fundamental=PellSolution(D, u, v, 1),
        negative=negative,
        trace=tuple(visited) if trace else None,
    )


def walk_single_step(D: int) -> tuple[StepWord, list[Form]]:
    """Reference walk: one letter at a time by the sign of the total.

    Returns the word and the form reached after each letter (the last one is
    the starting form again).
    """
    validate_d(D)
    start = pell_form(D)
    f = start
    letters: list[Direction] = []
    forms: list[Form] = []
    while True:
        t = total(f)
        if t == 0 or not f.is_balanced:
            raise InternalStateError(f"D={D}: reached {f}")
        d = Direction.L if t > 0 else Direction.R
        f = step(f, d)
        letters.append(d)
        forms.append(f)
        if f == start:
            return StepWord.from_letters(letters), forms


def replay(D: int, word: StepWord) -> list[Form]:
    """Forms visited letter by letter when ``word`` is applied to (1, 0, -D),
    including the starting form."""
    f = pell_form(D)
    forms = [f]
    for d in word.letters():
        f = step(f, d)
        forms.append(f)
    return forms


def act(N: Mat2, v: tuple[int, int]) -> tuple[int, int]:
    x, y = v
    return N.e11 * x + N.e12 * y, N.e21 * x + N.e22 * y


def iterate(res: CycleResult, k: int) -> list[PellSolution]:
    """The solutions N e, N^2 e, ..., N^k e with e = (1, 0)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    out = []
    v = (1, 0)
    for _ in range(k):
        v = act(res.N, v)
        out.append(PellSolution(res.D, v[0], v[1], 1))
    return out


def _brute_force(D: int, y_bound: int, sign: int) -> Optional[PellSolution]:
    validate_d(D)
    for y in range(1, y_bound + 1):
        target = D * y * y + sign
        if is_square(target):
            return PellSolution(D, isqrt(target), y, sign)
    return None


def brute_force_fundamental(D: int, y_bound: int) -> Optional[PellSolution]:
    """Smallest y in 1..y_bound with D y^2 + 1 a square, or None."""
    return _brute_force(D, y_bound, 1)


def brute_force_negative(D: int, y_bound: int) -> Optional[PellSolution]:
    """Smallest y in 1..y_bound with D y^2 - 1 a square, or None."""
    return _brute_force(D, y_bound, -1)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    D: int
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = [f"D={self.D}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def verify_cycle(res: CycleResult) -> VerificationReport:
    """Recheck every claim a CycleResult makes, without raising."""
    D, N, word = res.D, res.N, res.word
    A = pell_matrix(D)
    checks = []

    def add(name: str, cond: bool, detail: str = "") -> None:
        checks.append(Check(name, bool(cond), "" if cond else detail))

    add("matrix_of_word", mat_of_word(word) == N, f"N={N} but word gives {mat_of_word(word)}")
    add("automorphism", N.T @ A @ N == A, f"N^T A N = {N.T @ A @ N}")
    fx, fy = res.fundamental.x, res.fundamental.y
    add(
        "fundamental_solves",
        fx * fx - D * fy * fy == 1 and (fx, fy) == N.first_column(),
        f"({fx}, {fy}) vs first column {N.first_column()}",
    )
    add(
        "word_palindrome",
        bool(word) and word.reversed() == word
        and word.runs[0].dir is Direction.R and word.runs[-1].dir is Direction.R,
        f"word {word}",
    )

    forms = replay(D, word)
    start = forms[0]
    inner = forms[1:-1]
    add(
        "replay_returns",
        forms[-1] == start
        and start not in inner
        and all(g.is_balanced and determinant(g) == -D for g in forms),
        f"replay ends at {forms[-1]}",
    )

    neg = res.negative
    if neg is not None:
        u1, v1, M = neg.u1, neg.v1, neg.M
        P = neg.root_matrix(D)
        cond = (
            u1 * u1 - D * v1 * v1 == -1
            and M == Mat2(D * v1, u1, u1, v1)
            and M == mat_of_word(neg.half_word)
            and P @ P == N
            and neg.half_word.reversed().swapped() == neg.half_word
        )
        add("negative_certificate", cond, f"u1={u1} v1={v1} M={M} P^2={P @ P}")

    n = len(forms) - 1
    add(
        "trace_palindrome",
        all(forms[i] == forms[n - i].negate_middle() for i in range(n + 1)),
        "forms do not mirror with negated middle term",
    )
    return VerificationReport(D, tuple(checks))
