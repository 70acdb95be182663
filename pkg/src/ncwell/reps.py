"""Bopp shifts and representations of the deformed algebra, with checkers.

Each representation is a :class:`RepMap` sending the generators of a source
context to expressions in a target context.  The checkers evaluate each
claim exactly and record the residual; nothing is truncated, so a claim
passes only when its residual is identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .symalg import (
    DEFORMED,
    FLAT_NC,
    HBAR,
    HEISENBERG,
    TAU,
    THETA,
    AlgebraContext,
    ContextMismatchError,
    I,
    OpExpr,
    adjoint,
    commutator,
    substitute,
)

__all__ = [
    "RepMap",
    "Claim",
    "VerificationReport",
    "EQ1_RELATIONS",
    "EQ2_RELATIONS",
    "EQ3_RELATIONS",
    "BOPP_ASYM_X",
    "BOPP_ASYM_Y",
    "BOPP_SYM",
    "REP1",
    "REP2_PAPER",
    "REP2_COMPOSED",
    "BUILTIN_REPS",
    "compose",
    "verify_algebra",
    "verify_hermiticity",
    "verify_jacobi",
    "compare_reps",
    "SUITE_NAMES",
    "suite",
]


@dataclass(frozen=True)
class RepMap:
    name: str
    source: AlgebraContext
    target: AlgebraContext
    images: Mapping[str, OpExpr]

    def __post_init__(self):
        missing = [g for g in self.source.generators if g not in self.images]
        if missing:
            raise ValueError(f"{self.name}: no image for {', '.join(missing)}")
        for g, e in self.images.items():
            if e.context is not self.target:
                raise ContextMismatchError(f"{self.name}: image of {g} is not in {self.target.name}")

    def __call__(self, expr: OpExpr) -> OpExpr:
        return substitute(expr, self.images, target=self.target)

    def image(self, generator: str) -> OpExpr:
        return self.images[generator]


@dataclass(frozen=True)
class Claim:
    label: str
    expected: OpExpr
    computed: OpExpr
    residual: OpExpr
    passed: bool


@dataclass
class VerificationReport:
    title: str
    claims: list[Claim] = field(default_factory=list)

    def record(self, label: str, expected: OpExpr, computed: OpExpr) -> Claim:
        residual = computed - expected
        claim = Claim(label, expected, computed, residual, residual.is_zero())
        self.claims.append(claim)
        return claim

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def __iter__(self):
        return iter(self.claims)

    def __len__(self) -> int:
        return len(self.claims)

    def residual(self, label: str) -> OpExpr:
        for c in self.claims:
            if c.label == label:
                return c.residual
        raise KeyError(label)


def compose(outer: RepMap, inner: RepMap, name: str | None = None) -> RepMap:
    """``inner`` after ``outer``: source of ``outer`` -> target of ``inner``."""
    if outer.target is not inner.source:
        raise ContextMismatchError(f"cannot compose {outer.name} with {inner.name}")
    images = {g: inner(e) for g, e in outer.images.items()}
    return RepMap(name or f"{outer.name}*{inner.name}", outer.source, inner.target, images)


def _eq1():
    ctx = HEISENBERG
    ihbar = ctx.scalar(I * HBAR)
    return [
        (("x_s", "y_s"), ctx.zero()),
        (("x_s", "p_xs"), ihbar),
        (("y_s", "p_ys"), ihbar),
        (("x_s", "p_ys"), ctx.zero()),
        (("y_s", "p_xs"), ctx.zero()),
        (("p_xs", "p_ys"), ctx.zero()),
    ]


def _eq2():
    ctx = FLAT_NC
    return [
        (("x0", "y0"), ctx.scalar(I * THETA)),
        (("x0", "p_x0"), ctx.scalar(I * HBAR)),
        (("y0", "p_y0"), ctx.scalar(I * HBAR)),
        (("p_x0", "p_y0"), ctx.zero()),
        (("x0", "p_y0"), ctx.zero()),
        (("y0", "p_x0"), ctx.zero()),
    ]


def _eq3():
    # Right-hand sides are words in the deformed generators; their order is
    # kept, since DEFORMED does not rewrite.
    ctx = DEFORMED
    x, y, px, py = ctx.gens()
    one = ctx.one()
    deform = one + TAU * y * y
    return [
        (("x", "y"), (I * THETA) * deform),
        (("x", "p_x"), (I * HBAR) * deform),
        (("y", "p_y"), (I * HBAR) * deform),
        (("p_x", "p_y"), ctx.zero()),
        (("x", "p_y"), (2 * I * TAU) * (y * (THETA * py + HBAR * x))),
        (("y", "p_x"), ctx.zero()),
    ]


EQ1_RELATIONS = _eq1()
EQ2_RELATIONS = _eq2()
EQ3_RELATIONS = _eq3()


def _bopp(name: str, x_shift, y_shift) -> RepMap:
    x, y, px, py = HEISENBERG.gens()
    return RepMap(
        name,
        FLAT_NC,
        HEISENBERG,
        {"x0": x - x_shift * py, "y0": y + y_shift * px, "p_x0": px, "p_y0": py},
    )


BOPP_ASYM_X = _bopp("BOPP_ASYM_X", THETA / HBAR, 0)
BOPP_ASYM_Y = _bopp("BOPP_ASYM_Y", 0, THETA / HBAR)
BOPP_SYM = _bopp("BOPP_SYM", THETA / (2 * HBAR), THETA / (2 * HBAR))


def _rep1() -> RepMap:
    x0, y0, px0, py0 = FLAT_NC.gens()
    return RepMap(
        "REP1",
        DEFORMED,
        FLAT_NC,
        {
            "x": x0 + (I * THETA * TAU) * y0 + TAU * (y0 * y0 * x0),
            "y": y0,
            "p_x": px0,
            "p_y": py0 - (I * HBAR * TAU) * y0 + TAU * (y0 * y0 * py0),
        },
    )


def _rep2_paper() -> RepMap:
    # Operator products entered in the printed order; the engine reorders.
    xs, ys, pxs, pys = HEISENBERG.gens()
    h, t = HBAR, THETA
    x_img = (
        xs
        - t / (2 * h) * pys
        + TAU * (ys * ys * xs)
        + t * TAU * (I * ys + (ys * pxs * xs) / h - (ys * ys * pys) / (2 * h))
        + t**2 * TAU * ((I / (2 * h)) * pys + (pxs * pxs * xs) / (4 * h**2) - (ys * pxs * pys) / (2 * h**2))
        - TAU * t**3 / (8 * h**3) * (pxs * pxs * pys)
    )
    y_img = ys + t / (2 * h) * pxs
    py_img = (
        pys
        + TAU * (-(I * h) * ys + ys * ys * pys)
        + t * TAU * (-(I / 2) * pxs + (ys * pxs * pys) / h)
        + TAU * t**2 / (4 * h**2) * (pxs * pxs * pys)
    )
    return RepMap("REP2_PAPER", DEFORMED, HEISENBERG, {"x": x_img, "y": y_img, "p_x": pxs, "p_y": py_img})


REP1 = _rep1()
REP2_PAPER = _rep2_paper()
REP2_COMPOSED = compose(REP1, BOPP_SYM, name="REP2_COMPOSED")

BUILTIN_REPS = {
    r.name: r for r in (BOPP_ASYM_X, BOPP_ASYM_Y, BOPP_SYM, REP1, REP2_PAPER, REP2_COMPOSED)
}


def verify_algebra(
    rep: RepMap, expected: Sequence[tuple[tuple[str, str], OpExpr]], title: str | None = None
) -> VerificationReport:
    """Check ``[rep(a), rep(b)] == rep(rhs)`` for every expected relation."""
    report = VerificationReport(title or f"{rep.name} algebra")
    for (a, b), rhs in expected:
        computed = commutator(rep.image(a), rep.image(b))
        report.record(f"[{a}, {b}]", rep(rhs), computed)
    return report


def verify_hermiticity(rep: RepMap, title: str | None = None) -> VerificationReport:
    report = VerificationReport(title or f"{rep.name} hermiticity")
    for g in rep.source.generators:
        e = rep.image(g)
        report.record(f"{g}^dagger = {g}", e, adjoint(e))
    return report


def verify_jacobi(obj: AlgebraContext | RepMap, title: str | None = None) -> VerificationReport:
    """Cyclic commutator sum over every triple of distinct generators (or images)."""
    if isinstance(obj, RepMap):
        names = obj.source.generators
        ops = [obj.image(g) for g in names]
        ctx = obj.target
        title = title or f"{obj.name} Jacobi"
    else:
        names = obj.generators
        ops = list(obj.gens())
        ctx = obj
        title = title or f"{obj.name} Jacobi"
    report = VerificationReport(title)
    for i, j, k in combinations(range(len(ops)), 3):
        a, b, c = ops[i], ops[j], ops[k]
        total = (
            commutator(a, commutator(b, c))
            + commutator(b, commutator(c, a))
            + commutator(c, commutator(a, b))
        )
        report.record(f"Jacobi({names[i]}, {names[j]}, {names[k]})", ctx.zero(), total)
    return report


def compare_reps(a: RepMap, b: RepMap, title: str | None = None) -> VerificationReport:
    """Per-generator difference ``a(g) - b(g)``."""
    if a.source is not b.source or a.target is not b.target:
        raise ContextMismatchError(f"{a.name} and {b.name} map between different contexts")
    report = VerificationReport(title or f"{a.name} vs {b.name}")
    for g in a.source.generators:
        report.record(g, b.image(g), a.image(g))
    return report


SUITE_NAMES = ("bopp", "rep1", "rep2", "jacobi", "hermiticity", "compare")


def suite(name: str) -> list[tuple[VerificationReport, bool]]:
    """Reports of one named suite, each flagged must-pass (True) or report-only."""
    if name == "all":
        return [entry for n in SUITE_NAMES for entry in suite(n)]
    if name == "bopp":
        return [
            (verify_algebra(r, EQ2_RELATIONS, f"{r.name} vs flat NC algebra"), True)
            for r in (BOPP_ASYM_X, BOPP_ASYM_Y, BOPP_SYM)
        ]
    if name == "rep1":
        return [(verify_algebra(REP1, EQ3_RELATIONS, "REP1 vs deformed algebra"), True)]
    if name == "rep2":
        return [(verify_algebra(REP2_COMPOSED, EQ3_RELATIONS, "REP2_COMPOSED vs deformed algebra"), True)]
    if name == "jacobi":
        return [(verify_jacobi(x), True) for x in (HEISENBERG, FLAT_NC, REP1, REP2_COMPOSED)]
    if name == "hermiticity":
        return [(verify_hermiticity(r), True) for r in (BOPP_SYM, REP1, REP2_COMPOSED)]
    if name == "compare":
        return [
            (compare_reps(REP2_COMPOSED, REP2_PAPER), False),
            (verify_algebra(REP2_PAPER, EQ3_RELATIONS, "REP2_PAPER vs deformed algebra"), False),
            (verify_hermiticity(REP2_PAPER), False),
        ]
    raise ValueError(f"unknown suite {name!r}")
