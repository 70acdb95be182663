"""Exact noncommutative polynomial algebra with normal-ordering rewriting.

Operators are polynomials in a finite set of generators whose coefficients are
:class:`ParamScalar` values: exact Gaussian-rational multiples of Laurent
monomials in the commuting parameters ``hbar, theta, tau, m, g``.

An :class:`AlgebraContext` fixes the generators, their canonical order and the
commutation table.  Every :class:`OpExpr` is kept in normal-ordered form, so
two expressions are equal iff their term maps are equal.  A context created
without a commutation table is the free algebra: words are stored verbatim.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "PARAMETERS",
    "GaussianRational",
    "ParamScalar",
    "AlgebraContext",
    "OpExpr",
    "ContextMismatchError",
    "MissingImageError",
    "HBAR",
    "THETA",
    "TAU",
    "MASS",
    "G",
    "I",
    "ONE",
    "ZERO",
    "HEISENBERG",
    "FLAT_NC",
    "DEFORMED",
    "add",
    "mul",
    "commutator",
    "adjoint",
    "truncate",
    "substitute",
]

PARAMETERS = ("hbar", "theta", "tau", "m", "g")
_NPAR = len(PARAMETERS)
_PINDEX = {name: i for i, name in enumerate(PARAMETERS)}


class ContextMismatchError(ValueError):
    """Operands belong to different algebra contexts."""


class MissingImageError(KeyError):
    """A substitution map has no image for a generator that occurs."""

    def __init__(self, generator: str):
        super().__init__(generator)
        self.generator = generator

    def __str__(self) -> str:
        return f"substitution map has no image for generator {self.generator!r}"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: GaussianRational) -> GaussianRational:
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"({self.re}{sign}{im})"


_GZERO = GaussianRational(0)
_GONE = GaussianRational(1)

Exponents = tuple  # tuple[int, ...] over PARAMETERS
ScalarLike = Union["ParamScalar", GaussianRational, int, Fraction, complex]


class ParamScalar:
    """Finite sum of ``coefficient * hbar^a theta^b tau^c m^d g^e`` terms.

    Exponents may be negative.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponents, GaussianRational] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponents, GaussianRational] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != _NPAR:
                raise ValueError(f"exponent vector must have length {_NPAR}")
            coeff = GaussianRational.coerce(coeff)
            prev = clean.get(exps)
            coeff = coeff if prev is None else prev + coeff
            if coeff:
                clean[exps] = coeff
            else:
                clean.pop(exps, None)
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> ParamScalar:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def const(cls, value) -> ParamScalar:
        value = GaussianRational.coerce(value)
        return cls._raw({(0,) * _NPAR: value} if value else {})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> ParamScalar:
        exps = [0] * _NPAR
        exps[_PINDEX[name]] = power
        return cls._raw({tuple(exps): _GONE})

    @classmethod
    def coerce(cls, x) -> ParamScalar:
        if isinstance(x, ParamScalar):
            return x
        return cls.const(x)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        try:
            other = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> ParamScalar:
        try:
            other = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exps, c in other._terms.items():
            prev = out.get(exps)
            if prev is None:
                out[exps] = c
            else:
                s = prev + c
                if s:
                    out[exps] = s
                else:
                    del out[exps]
        return ParamScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> ParamScalar:
        return ParamScalar._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> ParamScalar:
        try:
            other = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> ParamScalar:
        return ParamScalar.coerce(other) - self

    def __mul__(self, other) -> ParamScalar:
        if isinstance(other, OpExpr):
            return NotImplemented
        try:
            other = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exponents, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = out.get(exps)
                if prev is not None:
                    c = prev + c
                if c:
                    out[exps] = c
                else:
                    out.pop(exps, None)
        return ParamScalar._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> ParamScalar:
        """Divide by a single-term scalar (a monomial times a nonzero constant)."""
        other = ParamScalar.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> ParamScalar:
        return ParamScalar.coerce(other) * self.inverse()

    def inverse(self) -> ParamScalar:
        if len(self._terms) != 1:
            raise ZeroDivisionError("only single-term parameter scalars are invertible")
        (exps, c), = self._terms.items()
        norm = c.re * c.re + c.im * c.im
        inv = GaussianRational(c.re / norm, -c.im / norm)
        return ParamScalar._raw({tuple(-e for e in exps): inv})

    def __pow__(self, n: int) -> ParamScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ParamScalar.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> ParamScalar:
        """Complex conjugate; the parameters themselves are real."""
        return ParamScalar._raw({e: c.conjugate() for e, c in self._terms.items()})

    def degree(self, names: Iterable[str]) -> int:
        """Largest total exponent over ``names`` among the stored terms."""
        idx = [_PINDEX[n] for n in names]
        if not self._terms:
            return 0
        return max(sum(e[i] for i in idx) for e in self._terms)

    def truncate(self, caps: Mapping) -> ParamScalar:
        groups = _normalize_caps(caps)
        return ParamScalar._raw(
            {
                e: c
                for e, c in self._terms.items()
                if all(sum(e[i] for i in idx) <= cap for idx, cap in groups)
            }
        )

    def evaluate(self, values: Mapping[str, float]) -> complex:
        """Numeric value for given parameter values (used outside the exact core)."""
        total = 0j
        for exps, c in self._terms.items():
            term = complex(c)
            for name, e in zip(PARAMETERS, exps):
                if e:
                    term *= values[name] ** e
            total += term
        return total

    def __repr__(self) -> str:
        return f"ParamScalar({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, reverse=True):
            c = self._terms[exps]
            factors = []
            for name, e in zip(PARAMETERS, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            cs = str(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _normalize_caps(caps: Mapping) -> list[tuple[list[int], int]]:
    groups = []
    for key, cap in caps.items():
        names = (key,) if isinstance(key, str) else tuple(key)
        for n in names:
            if n not in _PINDEX:
                raise KeyError(f"unknown parameter {n!r}")
        groups.append(([_PINDEX[n] for n in names], cap))
    return groups


HBAR = ParamScalar.symbol("hbar")
THETA = ParamScalar.symbol("theta")
TAU = ParamScalar.symbol("tau")
MASS = ParamScalar.symbol("m")
G = ParamScalar.symbol("g")
I = ParamScalar.const(GaussianRational(0, 1))
ONE = ParamScalar.const(1)
ZERO = ParamScalar()

Word = tuple  # tuple[int, ...] of generator indices


def _acc(out: dict, word: Word, coeff: ParamScalar) -> None:
    prev = out.get(word)
    if prev is not None:
        coeff = prev + coeff
    if coeff:
        out[word] = coeff
    else:
        out.pop(word, None)


class AlgebraContext:
    """Generators, canonical order and commutation table.

    ``relations`` maps a generator pair ``(a, b)`` to ``[a, b]``, given either
    as a scalar or as a mapping from generator-name words to scalars.  Pairs
    not listed commute.  Passing ``relations=None`` gives the free algebra.
    """

    def __init__(
        self,
        name: str,
        generators: Iterable[str],
        relations: Mapping | None = None,
        self_adjoint: Iterable[bool] | None = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise ValueError("duplicate generator names")
        n = len(self.generators)
        self.adjoint_signs = tuple(self_adjoint) if self_adjoint is not None else (True,) * n
        self.free = relations is None
        self._comm: dict[tuple[int, int], dict[Word, ParamScalar]] = {}
        self._cache: dict[Word, dict[Word, ParamScalar]] = {}
        for (a, b), rhs in (relations or {}).items():
            i, j = self.index[a], self.index[b]
            if i == j:
                raise ValueError(f"[{a}, {a}] is identically zero")
            if isinstance(rhs, Mapping):
                table = {tuple(self.index[s] for s in w): ParamScalar.coerce(c) for w, c in rhs.items()}
            else:
                table = {(): ParamScalar.coerce(rhs)}
            if i > j:
                i, j = j, i
                table = {w: -c for w, c in table.items()}
            for w in table:
                if any(k >= j for k in w):
                    raise ValueError(
                        f"[{self.generators[i]}, {self.generators[j]}] must only involve "
                        f"generators earlier than {self.generators[j]}"
                    )
            self._comm[(i, j)] = {w: c for w, c in table.items() if c}

    def __repr__(self) -> str:
        return f"AlgebraContext({self.name!r}, {list(self.generators)!r})"

    def bracket(self, a: str, b: str) -> OpExpr:
        """Table entry ``[a, b]`` as an expression."""
        return commutator(self.gen(a), self.gen(b))

    def gen(self, name: str) -> OpExpr:
        return OpExpr._raw(self, {(self.index[name],): ONE})

    def gens(self) -> tuple[OpExpr, ...]:
        return tuple(self.gen(g) for g in self.generators)

    def scalar(self, value) -> OpExpr:
        value = ParamScalar.coerce(value)
        return OpExpr._raw(self, {(): value} if value else {})

    def one(self) -> OpExpr:
        return self.scalar(1)

    def zero(self) -> OpExpr:
        return OpExpr._raw(self, {})

    def word(self, *names: str) -> OpExpr:
        """Product of generators in the given order, normal-ordered."""
        word = tuple(self.index[n] for n in names)
        return OpExpr._raw(self, dict(self.normal_order(word)))

    def normal_order(self, word: Word) -> dict[Word, ParamScalar]:
        """Rewrite a generator word into canonical order.

        The first adjacent pair ``g_j g_i`` with ``i < j`` is replaced by
        ``g_i g_j - [g_i, g_j]``; results are memoized per word.
        """
        if self.free:
            return {word: ONE}
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        result: dict[Word, ParamScalar] | None = None
        for pos in range(len(word) - 1):
            a, b = word[pos], word[pos + 1]
            if a > b:
                head, tail = word[:pos], word[pos + 2 :]
                result = dict(self.normal_order(head + (b, a) + tail))
                for w, c in self._comm.get((b, a), {}).items():
                    for w2, c2 in self.normal_order(head + w + tail).items():
                        _acc(result, w2, -(c * c2))
                break
        if result is None:
            result = {word: ONE}
        self._cache[word] = result
        return result

    def exponents(self, word: Word) -> tuple[int, ...]:
        out = [0] * len(self.generators)
        for k in word:
            out[k] += 1
        return tuple(out)

    def render_word(self, word: Word) -> str:
        parts = []
        k = 0
        while k < len(word):
            j = k
            while j < len(word) and word[j] == word[k]:
                j += 1
            name = self.generators[word[k]]
            parts.append(name if j - k == 1 else f"{name}^{j - k}")
            k = j
        return "*".join(parts)


class OpExpr:
    """Normal-ordered operator polynomial; immutable.

    ``terms`` maps a canonical generator word (a tuple of generator indices,
    sorted in rewriting contexts) to its nonzero :class:`ParamScalar`.
    """

    __slots__ = ("context", "_terms")

    def __init__(self, context: AlgebraContext, terms: Mapping[Word, ScalarLike] = ()):
        out: dict[Word, ParamScalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, c in items:
            c = ParamScalar.coerce(c)
            for w, c2 in context.normal_order(tuple(word)).items():
                _acc(out, w, c * c2)
        self.context = context
        self._terms = out

    @classmethod
    def _raw(cls, context: AlgebraContext, terms: dict) -> OpExpr:
        obj = cls.__new__(cls)
        obj.context = context
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict[Word, ParamScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> dict[tuple[int, ...], ParamScalar]:
        """Terms keyed by exponent vector over the generators."""
        return {self.context.exponents(w): c for w, c in self._terms.items()}

    def coefficient(self, *names: str) -> ParamScalar:
        word = tuple(self.context.index[n] for n in names)
        return self._terms.get(word, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _lift(self, other) -> OpExpr:
        if isinstance(other, OpExpr):
            if other.context is not self.context:
                raise ContextMismatchError(
                    f"cannot combine {self.context.name} and {other.context.name} expressions"
                )
            return other
        return self.context.scalar(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, OpExpr):
            return other.context is self.context and self._terms == other._terms
        try:
            return self._terms == self.context.scalar(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.context), frozenset(self._terms.items())))

    def __add__(self, other) -> OpExpr:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> OpExpr:
        return OpExpr._raw(self.context, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> OpExpr:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> OpExpr:
        return add(self._lift(other), -self)

    def __mul__(self, other) -> OpExpr:
        if isinstance(other, OpExpr):
            return mul(self, other)
        try:
            s = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other) -> OpExpr:
        try:
            s = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    def __truediv__(self, other) -> OpExpr:
        return self.scale(ParamScalar.coerce(other).inverse())

    def __pow__(self, n: int) -> OpExpr:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.context.one()
        for _ in range(n):
            out = mul(out, self)
        return out

    def scale(self, s: ParamScalar) -> OpExpr:
        out: dict[Word, ParamScalar] = {}
        for w, c in self._terms.items():
            _acc(out, w, c * s)
        return OpExpr._raw(self.context, out)

    def __repr__(self) -> str:
        return f"OpExpr<{self.context.name}>({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w in sorted(self._terms, key=lambda w: (len(w), w)):
            c = self._terms[w]
            mono = self.context.render_word(w)
            parts.append(f"({c})" if not w else f"({c})*{mono}")
        return " + ".join(parts)


def _check(a: OpExpr, b: OpExpr) -> None:
    if a.context is not b.context:
        raise ContextMismatchError(
            f"cannot combine {a.context.name} and {b.context.name} expressions"
        )


def add(a: OpExpr, b: OpExpr) -> OpExpr:
    _check(a, b)
    out = dict(a._terms)
    for w, c in b._terms.items():
        _acc(out, w, c)
    return OpExpr._raw(a.context, out)


def mul(a: OpExpr, b: OpExpr) -> OpExpr:
    _check(a, b)
    ctx = a.context
    out: dict[Word, ParamScalar] = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            c = c1 * c2
            for w, c3 in ctx.normal_order(w1 + w2).items():
                _acc(out, w, c * c3)
    return OpExpr._raw(ctx, out)


def commutator(a: OpExpr, b: OpExpr) -> OpExpr:
    return mul(a, b) - mul(b, a)


def adjoint(a: OpExpr) -> OpExpr:
    """Hermitian adjoint: conjugate coefficients, reverse words, re-order."""
    ctx = a.context
    if not all(ctx.adjoint_signs):
        raise ValueError(f"{ctx.name} has generators that are not self-adjoint")
    out: dict[Word, ParamScalar] = {}
    for w, c in a._terms.items():
        cc = c.conjugate()
        for w2, c2 in ctx.normal_order(w[::-1]).items():
            _acc(out, w2, cc * c2)
    return OpExpr._raw(ctx, out)


def truncate(a: OpExpr, caps: Mapping | None = None) -> OpExpr:
    """Drop parameter terms whose degree exceeds a cap.

    ``caps`` maps a parameter name, or a tuple of names for a joint total
    degree, to the largest degree kept: ``{("theta", "tau"): 1}`` keeps
    first order in theta and tau together, ``{"tau": 0}`` sets tau to zero.
    """
    if not caps:
        return a
    out: dict[Word, ParamScalar] = {}
    for w, c in a._terms.items():
        c = c.truncate(caps)
        if c:
            out[w] = c
    return OpExpr._raw(a.context, out)


def substitute(
    a: OpExpr, images: Mapping[str, OpExpr], target: AlgebraContext | None = None
) -> OpExpr:
    """Homomorphic image of ``a`` with each generator replaced by its image.

    Images are multiplied in the original word order, then normal-ordered in
    the (common) target context.
    """
    contexts = {id(e.context): e.context for e in images.values()}
    if len(contexts) > 1:
        raise ContextMismatchError("substitution images live in different contexts")
    if target is None:
        target = next(iter(contexts.values())) if contexts else a.context
    elif contexts and target is not next(iter(contexts.values())):
        raise ContextMismatchError("substitution images are not in the target context")
    src = a.context
    result = target.zero()
    cache: dict[int, OpExpr] = {}
    for w, c in a._terms.items():
        prod = target.one()
        for k in w:
            img = cache.get(k)
            if img is None:
                name = src.generators[k]
                if name not in images:
                    raise MissingImageError(name)
                img = cache[k] = images[name]
            prod = mul(prod, img)
        result = add(result, prod.scale(c))
    return result


HEISENBERG = AlgebraContext(
    "HEISENBERG",
    ["x_s", "y_s", "p_xs", "p_ys"],
    {("x_s", "p_xs"): I * HBAR, ("y_s", "p_ys"): I * HBAR},
)

FLAT_NC = AlgebraContext(
    "FLAT_NC",
    ["x0", "y0", "p_x0", "p_y0"],
    {("x0", "y0"): I * THETA, ("x0", "p_x0"): I * HBAR, ("y0", "p_y0"): I * HBAR},
)

# Deformed variables carry no rewriting rules of their own; relations among
# them are checked through representations.
DEFORMED = AlgebraContext("DEFORMED", ["x", "y", "p_x", "p_y"], relations=None)
