"""Operator-valued forms, curvature, and trace cocycles.

The connection form sends a to a o p_plus; its curvature takes values in
finite-rank operators, so tracing wedge powers of it yields exact
alternating multilinear functionals.  This module provides the form
calculus (wedge, bracket, Chevalley-Eilenberg differential), the trace
cocycles, both coboundary operators, the Schwinger block cocycle and the
non-exactness witness search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable

from .errors import BlockNotTraceComputable, NotCommuting, NotTraceComputable
from .lattice import (
    LatticeOperator,
    commutator,
    compose,
    op_projection_plus,
)
from .scalars import GaussianRational, ZERO


def perm_sign(perm) -> int:
    """Sign of a permutation given as a tuple of distinct indices."""
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- the connection and its curvature ---------------------------------------

def theta(a: LatticeOperator) -> LatticeOperator:
    """Connection form: a composed with the positive-mode projection."""
    return compose(a, op_projection_plus(a.dim))


def curvature(a: LatticeOperator, b: LatticeOperator) -> LatticeOperator:
    """theta_a theta_b - theta_b theta_a - theta_[a,b]; always finite rank."""
    ta, tb = theta(a), theta(b)
    return compose(ta, tb) - compose(tb, ta) - theta(commutator(a, b))


def smoothing_part(a: LatticeOperator, b: LatticeOperator) -> LatticeOperator:
    """a [p+, b] p+ - b [p+, a] p+; structurally equal to curvature(a, b)."""
    p = op_projection_plus(a.dim)
    return (compose(compose(a, commutator(p, b)), p)
            - compose(compose(b, commutator(p, a)), p))


# -- operator-valued form calculus -------------------------------------------

@dataclass(frozen=True)
class OperatorForm:
    """Alternating multilinear map from operator tuples to operators,
    represented by its defining rule."""

    arity: int
    rule: Callable
    tag: str = "custom"
    dim: int = 1

    def __call__(self, *args: LatticeOperator) -> LatticeOperator:
        if len(args) != self.arity:
            raise ValueError(f"form of arity {self.arity} got {len(args)} arguments")
        return self.rule(*args)


def theta_form(dim: int = 1) -> OperatorForm:
    return OperatorForm(1, theta, "theta", dim)


def curvature_form(dim: int = 1) -> OperatorForm:
    return OperatorForm(2, curvature, "curvature", dim)


def form_wedge(alpha: OperatorForm, beta: OperatorForm) -> OperatorForm:
    """(alpha ^ beta)(a_1..a_{p+q}) =
    1/(p! q!) sum over permutations s of sign(s) *
    alpha(first p of s) o beta(last q of s)."""
    p, q = alpha.arity, beta.arity
    norm = GaussianRational(Fraction(1, factorial(p) * factorial(q)))

    def rule(*args):
        total = LatticeOperator.zero(args[0].dim)
        for s in permutations(range(p + q)):
            first = alpha(*(args[i] for i in s[:p]))
            second = beta(*(args[i] for i in s[p:]))
            term = compose(first, second)
            if perm_sign(s) < 0:
                term = -term
            total = total + term
        return total.scale(norm)

    return OperatorForm(p + q, rule, "wedge", alpha.dim)


def form_bracket(alpha: OperatorForm, beta: OperatorForm) -> OperatorForm:
    """[alpha, beta] = alpha ^ beta - (-1)^{pq} beta ^ alpha."""
    p, q = alpha.arity, beta.arity
    ab = form_wedge(alpha, beta)
    ba = form_wedge(beta, alpha)
    flip = (-1) ** (p * q)

    def rule(*args):
        second = ba(*args)
        if flip > 0:
            return ab(*args) - second
        return ab(*args) + second

    return OperatorForm(p + q, rule, "bracket", alpha.dim)


def form_differential(alpha: OperatorForm) -> OperatorForm:
    """Chevalley-Eilenberg differential:
    (d alpha)(a_0..a_p) = sum_{i<j} (-1)^{i+j} alpha([a_i, a_j], rest)."""
    p = alpha.arity

    def rule(*args):
        total = LatticeOperator.zero(args[0].dim)
        for i, j in combinations(range(p + 1), 2):
            rest = [args[t] for t in range(p + 1) if t not in (i, j)]
            term = alpha(commutator(args[i], args[j]), *rest)
            if (i + j) % 2:
                term = -term
            total = total + term
        return total

    return OperatorForm(p + 1, rule, "differential", alpha.dim)


# -- scalar cochains ---------------------------------------------------------

@dataclass(frozen=True)
class ScalarCochain:
    """Multilinear functional on operator tuples; skew means alternating."""

    arity: int
    rule: Callable
    skew: bool = True
    label: str = ""

    def __call__(self, *args: LatticeOperator) -> GaussianRational:
        if len(args) != self.arity:
            raise ValueError(f"cochain of arity {self.arity} got {len(args)} arguments")
        return self.rule(*args)


def chern_cocycle(k: int, *args: LatticeOperator) -> GaussianRational:
    """Alternating trace of the k-th power of the curvature:

    1/(2k)! * sum over s in S_2k of sign(s) *
    tr(curvature(a_s1, a_s2) o ... o curvature(a_s(2k-1), a_s(2k)))
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if len(args) != 2 * k:
        raise ValueError(f"expected {2 * k} arguments, got {len(args)}")
    # Curvature is antisymmetric, so cache it on index pairs i < j.
    cache: dict[tuple[int, int], LatticeOperator] = {}

    def omega(i: int, j: int) -> LatticeOperator:
        if i < j:
            key, flip = (i, j), False
        else:
            key, flip = (j, i), True
        if key not in cache:
            cache[key] = curvature(args[key[0]], args[key[1]])
        return -cache[key] if flip else cache[key]

    total = ZERO
    for s in permutations(range(2 * k)):
        prod = omega(s[0], s[1])
        for t in range(1, k):
            if prod.is_zero():
                break
            prod = compose(prod, omega(s[2 * t], s[2 * t + 1]))
        value = prod.trace()
        if perm_sign(s) < 0:
            value = -value
        total = total + value
    return total * GaussianRational(Fraction(1, factorial(2 * k)))


def chern_cochain(k: int, dim: int = 1) -> ScalarCochain:
    return ScalarCochain(2 * k, lambda *args: chern_cocycle(k, *args),
                         skew=True, label=f"tr(curvature^{k})")


def chern_permutation_table(k: int, *args: LatticeOperator):
    """Per-permutation breakdown of chern_cocycle: list of
    (permutation, sign, trace of the curvature product)."""
    if len(args) != 2 * k:
        raise ValueError(f"expected {2 * k} arguments, got {len(args)}")
    cache: dict[tuple[int, int], LatticeOperator] = {}

    def omega(i: int, j: int) -> LatticeOperator:
        key = (i, j) if i < j else (j, i)
        if key not in cache:
            cache[key] = curvature(args[key[0]], args[key[1]])
        return cache[key] if i < j else -cache[key]

    rows = []
    for s in permutations(range(2 * k)):
        prod = omega(s[0], s[1])
        for t in range(1, k):
            if prod.is_zero():
                break
            prod = compose(prod, omega(s[2 * t], s[2 * t + 1]))
        rows.append((s, perm_sign(s), prod.trace()))
    return rows


def ce_coboundary(c: ScalarCochain, *args: LatticeOperator) -> GaussianRational:
    """Chevalley-Eilenberg coboundary of a p-cochain, evaluated on p+1
    operators: sum_{i<j} (-1)^{i+j} c([a_i, a_j], ...omit i, j...)."""
    if len(args) != c.arity + 1:
        raise ValueError(f"expected {c.arity + 1} arguments, got {len(args)}")
    total = ZERO
    n = len(args)
    for i, j in combinations(range(n), 2):
        rest = [args[t] for t in range(n) if t not in (i, j)]
        value = c(commutator(args[i], args[j]), *rest)
        if (i + j) % 2:
            value = -value
        total = total + value
    return total


def hochschild_coboundary(c: ScalarCochain, *args: LatticeOperator) -> GaussianRational:
    """Hochschild coboundary for multilinear functionals:

    (b c)(a_0..a_p) = sum_{i<p} (-1)^i c(.., a_i a_{i+1}, ..)
                      + (-1)^p c(a_p a_0, a_1, .., a_{p-1})
    """
    p = c.arity
    if len(args) != p + 1:
        raise ValueError(f"expected {p + 1} arguments, got {len(args)}")
    total = ZERO
    for i in range(p):
        merged = list(args[:i]) + [compose(args[i], args[i + 1])] + list(args[i + 2:])
        value = c(*merged)
        if i % 2:
            value = -value
        total = total + value
    wrap = c(compose(args[p], args[0]), *args[1:p])
    if p % 2:
        wrap = -wrap
    return total + wrap


def ce_coboundary_cochain(c: ScalarCochain) -> ScalarCochain:
    return ScalarCochain(c.arity + 1, lambda *args: ce_coboundary(c, *args),
                         skew=True, label=f"d({c.label})")


# -- comparison cocycles -----------------------------------------------------

def schwinger_cocycle(a: LatticeOperator, b: LatticeOperator) -> GaussianRational:
    """Off-diagonal block cocycle tr(a_{+-} b_{-+} - b_{+-} a_{-+}),
    blocks taken against the positive-mode projection with the constant
    mode counted in the minus block."""
    if a.dim != b.dim:
        raise ValueError("operands must share the fiber dimension")
    plus = op_projection_plus(a.dim)
    minus = LatticeOperator.identity(a.dim) - plus
    a_pm = compose(compose(plus, a), minus)
    a_mp = compose(compose(minus, a), plus)
    b_pm = compose(compose(plus, b), minus)
    b_mp = compose(compose(minus, b), plus)
    try:
        return compose(a_pm, b_mp).trace() - compose(b_pm, a_mp).trace()
    except NotTraceComputable as exc:
        raise BlockNotTraceComputable(str(exc)) from exc


def schwinger_cochain(dim: int = 1) -> ScalarCochain:
    return ScalarCochain(2, schwinger_cocycle, skew=True, label="schwinger")


def nonvanishing_witness(c: ScalarCochain, family) -> tuple | None:
    """First tuple from a pairwise-commuting family on which c is nonzero.

    A hit certifies that c is not a coboundary on any Lie algebra
    containing the family: coboundaries of anything vanish identically
    on commuting tuples.
    """
    family = list(family)
    for x, y in combinations(family, 2):
        if not commutator(x, y).is_zero():
            raise NotCommuting("family contains a non-commuting pair")
    tuples = (combinations(family, c.arity) if c.skew
              else product(family, repeat=c.arity))
    for candidate in tuples:
        if c(*candidate):
            return tuple(candidate)
    return None
