"""Even-sequence algebra for rational-link patterns and satellite (1,1)-knots.

An even sequence is an odd-length tuple of even ints ``(c1, d1, c2, ..., cn+1)``.
It is *strict* when every entry is nonzero and *expanded* when every
odd-position entry (the g's) is +-2 while the h's in between are even and
may vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .contfrac import cf_eval, even_expand
from .errors import InputError
from .paramcode import ParamSequence

Symbol = Union[int, str]


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def format_even_seq(seq: Sequence[int]) -> str:
    return "(" + ",".join(str(int(v)) for v in seq) + ")"


def _check_shape(seq: Sequence[int]) -> tuple[int, ...]:
    t = tuple(int(v) for v in seq)
    if len(t) % 2 == 0:
        raise InputError(f"even sequence must have odd length: {t}")
    if any(v % 2 for v in t):
        raise InputError(f"even sequence entries must be even: {t}")
    return t


def is_strict(seq: Sequence[int]) -> bool:
    try:
        t = _check_shape(seq)
    except InputError:
        return False
    return all(v != 0 for v in t)


def is_expanded(seq: Sequence[int]) -> bool:
    try:
        t = _check_shape(seq)
    except InputError:
        return False
    return all(abs(g) == 2 for g in t[0::2])


def _require_strict(seq: Sequence[int]) -> tuple[int, ...]:
    t = _check_shape(seq)
    if any(v == 0 for v in t):
        raise InputError(f"strict even sequence has a zero entry: {t}")
    return t


def _require_expanded(seq: Sequence[int]) -> tuple[int, ...]:
    t = _check_shape(seq)
    if not all(abs(g) == 2 for g in t[0::2]):
        raise InputError(f"not in expanded form: {t}")
    return t


def expand_form(seq: Sequence[int]) -> tuple[int, ...]:
    """Replace every c with |c| > 2 by the run (+-2, 0, +-2, ..., 0, +-2) of length |c|-1."""
    t = _require_strict(seq)
    out: list[int] = []
    for i, v in enumerate(t):
        if i % 2 == 1 or abs(v) == 2:
            out.append(v)
            continue
        g = 2 * sgn(v)
        run = [g]
        for _ in range(abs(v) // 2 - 1):
            run += [0, g]
        out += run
    return tuple(out)


def contract_form(seq: Sequence[int]) -> tuple[int, ...]:
    """Replace every maximal run (+-2, 0, +-2, ..., 0, +-2) of length 2k-1 by +-2k."""
    t = _require_expanded(seq)
    g, h = list(t[0::2]), list(t[1::2])
    out: list[int] = []
    i = 0
    while i < len(g):
        j = i
        while j < len(h) and h[j] == 0 and g[j + 1] == g[i]:
            j += 1
        # g[i..j] joined by zero h's
        out.append(g[i] * (j - i + 1))
        if j < len(h):
            out.append(h[j])
        i = j + 1
    return tuple(out)


def f_transform(seq: Sequence[int]) -> tuple[int, ...]:
    """Negate every g and shift each h by the mean of its two neighbouring g's."""
    t = _require_expanded(seq)
    out = list(t)
    for i in range(1, len(t), 2):
        out[i] = t[i] + (t[i - 1] + t[i + 1]) // 2
    for i in range(0, len(t), 2):
        out[i] = -t[i]
    return tuple(out)


def associated_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    return contract_form(f_transform(expand_form(seq)))


def alpha_beta(r: Fraction) -> tuple[int, int]:
    """(alpha, beta) with alpha > 0 and r = alpha/beta."""
    return abs(r.numerator), r.denominator * sgn(r.numerator)


def schubert_equivalent(r1: tuple[int, int], r2: tuple[int, int]) -> bool:
    """Two-bridge links (alpha, beta), (alpha', beta') coincide iff alpha = alpha'
    and beta = beta' or beta*beta' = 1 (mod alpha)."""
    (a1, b1), (a2, b2) = r1, r2
    if a1 != a2:
        return False
    a = abs(a1)
    return (b1 - b2) % a == 0 or (b1 * b2 - 1) % a == 0


@dataclass(frozen=True)
class SatelliteSpec:
    """K(alpha, beta; p, q). ``p``/``q`` may be the strings "p"/"q" for display."""

    alpha: int
    beta: int
    p: Symbol = "p"
    q: Symbol = "q"

    def violations(self) -> list[str]:
        out = []
        a, b = self.alpha, self.beta
        if a < 4 or a % 2:
            out.append(f"alpha must be even and >= 4 (got {a})")
        if not a > abs(b) > 0:
            out.append(f"need alpha > |beta| > 0 (got alpha={a}, beta={b})")
        elif gcd(a, abs(b)) != 1:
            out.append(f"alpha and beta must be coprime (gcd {gcd(a, abs(b))})")
        if isinstance(self.p, int) != isinstance(self.q, int):
            out.append("p and q must both be integers or both symbolic")
        elif isinstance(self.p, int):
            if min(abs(self.p), abs(self.q)) < 2 or gcd(abs(self.p), abs(self.q)) != 1:
                out.append(f"(p, q) = ({self.p}, {self.q}) is not a nontrivial torus knot")
        elif (self.p, self.q) != ("p", "q"):
            out.append('symbolic mode expects the literal strings "p" and "q"')
        return out

    def check(self) -> "SatelliteSpec":
        bad = self.violations()
        if bad:
            raise InputError("; ".join(bad))
        return self

    @property
    def symbolic(self) -> bool:
        return not isinstance(self.p, int)


@dataclass(frozen=True)
class TightPattern:
    """A tight parameterization with the torus parameters left free.

    ``signs[k]`` is e_k in {1, -1}: the k-th slope pair is (e_k p, e_k q).
    ``windings`` sits between consecutive slope pairs.
    """

    signs: tuple[int, ...]
    windings: tuple[int, ...]

    def __post_init__(self):
        assert len(self.signs) == len(self.windings) + 1

    def __len__(self) -> int:
        return 3 * len(self.windings) + 2

    def entries(self, p: Symbol = "p", q: Symbol = "q") -> list[Symbol]:
        out: list[Symbol] = []
        for k, e in enumerate(self.signs):
            out += [_scale(e, p), _scale(e, q)]
            if k < len(self.windings):
                out.append(self.windings[k])
        return out

    def text(self, p: Symbol = "p", q: Symbol = "q") -> str:
        return "(" + ",".join(str(v) for v in self.entries(p, q)) + ")"

    def bind(self, p: int, q: int) -> ParamSequence:
        return ParamSequence.from_flat(self.entries(int(p), int(q)))

    def negated(self) -> "TightPattern":
        return TightPattern(tuple(-e for e in self.signs), self.windings)


def _scale(e: int, v: Symbol) -> Symbol:
    if isinstance(v, int):
        return e * v
    return v if e > 0 else f"-{v}"


def _first_last_winding(g_here: int, g_other: int, h: int) -> int:
    if h == 0:
        return sgn(g_here)
    if sgn(g_here) == sgn(g_other):
        return h + sgn(h) if sgn(h) == sgn(g_here) else h - sgn(h)
    return h


def _inner_winding(g: Sequence[int], h: Sequence[int], k: int) -> int:
    # k is 1-based into h; neighbours h[k-1], h[k+1] exist for 2 <= k <= l-1
    gk, gk1 = g[k - 1], g[k]
    hk, hprev, hnext = h[k - 1], h[k - 2], h[k]
    s = sgn
    if s(gk) == s(gk1):
        if hk == 0:
            if (hprev != 0 and s(hprev) != s(gk)) or (hnext != 0 and s(hnext) != s(gk)):
                return s(gk)
            return 0
        if s(hk) != s(gk):
            if s(hprev) != s(hk) or s(hnext) != s(hk):
                return hk - s(hk)
            return hk - 2 * s(hk)
        if (hprev != 0 and s(hprev) != s(hk)) or (hnext != 0 and s(hnext) != s(gk)):
            return hk + s(hk)
        return hk
    if s(hk) == s(gk):
        if (hprev != 0 and s(hprev) != s(hk)) or s(hnext) != s(hk):
            return hk
        return hk - s(hk)
    if s(hk) == s(gk1):
        if (hnext != 0 and s(hnext) != s(hk)) or s(hprev) != s(hk):
            return hk
        return hk - s(hk)
    # h_k = 0 between g's of opposite sign never occurs in the expanded form
    # of a strict sequence
    raise InputError(f"h_{k} = 0 between g's of opposite sign")


def algorithm1(seq: Sequence[int]) -> TightPattern:
    """Tight parameterization pattern of K(alpha, beta; p, q) read off the
    pattern diagram ``seq`` (a strict even sequence)."""
    t = expand_form(seq)
    g, h = t[0::2], t[1::2]
    l = len(h)
    signs = tuple(gi // 2 for gi in g)
    windings = []
    for k in range(1, l + 1):
        if k == 1:
            windings.append(_first_last_winding(g[0], g[1], h[0]))
        elif k == l:
            windings.append(_first_last_winding(g[l], g[l - 1], h[l - 1]))
        else:
            windings.append(_inner_winding(g, h, k))
    return TightPattern(signs, tuple(windings))


@dataclass(frozen=True)
class SatelliteChain:
    """Every intermediate of the tight-pair computation, for reporting."""

    spec: SatelliteSpec
    a: tuple[int, ...]
    a_expanded: tuple[int, ...]
    f_expanded: tuple[int, ...]
    a_assoc: tuple[int, ...]
    value: Fraction
    assoc_value: Fraction
    first: TightPattern
    second: TightPattern


def satellite_chain(spec: SatelliteSpec) -> SatelliteChain:
    spec.check()
    a = even_expand(Fraction(spec.alpha, spec.beta))
    ae = expand_form(a)
    fae = f_transform(ae)
    a2 = contract_form(fae)
    return SatelliteChain(
        spec=spec, a=a, a_expanded=ae, f_expanded=fae, a_assoc=a2,
        value=cf_eval(a), assoc_value=cf_eval(a2),
        first=algorithm1(a), second=algorithm1(a2),
    )


def tight_pair(spec: SatelliteSpec):
    """The two tight parameterizations of K(alpha, beta; p, q).

    Returns a pair of :class:`TightPattern` in symbolic mode and a pair of
    :class:`ParamSequence` when ``p``/``q`` are integers.
    """
    chain = satellite_chain(spec)
    if spec.symbolic:
        return chain.first, chain.second
    return chain.first.bind(spec.p, spec.q), chain.second.bind(spec.p, spec.q)
