"""Constructors for triple, quintuple, and Winquist products.

Primary constructions are theta sums, O(sqrt(N)) terms:

    <z; q>      = sum_k (-z)^k q^(k(k-1)/2)                (triple product)
    Q(z, q)     = sum_k q^(k(3k-1)/2) z^(3k) (1 - z q^k)   (quintuple)
    W(a, b; q)  = <a^3,b^3 q;q^3> - b <a^3,b^3 q^2;q^3>
                  - (a/b) <a^3 q,b^3;q^3> + (a^2/b) <a^3 q^2,b^3;q^3>

with z, a, b specialized to signed monomials in q.  The infinite-product
forms

    <z; q>   = (z, q/z, q; q)_inf
    Q(z, q)  = (z, q/z, q; q)_inf (q z^2, q / z^2; q^2)_inf
    W(a,b;q) = <a, b, ab, a/b; q>_inf / (q; q)_inf^2

are kept as independently coded cross-checks; they expand the actual
factors (1 -+ q^e), including the finitely many factors with negative
exponent that arise when an argument exponent falls outside [0, y).
"""

from dataclasses import dataclass

from .series import LaurentSeries, convolve

# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class TripleSpec:
    """<sign * q^x; q^y> with y > 0."""

    sign: int
    x: int
    y: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.y <= 0:
            raise ValueError("modulus exponent y must be positive")


@dataclass(frozen=True)
class QuintupleSpec:
    """Q(q^x, q^y) with y > 0."""

    x: int
    y: int

    def __post_init__(self):
        if self.y <= 0:
            raise ValueError("modulus exponent y must be positive")


@dataclass(frozen=True)
class WinquistSpec:
    """W(a_sign * q^a_exp, b_sign * q^b_exp; q^y) with y > 0."""

    a_exp: int
    b_exp: int
    y: int
    a_sign: int = -1
    b_sign: int = -1

    def __post_init__(self):
        if self.y <= 0:
            raise ValueError("modulus exponent y must be positive")
        if self.a_sign not in (1, -1) or self.b_sign not in (1, -1):
            raise ValueError("argument signs must be +1 or -1")


# ---------------------------------------------------------------------------
# quadratic exponent helpers


def _sigma(t: int, y: int) -> int:
    """t(t-1)y/2, the exponent drift of a t-step argument shift."""
    return t * (t - 1) * y // 2


def _quad_le_range(a: int, b: int, c: int) -> tuple[int, int] | None:
    """Integer solutions of a k^2 + b k + c <= 0 for a > 0, as [kmin, kmax]."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    import math

    root = math.isqrt(disc)
    lo = (-b - root) // (2 * a)
    hi = (-b + root) // (2 * a)
    while a * lo * lo + b * lo + c > 0:
        lo += 1
    while a * (lo - 1) * (lo - 1) + b * (lo - 1) + c <= 0:
        lo -= 1
    while a * hi * hi + b * hi + c > 0:
        hi -= 1
    while a * (hi + 1) * (hi + 1) + b * (hi + 1) + c <= 0:
        hi += 1
    if lo > hi:
        return None
    return lo, hi


def _quad_min(a: int, b: int, c: int) -> int:
    """Minimum of a k^2 + b k + c over integer k, for a > 0."""
    k = -b // (2 * a)
    return min(
        a * k * k + b * k + c,
        a * (k + 1) * (k + 1) + b * (k + 1) + c,
    )


def triple_min_exponent(x: int, y: int) -> int:
    """Least exponent in the theta expansion of <+-q^x; q^y>: min_k kx + k(k-1)y/2."""
    # 2*e(k) = y k^2 + (2x - y) k
    return _quad_min(y, 2 * x - y, 0) // 2


def quintuple_min_exponent(x: int, y: int) -> int:
    """Least exponent in the theta expansion of Q(q^x, q^y)."""
    m1 = _quad_min(3 * y, 6 * x - y, 0)  # doubled exponents, family z^(3k)
    m2 = _quad_min(3 * y, 6 * x + y, 2 * x)  # family z^(3k+1)
    return min(m1, m2) // 2


# ---------------------------------------------------------------------------
# theta-sum constructions


def triple(spec: TripleSpec, N: int) -> LaurentSeries:
    """<sign * q^x; q^y> as a theta sum, exact through q^N."""
    s, x, y = spec.sign, spec.x, spec.y
    terms: dict[int, int] = {}
    rng = _quad_le_range(y, 2 * x - y, -2 * N)
    if rng is not None:
        for k in range(rng[0], rng[1] + 1):
            e = k * x + k * (k - 1) * y // 2
            c = 1 if (s == -1 or k % 2 == 0) else -1
            terms[e] = terms.get(e, 0) + c
    lo = min(triple_min_exponent(x, y), N)
    return _dense_from_terms(terms, lo, N)


def quintuple(spec: QuintupleSpec, N: int) -> LaurentSeries:
    """Q(q^x, q^y) as a theta sum, exact through q^N."""
    x, y = spec.x, spec.y
    terms: dict[int, int] = {}
    rng = _quad_le_range(3 * y, 6 * x - y, -2 * N)
    if rng is not None:
        for k in range(rng[0], rng[1] + 1):
            e = 3 * k * x + k * (3 * k - 1) * y // 2
            terms[e] = terms.get(e, 0) + 1
    rng = _quad_le_range(3 * y, 6 * x + y, 2 * x - 2 * N)
    if rng is not None:
        for k in range(rng[0], rng[1] + 1):
            e = (3 * k + 1) * x + k * (3 * k + 1) * y // 2
            terms[e] = terms.get(e, 0) - 1
    lo = min(quintuple_min_exponent(x, y), N)
    return _dense_from_terms(terms, lo, N)


def _dense_from_terms(terms: dict[int, int], lo: int, N: int) -> LaurentSeries:
    arr = [0] * (N - lo + 1)
    for t, c in terms.items():
        if c and t <= N:
            arr[t - lo] = c
    return LaurentSeries(lo, N, arr)


def quintuple_two_triples(spec: QuintupleSpec, N: int) -> LaurentSeries:
    """Q(q^x, q^y) via <-q^(y+3x); q^(3y)> - q^x <-q^(2y+3x); q^(3y)>."""
    x, y = spec.x, spec.y
    t1 = triple(TripleSpec(-1, y + 3 * x, 3 * y), N)
    t2 = triple(TripleSpec(-1, 2 * y + 3 * x, 3 * y), N - x)
    return t1 - t2.shift(x)


def triple_pair(x1: int, x2: int, y: int, N: int, s1: int = -1, s2: int = -1) -> LaurentSeries:
    """<s1 q^x1; q^y> * <s2 q^x2; q^y>, exact through q^N."""
    lo1 = triple_min_exponent(x1, y)
    lo2 = triple_min_exponent(x2, y)
    if lo1 + lo2 > N:
        return LaurentSeries.zero(N, lo=N)  # support lies above the window
    prod = triple(TripleSpec(s1, x1, y), N - lo2) * triple(TripleSpec(s2, x2, y), N - lo1)
    return prod.truncated(N)


def quintuple_pair(x1: int, x2: int, y: int, N: int) -> LaurentSeries:
    """Q(q^x1, q^y) * Q(q^x2, q^y), exact through q^N."""
    lo1 = quintuple_min_exponent(x1, y)
    lo2 = quintuple_min_exponent(x2, y)
    if lo1 + lo2 > N:
        return LaurentSeries.zero(N, lo=N)
    prod = quintuple(QuintupleSpec(x1, y), N - lo2) * quintuple(QuintupleSpec(x2, y), N - lo1)
    return prod.truncated(N)


# ---------------------------------------------------------------------------
# product-form expansions (independent oracles)

_SPARSE_LIMIT = 384


def _chain_factors(start: int, step: int, sign: int, bound: int) -> list[tuple[int, int]]:
    """Factors (1 - sign*q^e) with e = start + k*step, k >= 0, e <= bound."""
    out = []
    e = start
    while e <= bound:
        out.append((e, sign))
        e += step
    return out


def product_of_factors(factors: list[tuple[int, int]], N: int) -> LaurentSeries:
    """Exact product of binomial factors prod (1 - s * q^e) through q^N.

    Every factor with e <= N - v must be present, where v is the total of
    the negative exponents; the callers arrange that.  The product is
    evaluated as a balanced tree so the big merges run through the
    Kronecker-substitution convolution, with every intermediate truncated
    to the exponents that can still influence the final window.
    """
    for e, s in factors:
        if e == 0 and s == 1:
            return LaurentSeries.zero(N)  # a (1 - q^0) factor kills the product
    v_neg = sum(min(0, e) for e, _ in factors)
    if not factors:
        return LaurentSeries.one(N)

    def merge(lo_a, a, lo_b, b, cap):
        # nodes are either sparse dicts {exp: coeff} or (lo, dense list)
        if isinstance(a, dict) and isinstance(b, dict) and len(a) * len(b) <= _SPARSE_LIMIT**2:
            out: dict[int, int] = {}
            for i, ci in a.items():
                for j, cj in b.items():
                    t = i + j
                    if t <= cap:
                        out[t] = out.get(t, 0) + ci * cj
            if len(out) <= _SPARSE_LIMIT:
                return lo_a + lo_b, {t: c for t, c in out.items() if c}
            return lo_a + lo_b, _to_dense(out, lo_a + lo_b, cap)
        da = a if not isinstance(a, dict) else _to_dense(a, lo_a, cap - lo_b)
        db = b if not isinstance(b, dict) else _to_dense(b, lo_b, cap - lo_a)
        lo = lo_a + lo_b
        prod = convolve(da, db)
        return lo, prod[: cap - lo + 1]

    def build(fs):
        if len(fs) == 1:
            e, s = fs[0]
            node = {0: 1}
            node[e] = node.get(e, 0) - s
            node = {t: c for t, c in node.items() if c}
            return min(0, e), node
        mid = len(fs) // 2
        lo_a, a = build(fs[:mid])
        lo_b, b = build(fs[mid:])
        lo = lo_a + lo_b
        cap = N - v_neg + lo
        return merge(lo_a, a, lo_b, b, cap)

    lo, node = build(factors)
    if lo > N:
        return LaurentSeries.zero(N, lo=N)
    if isinstance(node, dict):
        node = _to_dense(node, lo, N)
    arr = node + [0] * (N - lo + 1 - len(node))
    return LaurentSeries(lo, N, arr[: N - lo + 1])


def _to_dense(terms: dict[int, int], lo: int, hi: int) -> list[int]:
    arr = [0] * max(0, hi - lo + 1)
    for t, c in terms.items():
        if lo <= t <= hi:
            arr[t - lo] = c
    return arr


def pochhammer(a: int, b: int, sign: int, N: int) -> LaurentSeries:
    """(sign * q^a; q^b)_inf truncated so it is exact through q^N."""
    if b <= 0:
        raise ValueError("Pochhammer step must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v_neg = 0
    e = a
    while e < 0:
        v_neg += e
        e += b
    factors = _chain_factors(a, b, sign, N - v_neg)
    return product_of_factors(factors, N)


def triple_product_form(spec: TripleSpec, N: int) -> LaurentSeries:
    """<sign q^x; q^y> by multiplying out (z, q/z, q; q)_inf factor by factor."""
    s, x, y = spec.sign, spec.x, spec.y
    chains = [(x, y, s), (y - x, y, s), (y, y, 1)]
    return _expand_chains(chains, N)


def quintuple_product_form(spec: QuintupleSpec, N: int) -> LaurentSeries:
    """Q(q^x, q^y) by multiplying out all five Pochhammer chains."""
    x, y = spec.x, spec.y
    chains = [
        (x, y, 1),
        (y - x, y, 1),
        (y, y, 1),
        (y + 2 * x, 2 * y, 1),
        (y - 2 * x, 2 * y, 1),
    ]
    return _expand_chains(chains, N)


def _expand_chains(chains: list[tuple[int, int, int]], N: int) -> LaurentSeries:
    v_neg = 0
    for start, step, _ in chains:
        e = start
        while e < 0:
            v_neg += e
            e += step
    factors: list[tuple[int, int]] = []
    for start, step, sign in chains:
        factors.extend(_chain_factors(start, step, sign, N - v_neg))
    return product_of_factors(factors, N)


# ---------------------------------------------------------------------------
# Winquist product


def winquist_sum(spec: WinquistSpec, N: int) -> LaurentSeries:
    """W(a, b; q^y) through q^N via the four-triple-product expansion."""
    sa, sb = spec.a_sign, spec.b_sign
    A, B, y = spec.a_exp, spec.b_exp, spec.y
    t1 = triple_pair(3 * A, 3 * B + y, 3 * y, N, sa, sb)
    t2 = triple_pair(3 * A, 3 * B + 2 * y, 3 * y, N - B, sa, sb).shift(B).scale(-sb)
    t3 = (
        triple_pair(3 * A + y, 3 * B, 3 * y, N - (A - B), sa, sb)
        .shift(A - B)
        .scale(-sa * sb)
    )
    t4 = (
        triple_pair(3 * A + 2 * y, 3 * B, 3 * y, N - (2 * A - B), sa, sb)
        .shift(2 * A - B)
        .scale(sb)
    )
    return t1 + t2 + t3 + t4


def winquist_quotient(spec: WinquistSpec, N: int) -> LaurentSeries:
    """W(a, b; q^y) through q^N via <a, b, ab, a/b; q^y> / (q^y; q^y)_inf^2."""
    sa, sb = spec.a_sign, spec.b_sign
    A, B, y = spec.a_exp, spec.b_exp, spec.y
    args = [(sa, A), (sb, B), (sa * sb, A + B), (sa * sb, A - B)]
    los = [min(triple_min_exponent(x, y), N) for _, x in args]
    total_lo = sum(los)
    inv_sq = pochhammer(y, y, 1, N - total_lo).invert() ** 2
    acc = inv_sq
    for i, (s, x) in enumerate(args):
        n_i = N - (total_lo - los[i])
        acc = acc * triple(TripleSpec(s, x, y), n_i)
    return acc.truncated(N)


def normalize_winquist_args(a_exp: int, b_exp: int, y: int) -> tuple[int, int, int, int]:
    """Canonicalize W(-q^a, -q^b; q^y) to sign * q^off * W(-q^A, -q^B; q^y).

    The canonical form has 0 <= B <= A <= y/2, reached through exact
    argument shifts, the reflection a -> q^y/a (which fixes W), and the
    swap W(a, b) = -(a/b) W(b, a).
    """
    sign, off = 1, 0
    t = a_exp // y
    A = a_exp - t * y
    off += -3 * t * A - 3 * _sigma(t, y)
    t = b_exp // y
    B = b_exp - t * y
    off += -3 * t * B - t * y - 3 * _sigma(t, y)
    if 2 * A > y:
        A = y - A
    if 2 * B > y:
        sign = -sign
        off += A - B
        A, B = y - B, A
    if A < B:
        sign = -sign
        off += A - B
        A, B = B, A
    return sign, off, A, B


# ---------------------------------------------------------------------------
# quintuple normalization


@dataclass(frozen=True)
class QuintupleReduction:
    """Q(q^h, q^p) = sign * q^offset * Q(q^exponent, q^p) with 0 <= exponent <= p/2."""

    sign: int
    offset: int
    exponent: int

    @property
    def is_zero(self) -> bool:
        # exponent 0 means a Q(q^(t*p), q^p) instance, identically zero
        return self.exponent == 0


def reduce_quintuple(h: int, p: int) -> QuintupleReduction:
    """Normalize Q(q^h, q^p) by argument shifts and one reflection.

    Writing h = kp + l with 0 <= l < p, the shift law gives
    Q(q^h, q^p) = q^H Q(q^l, q^p) with H = -3kl - k(3k-1)p/2, and when
    l > p/2 the reflection Q(q^l, q^p) = -q^(p-2l) Q(q^(p-l), q^p)
    brings the exponent into [0, p/2].
    """
    if p < 2:
        raise ValueError("modulus must be at least 2")
    k, l = divmod(h, p)
    H = -3 * k * l - k * (3 * k - 1) * p // 2
    if 2 * l <= p:
        eps = 0
    else:
        eps = p - 2 * l
    sign = -1 if eps % 2 else 1
    return QuintupleReduction(sign, H + eps, l + eps)
