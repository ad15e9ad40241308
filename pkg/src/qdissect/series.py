"""Truncated Laurent series with exact integer coefficients.

A series is stored densely on an exponent window [lo, valid_through].
Coefficients below lo are zero by definition; coefficients above
valid_through are unknown (the truncation point).  Every operation
propagates the window through which its result is provably complete, so
identities can be checked exactly as far as both sides are known and no
further.

All coefficients are Python ints (arbitrary precision).  Values are
immutable after construction and all operations are pure, so instances
are safe to share freely.
"""

from typing import Iterable, Iterator, NamedTuple, Optional

import gmpy2

_SCHOOLBOOK_CUTOFF = 1 << 12  # len(a)*len(b) below this: plain loops win


def convolve(a: list[int], b: list[int]) -> list[int]:
    """Exact integer convolution (polynomial product of coefficient lists).

    Large products go through Kronecker substitution: the coefficient
    lists are packed into big integers at a digit width that provably
    cannot carry between coefficients, multiplied with GMP, and unpacked.
    """
    if not a or not b:
        return []
    amax = max(max(a), -min(a))
    bmax = max(max(b), -min(b))
    if amax == 0 or bmax == 0:
        return [0] * (len(a) + len(b) - 1)
    if len(a) * len(b) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return out
    # digit width: every product coefficient fits strictly inside a
    # signed digit of B bits
    bound = min(len(a), len(b)) * amax * bmax
    nbits = bound.bit_length() + 2
    width = (nbits + 7) // 8 * 8
    packed = gmpy2.mpz(_pack_signed(a, width)) * gmpy2.mpz(_pack_signed(b, width))
    return _unpack_signed(int(packed), width, len(a) + len(b) - 1)


def _pack_signed(coeffs: list[int], width: int) -> int:
    nbytes = width // 8
    pos = bytearray(len(coeffs) * nbytes)
    neg = bytearray(len(coeffs) * nbytes)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * nbytes : i * nbytes + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
        elif c < 0:
            c = -c
            neg[i * nbytes : i * nbytes + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack_signed(value: int, width: int, count: int) -> list[int]:
    nbytes = width // 8
    half = 1 << (width - 1)
    # adding `half` to every digit makes all digits non-negative without
    # carries, because each true coefficient lies in (-half, half)
    bias_block = half.to_bytes(nbytes, "little")
    value += int.from_bytes(bias_block * count, "little")
    raw = value.to_bytes(count * nbytes, "little")
    return [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(count)
    ]


class Agreement(NamedTuple):
    """Outcome of comparing two series on the overlap of their windows."""

    equal: bool
    lo: int  # first exponent compared
    hi: int  # last exponent compared; hi < lo means an empty overlap
    first_diff: Optional[int]

    @property
    def width(self) -> int:
        return max(0, self.hi - self.lo + 1)


class LaurentSeries:
    """Exact integer Laurent series on the window [lo, valid_through]."""

    __slots__ = ("lo", "valid_through", "coeffs")

    def __init__(self, lo: int, valid_through: int, coeffs: Iterable[int]):
        coeffs = tuple(coeffs)
        if lo > valid_through:
            raise ValueError(f"empty window: lo={lo} > valid_through={valid_through}")
        if len(coeffs) != valid_through - lo + 1:
            raise ValueError(
                f"coefficient count {len(coeffs)} does not match window "
                f"[{lo}, {valid_through}]"
            )
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "valid_through", valid_through)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, valid_through: int, lo: int = 0) -> "LaurentSeries":
        lo = min(lo, valid_through)
        return cls(lo, valid_through, [0] * (valid_through - lo + 1))

    @classmethod
    def one(cls, valid_through: int) -> "LaurentSeries":
        return cls.monomial(0, valid_through)

    @classmethod
    def monomial(cls, exponent: int, valid_through: int, coeff: int = 1) -> "LaurentSeries":
        if exponent > valid_through:
            return cls.zero(valid_through, lo=valid_through)
        arr = [0] * (valid_through - exponent + 1)
        arr[0] = coeff
        return cls(exponent, valid_through, arr)

    @classmethod
    def from_terms(cls, terms: dict[int, int], valid_through: int) -> "LaurentSeries":
        """Series from an exponent -> coefficient map, exact through valid_through."""
        keep = {t: c for t, c in terms.items() if t <= valid_through and c}
        if not keep:
            return cls.zero(valid_through, lo=min(valid_through, 0))
        lo = min(keep)
        arr = [0] * (valid_through - lo + 1)
        for t, c in keep.items():
            arr[t - lo] = c
        return cls(lo, valid_through, arr)

    # ------------------------------------------------------------------
    # access

    def coeff(self, t: int) -> int:
        if t > self.valid_through:
            raise ValueError(
                f"coefficient at q^{t} is beyond the validity window "
                f"(valid through {self.valid_through})"
            )
        if t < self.lo:
            return 0
        return self.coeffs[t - self.lo]

    def terms(self) -> Iterator[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs in ascending exponent order."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lo + i, c

    def valuation(self) -> Optional[int]:
        """Smallest exponent with a nonzero stored coefficient, if any."""
        for t, _ in self.terms():
            return t
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lo = min(self.lo, other.lo)
        hi = min(self.valid_through, other.valid_through)
        lo = min(lo, hi)
        out = [0] * (hi - lo + 1)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                t = s.lo + i
                if c and lo <= t <= hi:
                    out[t - lo] += c
        return LaurentSeries(lo, hi, out)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.lo, self.valid_through, [-c for c in self.coeffs])

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        # the convolution at exponent t is complete only while every
        # contributing pair lies inside both input windows
        hi = min(
            self.valid_through + other.lo,
            other.valid_through + self.lo,
        )
        lo = self.lo + other.lo
        prod = convolve(list(self.coeffs), list(other.coeffs))
        return LaurentSeries(lo, hi, prod[: hi - lo + 1])

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentSeries":
        return LaurentSeries(self.lo, self.valid_through, [c * x for x in self.coeffs])

    def shift(self, e: int) -> "LaurentSeries":
        """Multiply by q^e: translate the whole window."""
        return LaurentSeries(self.lo + e, self.valid_through + e, self.coeffs)

    def __pow__(self, n: int) -> "LaurentSeries":
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers must be non-negative integers")
        result = LaurentSeries.one(self.valid_through)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self) -> "LaurentSeries":
        """Formal inverse of a unit power series (constant term 1).

        Newton iteration doubles the correct prefix each round, so the
        cost is a constant number of full-window convolutions.
        """
        if self.valid_through < 0:
            raise ValueError("window must reach exponent 0 to invert")
        v = self.valuation()
        if v != 0 or self.coeff(0) != 1:
            raise ValueError("not invertible as formal power series")
        n = self.valid_through + 1
        dense = [self.coeff(t) for t in range(n)]
        inv = [1]
        prec = 1
        while prec < n:
            prec = min(2 * prec, n)
            ax = convolve(dense[:prec], inv)[:prec]
            err = [-c for c in ax]
            err[0] += 2
            inv = convolve(inv, err)[:prec]
        return LaurentSeries(0, self.valid_through, inv)

    def residue_component(self, p: int, r: int) -> "LaurentSeries":
        """Keep exactly the terms with exponent congruent to r mod p."""
        if p < 2:
            raise ValueError("modulus must be at least 2")
        if not 0 <= r < p:
            raise ValueError(f"residue {r} out of range for modulus {p}")
        out = [c if (self.lo + i) % p == r else 0 for i, c in enumerate(self.coeffs)]
        return LaurentSeries(self.lo, self.valid_through, out)

    def truncated(self, valid_through: int) -> "LaurentSeries":
        """Narrow the validity window (never widens it)."""
        if valid_through > self.valid_through:
            raise ValueError("cannot extend a validity window")
        lo = min(self.lo, valid_through)
        return LaurentSeries(lo, valid_through, self.coeffs[: valid_through - self.lo + 1])

    # ------------------------------------------------------------------
    # comparison

    def agreement(self, other: "LaurentSeries") -> Agreement:
        """Compare coefficients on the overlap of the validity windows.

        The scan starts below both stored windows (where both series are
        zero by definition) and ends at the smaller valid_through.  The
        caller decides whether the overlap is deep enough to mean much.
        """
        lo = min(self.lo, other.lo)
        hi = min(self.valid_through, other.valid_through)
        if hi < lo:
            return Agreement(True, lo, hi, None)
        for t in range(lo, hi + 1):
            if self.coeff(t) != other.coeff(t):
                return Agreement(False, lo, hi, t)
        return Agreement(True, lo, hi, None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.agreement(other).equal

    __hash__ = None  # window-overlap equality is not hashable-consistent

    # ------------------------------------------------------------------
    # serialization

    def serialize(self) -> str:
        """One `t,c` line per nonzero coefficient, after a window header."""
        lines = [f"# lo={self.lo} valid_through={self.valid_through}"]
        lines.extend(f"{t},{c}" for t, c in self.terms())
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        head = ", ".join(f"q^{t}:{c}" for t, c in list(self.terms())[:6])
        more = "..." if sum(1 for _ in self.terms()) > 6 else ""
        return (
            f"LaurentSeries([{self.lo},{self.valid_through}], {{{head}{more}}})"
        )
