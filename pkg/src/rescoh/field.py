"""Exact arithmetic in the prime field GF(p).

Scalars, modular binomial coefficients, and exhaustive verifiers for the
four families of binomial identities the cochain formulas depend on.
Only prime fields are supported: over GF(p) the Frobenius map is the
identity, so p-semilinear maps coincide with linear ones.  Formulas
still raise scalars to the p-th power where the theory says so, in case
the field type is ever generalized.
"""

from __future__ import annotations

import math


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting 0 in GF(p)."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate at the scale used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime:
    """A validated prime modulus.

    Thin wrapper so that a nonsense modulus fails loudly at construction
    instead of corrupting arithmetic downstream.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __int__(self) -> int:
        return self.p

    def __index__(self) -> int:
        return self.p

    def __eq__(self, other) -> bool:
        if isinstance(other, Prime):
            return self.p == other.p
        return self.p == other

    def __hash__(self) -> int:
        return hash(self.p)

    def __repr__(self) -> str:
        return f"Prime({self.p})"


class FpScalar:
    """An element of GF(p) with operator overloads.

    Most of the package works with plain ints and numpy arrays reduced
    mod p; this class is the reference scalar type for places where an
    explicit field element is clearer than a bare int.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.value = int(value) % p

    def _coerce(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        return FpScalar(other, self.p)

    def __add__(self, other):
        o = self._coerce(other)
        return FpScalar(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FpScalar(self.value - o.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FpScalar(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return fp_inv(self) ** (-k)
        return FpScalar(pow(self.value, k, self.p), self.p)

    def __truediv__(self, other):
        return self * fp_inv(self._coerce(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FpScalar({self.value}, p={self.p})"


def fp_inv(a: FpScalar) -> FpScalar:
    """Multiplicative inverse in GF(p).

    Raises:
        ZeroInverse: if a is zero.
    """
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return FpScalar(pow(a.value, -1, a.p), a.p)


def inv_mod(a: int, p: int) -> int:
    """Inverse of a nonzero residue, as a plain int."""
    a = a % p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def binom_mod(a: int, b: int, p: int) -> int:
    """C(a, b) mod p, with C(a, b) = 0 whenever b > a or b < 0.

    Computed from the exact big-integer binomial, so the convention for
    out-of-range indices is uniform and no Lucas-style case split is
    needed at this scale.
    """
    if a < 0:
        raise ValueError("binom_mod expects a >= 0")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b) % int(p)


IDENTITY_BOUND = 13


def verify_identities(p: int, bound: int = IDENTITY_BOUND) -> list[dict]:
    """Exhaustively check the four binomial identity families for one prime.

    The families, with C(s, t) = 0 whenever t > s:

    1. reflection:      C(p-1-s, t) = (-1)^{s+t} C(p-1-t, s)  mod p,
                        for 0 <= s, t <= p-1.
    2. alternating_sum: sum_{i=b}^{a-c} (-1)^i C(a, i+c) C(i, b)
                        = (-1)^b C(a-b-1, c-1), exactly in Z,
                        for a > b >= 0, 1 <= c <= a-b, a <= 2p.
    3. diagonal_sum:    sum_{k=0}^{n-1} C(p-n+k, k) = C(p, n-1) = 0 mod p,
                        for 2 <= n <= p.
    4. convolution:     sum_{s+2t=k} C(n, s) C(n+t-1, t) = C(n+k-1, k),
                        exactly in Z, for 1 <= n <= p, 0 <= k <= p.

    Returns one check dict per family: {"name", "pass", "counterexample"}
    where the counterexample (first one found, or None) records the index
    values and both sides.
    """
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > bound:
        raise ValueError(f"p={p} above configured bound {bound}")
    checks = []

    cx = None
    for s in range(p):
        for t in range(p):
            lhs = binom_mod(p - 1 - s, t, p)
            rhs = (pow(-1, s + t) * math.comb(p - 1 - t, s) if s <= p - 1 - t else 0) % p
            if lhs != rhs:
                cx = {"s": s, "t": t, "lhs": lhs, "rhs": rhs}
                break
        if cx:
            break
    checks.append({"name": "reflection", "pass": cx is None, "counterexample": cx})

    cx = None
    for a in range(1, 2 * p + 1):
        for b in range(a):
            for c in range(1, a - b + 1):
                lhs = sum(
                    (-1) ** i * math.comb(a, i + c) * math.comb(i, b)
                    for i in range(b, a - c + 1)
                    if i + c <= a and b <= i
                )
                rhs = (-1) ** b * (math.comb(a - b - 1, c - 1) if c - 1 <= a - b - 1 else 0)
                if lhs != rhs:
                    cx = {"a": a, "b": b, "c": c, "lhs": lhs, "rhs": rhs}
                    break
            if cx:
                break
        if cx:
            break
    checks.append({"name": "alternating_sum", "pass": cx is None, "counterexample": cx})

    cx = None
    for n in range(2, p + 1):
        total = sum(math.comb(p - n + k, k) for k in range(n))
        if total != math.comb(p, n - 1) or total % p != 0:
            cx = {"n": n, "sum": total, "binom": math.comb(p, n - 1)}
            break
    checks.append({"name": "diagonal_sum", "pass": cx is None, "counterexample": cx})

    cx = None
    for n in range(1, p + 1):
        for k in range(p + 1):
            lhs = sum(
                math.comb(n, s) * math.comb(n + t - 1, t)
                for t in range(k // 2 + 1)
                for s in (k - 2 * t,)
                if s <= n
            )
            rhs = math.comb(n + k - 1, k)
            if lhs != rhs:
                cx = {"n": n, "k": k, "lhs": lhs, "rhs": rhs}
                break
        if cx:
            break
    checks.append({"name": "convolution", "pass": cx is None, "counterexample": cx})

    return checks
