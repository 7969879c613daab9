"""Dense polynomial arithmetic over F_p and root extraction in F_{p^2}.

Coefficient vectors are numpy int64 arrays, low degree first, trimmed so the
leading coefficient is non-zero (the empty array is the zero polynomial).
Exactness: a product convolution is done in int64 only when
min(len_a, len_b) * (p-1)^2 fits safely below 2^63; otherwise it falls back to
an object (big-int) convolution, so no modulus is ever silently wrong.

Root finding follows a gcd-with-Frobenius strategy:

  1. g1 = gcd(f, x^p - x) carries the roots in F_p, extracted by a vectorized
     scan of the prime field.
  2. g2 = gcd(f / g1, x^(p^2) - x) carries the roots in F_{p^2} \\ F_p.  It is
     a squarefree product of irreducible quadratics, split by the Legendre
     ladder gcd(g2, (x+c)^((p^2-1)/2) - 1) for c = 0, 1, 2, ...; conjugate
     root pairs share the norm (x+c)(x^p+c), so they stay together and the
     ladder separates distinct quadratic factors (a character-sum bound
     guarantees a separating c for p >= 11; smaller p never need a split).
  3. Each quadratic x^2 - s x + n is solved by descending to F_p: its
     discriminant is d times a square, so the root is (s + t*sqrt(disc/d))/2
     with a Tonelli-Shanks square root in the prime field.

Reductions inside a fixed modulus use a Newton-inverted reciprocal of the
reversed modulus, which keeps the hot loop inside C-speed convolutions.
"""

from __future__ import annotations

import numpy as np

from .ffield import Fp2Element, Fp2Field, is_prime, sqrt_mod

_INT64_SAFE = (1 << 62)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def _mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    if min(len(a), len(b)) * (p - 1) * (p - 1) < _INT64_SAFE:
        return _trim(np.convolve(a, b) % p)
    prod = np.convolve(a.astype(object), b.astype(object)) % p
    return _trim(prod.astype(np.int64))


def _add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = (out[: len(b)] + b) % p
    return _trim(out)


def _sub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    out[: len(b)] = (out[: len(b)] - b) % p
    return _trim(out)


def _divmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Schoolbook division; fine for gcd chains where the modulus keeps changing."""
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return a[:0], a.copy()
    a = a.copy()
    db = len(b) - 1
    inv_lc = pow(int(b[-1]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    for i in range(len(a) - db - 1, -1, -1):
        coef = int(a[i + db]) * inv_lc % p
        if coef:
            q[i] = coef
            a[i : i + db + 1] = (a[i : i + db + 1] - coef * b) % p
    return _trim(q), _trim(a[:db] if db else a[:0])


def _gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    while len(b):
        a, b = b, _divmod(a, b, p)[1]
    if len(a):
        a = a * pow(int(a[-1]), p - 2, p) % p
    return a


def _newton_inverse(f: np.ndarray, k: int, p: int) -> np.ndarray:
    """Inverse of f modulo x^k (requires f[0] != 0)."""
    g = np.array([pow(int(f[0]), p - 2, p)], dtype=np.int64)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        fg = _mul(f[:prec], g, p)[:prec]
        t = (-fg) % p
        if len(t) == 0:
            t = np.zeros(1, dtype=np.int64)
        t[0] = (t[0] + 2) % p
        g = _mul(g, _trim(t), p)[:prec]
    return g


class _Modulus:
    """Fixed-modulus reduction context with a precomputed Newton reciprocal."""

    def __init__(self, m: np.ndarray, p: int):
        if len(m) == 0:
            raise ZeroDivisionError("zero modulus")
        inv_lc = pow(int(m[-1]), p - 2, p)
        self.m = m * inv_lc % p
        self.p = p
        self.n = len(m) - 1
        # Reduction targets are products of two residues: degree <= 2n - 2,
        # so quotient degree <= n - 2 and precision n - 1 suffices.
        self._prec = max(self.n, 1)
        if self.n >= 1:
            self.rinv = _newton_inverse(self.m[::-1].copy(), self._prec, p)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        n, p = self.n, self.p
        if n == 0:
            return a[:0]
        if len(a) <= n:
            return a
        dq = len(a) - 1 - n
        if dq + 1 > self._prec:
            # Foreign input of unusually high degree: schoolbook is exact.
            return _divmod(a, self.m, p)[1]
        arev = a[::-1][: dq + 1].copy()
        qrev = _mul(arev, self.rinv[: dq + 1], p)
        if len(qrev) < dq + 1:
            qrev = np.concatenate([qrev, np.zeros(dq + 1 - len(qrev), dtype=np.int64)])
        q = qrev[: dq + 1][::-1].copy()
        r = _sub(a[: n + len(q)], _mul(q, self.m, p), p)
        return _trim(r[:n])

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(_mul(a, b, self.p))

    def powmod(self, base: np.ndarray, e: int) -> np.ndarray:
        result = np.array([1], dtype=np.int64)
        acc = self.reduce(base)
        while e:
            if e & 1:
                result = self.mulmod(result, acc)
            acc = self.mulmod(acc, acc)
            e >>= 1
        return result


class FpPoly:
    """Immutable dense polynomial over F_p."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int):
        self.p = p
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                         dtype=np.int64)
        self.coeffs = _trim(arr % p)

    @classmethod
    def _raw(cls, arr: np.ndarray, p: int) -> "FpPoly":
        out = object.__new__(cls)
        out.coeffs = arr
        out.p = p
        return out

    @classmethod
    def x(cls, p: int) -> "FpPoly":
        return cls([0, 1], p)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def _need(self, other: "FpPoly") -> None:
        if self.p != other.p:
            raise ValueError("polynomials over different primes")

    def __eq__(self, other) -> bool:
        return (isinstance(other, FpPoly) and self.p == other.p
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs.tobytes()))

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._need(other)
        return FpPoly._raw(_add(self.coeffs, other.coeffs, self.p), self.p)

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        self._need(other)
        return FpPoly._raw(_sub(self.coeffs, other.coeffs, self.p), self.p)

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._need(other)
        return FpPoly._raw(_mul(self.coeffs, other.coeffs, self.p), self.p)

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._need(other)
        q, r = _divmod(self.coeffs, other.coeffs, self.p)
        return FpPoly._raw(q, self.p), FpPoly._raw(r, self.p)

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        inv = pow(int(self.coeffs[-1]), self.p - 2, self.p)
        return FpPoly._raw(self.coeffs * inv % self.p, self.p)

    def gcd(self, other: "FpPoly") -> "FpPoly":
        self._need(other)
        return FpPoly._raw(_gcd(self.coeffs, other.coeffs, self.p), self.p)

    def derivative(self) -> "FpPoly":
        if self.degree() < 1:
            return FpPoly._raw(self.coeffs[:0], self.p)
        n = np.arange(1, len(self.coeffs), dtype=np.int64)
        return FpPoly._raw(_trim(self.coeffs[1:] * n % self.p), self.p)

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree() == 0

    def evaluate(self, x):
        """Horner evaluation; x may be an int residue or an Fp2Element."""
        if isinstance(x, Fp2Element):
            acc = x.field.zero()
            for c in self.coeffs[::-1]:
                acc = acc * x + x.field.elem(int(c))
            return acc
        acc = 0
        for c in self.coeffs[::-1]:
            acc = (acc * x + int(c)) % self.p
        return acc

    def roots_in_prime_field(self) -> list[int]:
        """All roots in F_p by scanning the prime field (vectorized Horner)."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        xs = np.arange(self.p, dtype=np.int64)
        acc = np.zeros(self.p, dtype=np.int64)
        for c in self.coeffs[::-1]:
            acc = (acc * xs + int(c)) % self.p
        return [int(r) for r in xs[acc == 0]]

    def __repr__(self) -> str:
        return f"FpPoly({list(map(int, self.coeffs))}, p={self.p})"


def hasse_poly(p: int) -> FpPoly:
    """The supersingularity polynomial sum_i C(m,i)^2 x^i with m = (p-1)/2.

    Its roots are exactly the Legendre parameters of supersingular curves.
    Only p >= 5 (the small primes are handled by hard-coded censuses).
    """
    if p < 5:
        raise ValueError("hasse_poly requires p >= 5")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = (p - 1) // 2
    # Binomial row mod p via C(m,i+1) = C(m,i)(m-i)/(i+1); i+1 <= m < p is a unit.
    inv = np.zeros(m + 1, dtype=np.int64)
    if m >= 1:
        inv[1] = 1
        for i in range(2, m + 1):
            inv[i] = (p - (p // i)) * inv[p % i] % p
    row = np.zeros(m + 1, dtype=np.int64)
    row[0] = 1
    for i in range(m):
        row[i + 1] = row[i] * ((m - i) % p) % p * inv[i + 1] % p
    return FpPoly(row * row % p, p)


def _quadratic_roots(B: int, C: int, field: Fp2Field) -> list[Fp2Element]:
    """Roots in F_{p^2} of the irreducible monic quadratic x^2 + B x + C over F_p."""
    p, d = field.p, field.d
    disc = (B * B - 4 * C) % p
    # Irreducible means disc is a non-residue, so disc/d is a square in F_p.
    w = sqrt_mod(disc * pow(d, p - 2, p) % p, p)
    inv2 = pow(2, p - 2, p)
    a = (-B) * inv2 % p
    b = w * inv2 % p
    return [field.elem(a, b), field.elem(a, -b)]


def _split_quadratics(h: np.ndarray, xp_h: np.ndarray, p: int) -> list[tuple[int, int]]:
    """Split a squarefree product of irreducible quadratics into (B, C) pairs.

    Legendre-ladder splitting on norms: (x+c)^(p+1) = (x^p+c)(x+c), so with
    x^p carried down the tree each ladder step costs one product plus a
    (p-1)/2 power.  Conjugate roots share the norm, so
    gcd(h, ((x^p+c)(x+c))^((p-1)/2) - 1) groups whole quadratic factors; a
    character-sum bound guarantees some c separates distinct factors for
    p >= 11, and children resume the ladder past the c their ancestors used.
    """
    out: list[tuple[int, int]] = []
    stack = [(h, xp_h, 0)]
    half = (p - 1) // 2
    x_arr = np.array([0, 1], dtype=np.int64)
    one = np.array([1], dtype=np.int64)
    while stack:
        cur, xp_cur, c0 = stack.pop()
        deg = len(cur) - 1
        if deg <= 0:
            continue
        if deg == 2:
            inv_lc = pow(int(cur[-1]), p - 2, p)
            out.append((int(cur[1]) * inv_lc % p, int(cur[0]) * inv_lc % p))
            continue
        ctx = _Modulus(cur, p)
        for c in range(c0, c0 + p):
            cc = np.array([c % p], dtype=np.int64)
            v = ctx.mulmod(_add(xp_cur, cc, p), _add(x_arr, cc, p))
            w = ctx.powmod(v, half)
            g = _gcd(cur, _sub(w, one, p), p)
            if 0 < len(g) - 1 < deg:
                q, _ = _divmod(cur, g, p)
                stack.append((g, _divmod(xp_cur, g, p)[1], c + 1))
                stack.append((q, _divmod(xp_cur, q, p)[1], c + 1))
                break
        else:
            raise RuntimeError("Legendre ladder exhausted on a squarefree quadratic product")
    return out


def roots_in_fp2(f: FpPoly, field: Fp2Field) -> set[Fp2Element]:
    """Exact set of roots of f in F_{p^2} (multiplicity ignored)."""
    if f.is_zero():
        raise ValueError("zero polynomial has every root")
    p = field.p
    if f.p != p:
        raise ValueError("polynomial prime does not match the field descriptor")
    roots: set[Fp2Element] = set()
    if f.degree() == 0:
        return roots

    fm = f.monic().coeffs
    ctx = _Modulus(fm, p)
    xp = ctx.powmod(np.array([0, 1], dtype=np.int64), p)  # x^p mod f
    x_arr = np.array([0, 1], dtype=np.int64)

    g1 = _gcd(fm, _sub(xp, x_arr, p), p)
    if len(g1) - 1 >= 1:
        for r in FpPoly._raw(g1, p).roots_in_prime_field():
            roots.add(field.elem(r))

    h = _divmod(fm, g1, p)[0] if len(g1) - 1 >= 1 else fm
    if len(h) - 1 >= 1:
        hctx = _Modulus(h, p)
        xp_h = hctx.reduce(xp)
        xp2_h = hctx.powmod(xp_h, p)  # x^(p^2) mod h
        g2 = _gcd(h, _sub(xp2_h, x_arr, p), p)
        # Multiplicity defense: repeated F_p roots of f survive in f/g1; their
        # values are already collected, so strip them before pair splitting.
        if len(g2) - 1 >= 1:
            g2ctx = _Modulus(g2, p)
            lin = _gcd(g2, _sub(g2ctx.reduce(xp), x_arr, p), p)
            if len(lin) - 1 >= 1:
                g2 = _divmod(g2, lin, p)[0]
        if len(g2) - 1 >= 1:
            xp_g2 = _divmod(xp, g2, p)[1]
            for B, C in _split_quadratics(g2, xp_g2, p):
                roots.update(_quadratic_roots(B, C, field))
    return roots
