"""Finite fields F_p and F_{p^k} with canonical integer encodings.

An element of F_{p^k} is stored as the integer sum(c_i * p**i), where
c_0 + c_1 t + ... + c_{k-1} t^{k-1} is its residue modulo the defining
polynomial.  Elements of the prime subfield keep their usual value, so
F_p embeds in every extension without conversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

MAX_EXTENSION_DEGREE = 4
MAX_TABLE_ORDER = 2500


class FieldError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# dense univariate polynomials over F_p (coefficient lists, low degree first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod_prime(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(_trim(a)) > dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _has_root(m: list[int], p: int) -> bool:
    for x in range(p):
        v = 0
        for c in reversed(m):
            v = (v * x + c) % p
        if v == 0:
            return True
    return False


def _is_irreducible(m: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial of degree <= 4 over F_p."""
    k = len(m) - 1
    if k == 1:
        return True
    if _has_root(m, p):
        return False
    if k <= 3:
        return True
    # degree 4 without roots: rule out a product of two monic quadratics
    for b, c in product(range(p), repeat=2):
        q = [c, b, 1]
        if _is_irreducible(q, p) and not _trim(_pmod_prime(m, q, p)):
            return False
    return True


def lowest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k.

    Candidates t^k + c_{k-1} t^{k-1} + ... + c_0 are ordered by the
    coefficient tuple (c_{k-1}, ..., c_0).  Returned low degree first.
    """
    for tail in product(range(p), repeat=k):
        m = list(reversed(tail)) + [1]
        if m[0] == 0:
            continue
        if _is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None
    gen_name: str = "t"
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.k < 1 or self.k > MAX_EXTENSION_DEGREE:
            raise FieldError(f"extension degree {self.k} outside 1..{MAX_EXTENSION_DEGREE}")
        if self.k == 1:
            if self.modulus is not None:
                raise FieldError("prime field takes no modulus")
            return
        if self.p ** self.k > MAX_TABLE_ORDER:
            raise FieldError(f"F_{self.p}^{self.k} exceeds the supported order {MAX_TABLE_ORDER}")
        m = self.modulus
        if m is None or len(m) != self.k + 1 or m[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not _is_irreducible(list(m), self.p):
            raise FieldError(f"modulus {m} is reducible over F_{self.p}")
        self._build_tables()

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={self.modulus_str()})"

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def prime_field(self) -> FieldCtx:
        return prime_field(self.p)

    def contains(self, other: FieldCtx) -> bool:
        """True when elements of `other` are valid, identically encoded, elements of self."""
        return other == self or (other.k == 1 and other.p == self.p)

    # -- tables -------------------------------------------------------------
    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        m = list(self.modulus)

        def to_digits(v):
            d = []
            for _ in range(k):
                d.append(v % p)
                v //= p
            return d

        def from_digits(d):
            v = 0
            for c in reversed(d):
                v = v * p + c
            return v

        def mul_raw(a, b):
            da, db = to_digits(a), to_digits(b)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            r = _pmod_prime(prod, m, p)
            r = (r + [0] * k)[:k]
            return from_digits(r)

        digits = [to_digits(v) for v in range(q)]
        add = [[from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
               for a in range(q)]
        neg = [from_digits([(-x) % p for x in digits[a]]) for a in range(q)]
        # primitive element for exp/log tables
        order = q - 1
        exp = log = None
        for g in range(2, q):
            e = [1] * order
            v = 1
            ok = True
            for i in range(1, order):
                v = mul_raw(v, g)
                if v == 1:
                    ok = False
                    break
                e[i] = v
            if ok:
                exp = e
                log = [0] * q
                for i, v in enumerate(e):
                    log[v] = i
                break
        if exp is None:
            raise FieldError("no primitive element found")
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            row = mul[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % order]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(-log[a]) % order]
        sub = [[add[a][neg[b]] for b in range(q)] for a in range(q)]
        self._tables.update(add=add, sub=sub, neg=neg, mul=mul, inv=inv, exp=exp, log=log,
                            digits=digits)

    @property
    def add_table(self):
        return self._tables["add"]

    @property
    def sub_table(self):
        return self._tables["sub"]

    @property
    def mul_table(self):
        return self._tables["mul"]

    @property
    def neg_table(self):
        return self._tables["neg"]

    @property
    def inv_table(self):
        return self._tables["inv"]

    # -- arithmetic ---------------------------------------------------------
    def __call__(self, n: int) -> int:
        """Image of an integer (prime-subfield element)."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._tables["add"][a][b]

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self._tables["sub"][a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._tables["neg"][a]

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return self._tables["mul"][a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._tables["inv"][a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        lg = self._tables["log"][a]
        return self._tables["exp"][(lg * e) % (self.q - 1)]

    def pth_root(self, a: int) -> int:
        """Inverse Frobenius: the unique b with b^p = a."""
        return self.pow(a, self.q // self.p)

    def gen(self) -> int:
        """The class of t (equals p for k > 1)."""
        if self.k == 1:
            raise FieldError("prime field has no generator t")
        return self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- printing -----------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        d = []
        for _ in range(self.k):
            d.append(a % self.p)
            a //= self.p
        return d

    def from_digits(self, d) -> int:
        v = 0
        for c in reversed(list(d)):
            v = v * self.p + (c % self.p)
        return v

    def to_str(self, a: int) -> str:
        if self.k == 1 or a < self.p:
            return str(a)
        parts = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            mon = "" if i == 0 else (self.gen_name if i == 1 else f"{self.gen_name}^{i}")
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{c}*{mon}")
        return "(" + " + ".join(parts) + ")"

    def modulus_str(self) -> str:
        if self.modulus is None:
            return ""
        terms = []
        for i, c in reversed(list(enumerate(self.modulus))):
            if not c:
                continue
            mon = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mon if c == 1 and i else (str(c) if i == 0 else f"{c}*{mon}"))
        return " + ".join(terms)


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldCtx:
    return FieldCtx(p)


@lru_cache(maxsize=None)
def build_extension(p: int, k: int) -> FieldCtx:
    """Deterministic F_{p^k}: the modulus is the lexicographically first irreducible."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k == 1:
        return prime_field(p)
    return FieldCtx(p, k, lowest_irreducible(p, k))


def field_arith(F: FieldCtx, op: str, a: int, b: int | None = None) -> int:
    if op == "add":
        return F.add(a, b)
    if op == "sub":
        return F.sub(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "neg":
        return F.neg(a)
    if op == "inv":
        return F.inv(a)
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials over an arbitrary FieldCtx


def upoly_trim(a: list[int]) -> list[int]:
    return _trim(list(a))


def upoly_deriv(F: FieldCtx, a: list[int]) -> list[int]:
    return _trim([F.mul(F(i), c) for i, c in enumerate(a)][1:])


def upoly_divmod(F: FieldCtx, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(b[-1])
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], inv)
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
        _trim(a)
    return _trim(q), a


def upoly_monic(F: FieldCtx, a: list[int]) -> list[int]:
    a = _trim(list(a))
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def upoly_gcd(F: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, upoly_divmod(F, a, b)[1]
    return upoly_monic(F, a)


def upoly_mul(F: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def upoly_squarefree(F: FieldCtx, a: list[int]) -> list[int]:
    """Monic product of the distinct irreducible factors of a (a != 0)."""
    a = upoly_monic(F, a)
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    if len(a) == 1:
        return [1]
    da = upoly_deriv(F, a)
    if not da:
        # a(t) = b(t^p); take p-th roots of the coefficients
        p = F.p
        root = [F.pth_root(a[i]) for i in range(0, len(a), p)]
        return upoly_squarefree(F, root)
    g = upoly_gcd(F, a, da)
    w = upoly_divmod(F, a, g)[0]
    h = g
    while True:
        y = upoly_gcd(F, h, w)
        if len(y) <= 1:
            break
        h = upoly_divmod(F, h, y)[0]
    if len(h) <= 1:
        return upoly_monic(F, w)
    return upoly_monic(F, upoly_mul(F, w, upoly_squarefree(F, h)))


def upoly_eval(F: FieldCtx, a: list[int], x: int) -> int:
    v = 0
    for c in reversed(a):
        v = F.add(F.mul(v, x), c)
    return v
