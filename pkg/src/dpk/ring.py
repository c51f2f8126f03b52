"""Polynomial rings over finite fields with packed-integer monomials.

A monomial is one Python int holding two parts.  The low part stores the
exponents, 8 bits per variable with the top bit of every field kept clear
as a guard; the high part stores an order key made of nonnegative integer
linear forms in the exponents.  Both parts are additive, so multiplying
monomials is integer addition, comparing them in the ring's order is
integer comparison, and divisibility is a single guarded subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import FieldCtx, prime_field

EXP_BITS = 8
MAX_EXP = (1 << (EXP_BITS - 1)) - 1
KEY_BITS = 16


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """A product of blocks; each block is ('grevlex' | 'lex', variable indices).

    Earlier blocks dominate.  Inside a grevlex block variables are listed
    from largest to smallest, so the last listed variable is the one that
    reverse-lexicographic comparison looks at first.
    """

    blocks: tuple[tuple[str, tuple[int, ...]], ...]

    @staticmethod
    def grevlex(n: int) -> MonomialOrder:
        return MonomialOrder((("grevlex", tuple(range(n))),))

    @staticmethod
    def lex(n: int) -> MonomialOrder:
        return MonomialOrder((("lex", tuple(range(n))),))

    @staticmethod
    def elimination(drop, n: int) -> MonomialOrder:
        """Block order: grevlex on `drop`, then grevlex on the rest."""
        drop = tuple(sorted(drop))
        rest = tuple(i for i in range(n) if i not in drop)
        blocks = []
        if drop:
            blocks.append(("grevlex", drop))
        if rest:
            blocks.append(("grevlex", rest))
        return MonomialOrder(tuple(blocks))

    @staticmethod
    def grevlex_last(last: int, n: int) -> MonomialOrder:
        """grevlex with variable `last` moved to the smallest position."""
        vs = tuple(i for i in range(n) if i != last) + (last,)
        return MonomialOrder((("grevlex", vs),))

    def variables(self) -> tuple[int, ...]:
        out = []
        for _, vs in self.blocks:
            out.extend(vs)
        return tuple(out)

    def is_degree_compatible(self) -> bool:
        return len(self.blocks) == 1 and self.blocks[0][0] == "grevlex"


class Ring:
    """Polynomial ring F[x_0..x_{n-1}] with a fixed monomial order and grading."""

    def __init__(self, field: FieldCtx | int, names, order: MonomialOrder | None = None,
                 weights=None):
        if isinstance(field, int):
            field = prime_field(field)
        names = tuple(names)
        n = len(names)
        if len(set(names)) != n:
            raise RingError(f"duplicate variable names in {names}")
        order = order or MonomialOrder.grevlex(n)
        if sorted(order.variables()) != list(range(n)):
            raise RingError("monomial order must cover each variable exactly once")
        weights = tuple(weights) if weights is not None else (1,) * n
        if len(weights) != n or any(w < 0 for w in weights):
            raise RingError("weights must be nonnegative, one per variable")
        for kind, vs in order.blocks:
            if kind == "grevlex" and any(weights[i] == 0 for i in vs):
                raise RingError("grevlex blocks need positive weights")
            if kind not in ("grevlex", "lex"):
                raise RingError(f"unknown block kind {kind!r}")
        self.field = field
        self.names = names
        self.n = n
        self.order = order
        self.weights = weights
        self._index = {s: i for i, s in enumerate(names)}

        # order key: list of linear forms (coefficient vectors), most significant first
        forms: list[tuple[int, ...]] = []
        for kind, vs in order.blocks:
            if kind == "lex":
                for v in vs:
                    c = [0] * n
                    c[v] = 1
                    forms.append(tuple(c))
            else:
                c = [0] * n
                for v in vs:
                    c[v] = weights[v]
                forms.append(tuple(c))
                for k in range(len(vs) - 1, 0, -1):
                    c = [0] * n
                    for v in vs[:k]:
                        c[v] = weights[v]
                    forms.append(tuple(c))
        self._forms = forms
        base = EXP_BITS * n
        nf = len(forms)
        units = []
        for i in range(n):
            u = 1 << (EXP_BITS * i)
            for f_idx, c in enumerate(forms):
                if c[i]:
                    u += c[i] << (base + KEY_BITS * (nf - 1 - f_idx))
            units.append(u)
        self.units = tuple(units)
        self.low_mask = (1 << base) - 1
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(n))
        self.exp_mask = (1 << (EXP_BITS - 1)) - 1
        self._key = (field, names, order, weights)
        # the weighted degree is the top key field when the first form is the full degree
        self._deg_shift = base + KEY_BITS * (nf - 1) if forms and forms[0] == weights else None

    # -- identity -------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Ring({self.field!r}, {','.join(self.names)})"

    def same_space(self, other: Ring) -> bool:
        """Same variables and field (orders may differ)."""
        return self.names == other.names and self.field == other.field

    def with_order(self, order: MonomialOrder, weights=None) -> Ring:
        return _ring_cached(self.field, self.names, order,
                            tuple(weights) if weights is not None else self.weights)

    def with_field(self, field: FieldCtx) -> Ring:
        return _ring_cached(field, self.names, self.order, self.weights)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    # -- monomials ------------------------------------------------------------
    def encode(self, exps) -> int:
        m = 0
        for e, u in zip(exps, self.units):
            if e:
                if e > MAX_EXP or e < 0:
                    raise RingError(f"exponent {e} out of range")
                m += e * u
        return m

    def decode(self, m: int) -> tuple[int, ...]:
        mask = self.exp_mask
        return tuple((m >> (EXP_BITS * i)) & mask for i in range(self.n))

    def mdeg(self, m: int) -> int:
        """Weighted degree of a monomial."""
        if self._deg_shift is not None:
            return m >> self._deg_shift
        mask = self.exp_mask
        d = 0
        for i, w in enumerate(self.weights):
            if w:
                d += w * ((m >> (EXP_BITS * i)) & mask)
        return d

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.decode(a), self.decode(b)
        return not any(x and y for x, y in zip(ea, eb))

    def var(self, name_or_index) -> "MultiPoly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return MultiPoly(self, {self.units[i]: 1})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(i) for i in range(self.n)]

    def one(self) -> "MultiPoly":
        return MultiPoly(self, {0: 1})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def const(self, c: int) -> "MultiPoly":
        """Image of the integer c."""
        c = c % self.field.p
        return MultiPoly(self, {0: c} if c else {})

    def element(self, a: int) -> "MultiPoly":
        """Constant polynomial for an encoded field element."""
        return MultiPoly(self, {0: a} if a else {})

    def monomial(self, exps, coeff: int = 1) -> "MultiPoly":
        return MultiPoly(self, {self.encode(exps): coeff} if coeff else {})

    def monomials_of_degree(self, d: int) -> list[int]:
        """All monomials of weighted degree d, descending in the ring order."""
        out = []
        n = self.n
        w = self.weights

        def rec(i, left, acc):
            if i == n - 1:
                if w[i] == 0:
                    if left == 0:
                        out.append(acc)
                    return
                if left % w[i] == 0 and left // w[i] <= MAX_EXP:
                    out.append(acc + (left // w[i]) * self.units[i])
                return
            e = 0
            while e * w[i] <= left and e <= MAX_EXP:
                rec(i + 1, left - e * w[i], acc + e * self.units[i])
                if w[i] == 0:
                    break
                e += 1

        if n == 0:
            return [0] if d == 0 else []
        rec(0, d, 0)
        out.sort(reverse=True)
        return out

    def mono_str(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.decode(m)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- constructors ---------------------------------------------------------
    def __call__(self, obj) -> "MultiPoly":
        if isinstance(obj, MultiPoly):
            return obj.to_ring(self)
        if isinstance(obj, int):
            return self.const(obj)
        if isinstance(obj, str):
            from .parse import parse_poly
            return parse_poly(obj, self)
        raise TypeError(f"cannot convert {type(obj).__name__} to a polynomial")


@lru_cache(maxsize=None)
def _ring_cached(field, names, order, weights) -> Ring:
    return Ring(field, names, order, weights)


def make_ring(field, names, order=None, weights=None) -> Ring:
    if isinstance(field, int):
        field = prime_field(field)
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    names = tuple(names)
    order = order or MonomialOrder.grevlex(len(names))
    return _ring_cached(field, names, order,
                        tuple(weights) if weights is not None else (1,) * len(names))


# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial: dict monomial -> nonzero coefficient (never mutated)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    # -- basic queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self) -> int:
        return max(self.terms)

    def lc(self) -> int:
        return self.terms[max(self.terms)]

    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.decode(self.lm())

    def degree(self) -> int:
        if not self.terms:
            return -1
        md = self.ring.mdeg
        return max(md(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        md = self.ring.mdeg
        return len({md(m) for m in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items(), reverse=True)

    def exponent_terms(self) -> list[tuple[tuple[int, ...], int]]:
        dec = self.ring.decode
        return [(dec(m), c) for m, c in self.sorted_terms()]

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(self.ring.decode(m)):
                if e:
                    used.add(i)
        return used

    def constant_coeff(self) -> int:
        return self.terms.get(0, 0)

    def homogeneous_part(self, d: int) -> MultiPoly:
        md = self.ring.mdeg
        return MultiPoly(self.ring, {m: c for m, c in self.terms.items() if md(m) == d})

    # -- arithmetic --------------------------------------------------------------
    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            return other.to_ring(self.ring)
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.ring, add_terms(self.ring.field, self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return MultiPoly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.ring, sub_terms(self.ring.field, self.terms, other.terms))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.field(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.ring, mul_terms(self.ring, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> MultiPoly:
        F = self.ring.field
        if c == 0:
            return MultiPoly(self.ring, {})
        if c == 1:
            return self
        return MultiPoly(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def mul_monomial(self, m: int, c: int = 1) -> MultiPoly:
        F = self.ring.field
        if c == 1:
            return MultiPoly(self.ring, {k + m: v for k, v in self.terms.items()})
        return MultiPoly(self.ring, {k + m: F.mul(v, c) for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.ring.same_space(other.ring):
            return False
        if other.ring != self.ring:
            other = other.to_ring(self.ring)
        return self.terms == other.terms

    def __hash__(self):
        dec = self.ring.decode
        return hash(frozenset((dec(m), c) for m, c in self.terms.items()))

    # -- conversions -------------------------------------------------------------
    def to_ring(self, ring: Ring) -> MultiPoly:
        """Re-encode in a ring with the same variable names (any order/field containing ours)."""
        if ring is self.ring:
            return self
        src = self.ring
        if src.names == ring.names:
            if not ring.field.contains(src.field) and ring.field != src.field:
                raise RingError(f"cannot move coefficients from {src.field} to {ring.field}")
            if src.order == ring.order and src.weights == ring.weights:
                return MultiPoly(ring, dict(self.terms))
            enc, dec = ring.encode, src.decode
            return MultiPoly(ring, {enc(dec(m)): c for m, c in self.terms.items()})
        # differing variable lists: map by name, variables missing from the target must not occur
        idx = []
        for i, name in enumerate(src.names):
            idx.append(ring._index.get(name))
        out = {}
        for m, c in self.terms.items():
            e = src.decode(m)
            te = [0] * ring.n
            for i, ei in enumerate(e):
                if ei:
                    if idx[i] is None:
                        raise RingError(f"variable {src.names[i]} not in target ring")
                    te[idx[i]] = ei
            out[ring.encode(te)] = c
        return MultiPoly(ring, out)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        from .parse import format_poly
        return format_poly(self)

    # -- evaluation / calculus -----------------------------------------------------
    def evaluate(self, point) -> int:
        """Evaluate at a point whose coordinates lie in this field or an extension of it."""
        R = self.ring
        if len(point) != R.n:
            raise RingError(f"point has {len(point)} coordinates, ring has {R.n} variables")
        F = R.field
        return evaluate_terms(R, self.terms, point, F)

    def evaluate_in(self, F: FieldCtx, point) -> int:
        R = self.ring
        if len(point) != R.n:
            raise RingError(f"point has {len(point)} coordinates, ring has {R.n} variables")
        if not F.contains(R.field) and F != R.field:
            raise RingError(f"{F} does not contain {R.field}")
        return evaluate_terms(R, self.terms, point, F)

    def diff(self, var) -> MultiPoly:
        R = self.ring
        i = var if isinstance(var, int) else R.index(var)
        F = R.field
        u = R.units[i]
        out = {}
        shift = EXP_BITS * i
        mask = R.exp_mask
        for m, c in self.terms.items():
            e = (m >> shift) & mask
            if e:
                ce = F.mul(c, F(e))
                if ce:
                    out[m - u] = ce
        return MultiPoly(R, out)

    def subs(self, images: list[MultiPoly], target: Ring | None = None) -> MultiPoly:
        """Ring map x_i -> images[i] (all images in one target ring)."""
        R = self.ring
        if len(images) != R.n:
            raise RingError("need one image per variable")
        target = target or (images[0].ring if images else R)
        result = {}
        powers: list[dict[int, dict]] = [dict() for _ in range(R.n)]
        F = target.field

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                if e == 0:
                    cache[e] = {0: 1}
                elif e == 1:
                    cache[e] = images[i].to_ring(target).terms
                else:
                    h = e // 2
                    t = mul_terms(target, pw(i, h), pw(i, h))
                    if e % 2:
                        t = mul_terms(target, t, pw(i, 1))
                    cache[e] = t
            return cache[e]

        for m, c in self.terms.items():
            term = {0: c}
            for i, e in enumerate(R.decode(m)):
                if e:
                    term = mul_terms(target, term, pw(i, e))
                    if not term:
                        break
            result = add_terms(F, result, term)
        return MultiPoly(target, result)


# ---------------------------------------------------------------------------
# term-dict kernels (shared with the Groebner engine)


def add_terms(F: FieldCtx, a: dict, b: dict) -> dict:
    out = dict(a)
    if F.k == 1:
        p = F.p
        for m, c in b.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    else:
        add = F.add_table
        for m, c in b.items():
            v = add[out.get(m, 0)][c]
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def sub_terms(F: FieldCtx, a: dict, b: dict) -> dict:
    out = dict(a)
    if F.k == 1:
        p = F.p
        for m, c in b.items():
            v = (out.get(m, 0) - c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    else:
        sub = F.sub_table
        for m, c in b.items():
            v = sub[out.get(m, 0)][c]
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def mul_terms(R: Ring, a: dict, b: dict) -> dict:
    F = R.field
    if len(a) > len(b):
        a, b = b, a
    out: dict[int, int] = {}
    g = R.guard
    if F.k == 1:
        p = F.p
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                out[m] = (out.get(m, 0) + ca * cb) % p
    else:
        add, mul = F.add_table, F.mul_table
        for ma, ca in a.items():
            row = mul[ca]
            for mb, cb in b.items():
                m = ma + mb
                out[m] = add[out.get(m, 0)][row[cb]]
    out = {m: c for m, c in out.items() if c}
    if any(m & g for m in out):
        raise RingError("exponent overflow in polynomial product")
    return out


def evaluate_terms(R: Ring, terms: dict, point, F: FieldCtx) -> int:
    total = 0
    pows = [dict() for _ in range(R.n)]
    for m, c in terms.items():
        v = c
        for i, e in enumerate(R.decode(m)):
            if e:
                cache = pows[i]
                pe = cache.get(e)
                if pe is None:
                    pe = F.pow(point[i], e)
                    cache[e] = pe
                v = F.mul(v, pe)
                if not v:
                    break
        total = F.add(total, v)
    return total
