"""Sparse multivariate polynomials with global and local monomial orders.

Monomials are exponent tuples; a polynomial is an immutable terms dict
mapping exponent tuple -> nonzero coefficient.  Equality is equality of
term multisets, so it does not depend on any monomial order.  Orders enter
only where a leading term is requested.
"""

from __future__ import annotations

from .errors import ArityMismatch, FieldMismatch, PolyParseError
from .fields import Field

__all__ = [
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "NEG_GREVLEX",
    "BlockElimOrder",
    "PolyRing",
    "Poly",
]


class MonomialOrder:
    """A total multiplicative order on monomials.

    kinds: ``grevlex`` and ``lex`` are global (1 is the smallest monomial);
    ``neg-grevlex-local`` is local (1 is the largest monomial).  ``key``
    returns a tuple that sorts larger monomials higher.
    """

    __slots__ = ("kind", "is_global")

    def __init__(self, kind: str):
        if kind not in ("grevlex", "lex", "neg-grevlex-local"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.is_global = kind != "neg-grevlex-local"

    def key(self, exps: tuple):
        if self.kind == "grevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        if self.kind == "lex":
            return exps
        return (-sum(exps), tuple(-e for e in reversed(exps)))

    def __repr__(self):
        return f"MonomialOrder({self.kind})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("ord", self.kind))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")
NEG_GREVLEX = MonomialOrder("neg-grevlex-local")


class BlockElimOrder:
    """Product order eliminating the first ``nblock`` variables.

    Any monomial involving the leading block beats any monomial that does
    not, with grevlex inside each block.  Used internally for intersection,
    colon, and radical-membership constructions; global.
    """

    __slots__ = ("nblock", "kind", "is_global")

    def __init__(self, nblock: int):
        self.nblock = nblock
        self.kind = f"elim{nblock}"
        self.is_global = True

    def key(self, exps: tuple):
        head, tail = exps[: self.nblock], exps[self.nblock :]
        return (
            sum(head),
            tuple(-e for e in reversed(head)),
            sum(tail),
            tuple(-e for e in reversed(tail)),
        )

    def __repr__(self):
        return f"BlockElimOrder({self.nblock})"


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: tuple, b: tuple) -> bool:
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """A polynomial ring: a coefficient field plus named variables."""

    __slots__ = ("field", "names", "n", "_zero_exps")

    def __init__(self, field: Field, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.n = len(names)
        self._zero_exps = (0,) * self.n

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_exps: self.field.one})

    def const(self, value) -> "Poly":
        c = self.field.of(value)
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, {self._zero_exps: c})

    def var(self, i: int) -> "Poly":
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exps, coeff=None) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.n:
            raise ArityMismatch(f"expected {self.n} exponents, got {len(exps)}")
        c = self.field.one if coeff is None else self.field.of(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, {exps: c})

    def poly(self, terms: dict) -> "Poly":
        """Build a polynomial from a raw terms dict, dropping zeros."""
        fz = self.field.is_zero
        return Poly(self, {m: c for m, c in terms.items() if not fz(c)})

    def extended(self, k: int = 1, prefix: str = "t") -> "PolyRing":
        """Ring with k fresh variables prepended (used for eliminations)."""
        fresh = []
        i = 0
        while len(fresh) < k:
            cand = f"{prefix}{i}"
            if cand not in self.names:
                fresh.append(cand)
            i += 1
        return PolyRing(self.field, tuple(fresh) + self.names)

    def embed(self, p: "Poly", into: "PolyRing") -> "Poly":
        """Reinterpret p in ``into``, whose trailing variables are ours."""
        k = into.n - self.n
        pad = (0,) * k
        return Poly(into, {pad + m: c for m, c in p.terms.items()})

    def restrict(self, p: "Poly") -> "Poly":
        """Map a polynomial of an extended ring back here.

        The extended ring must have our variables as its trailing block and
        p must not involve the leading block.
        """
        k = p.ring.n - self.n
        out = {}
        for m, c in p.terms.items():
            if any(m[:k]):
                raise ValueError("polynomial involves eliminated variables")
            out[m[k:]] = c
        return Poly(self, out)

    # -- parsing -----------------------------------------------------------

    def parse(self, text: str) -> "Poly":
        """Parse textual polynomial syntax.

        Integer or rational coefficients, ``^`` powers, ``*`` optional
        between factors (juxtaposition allowed), parentheses, unary minus.
        """
        return _parse_poly(self, text)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)})"


class Poly:
    """Immutable sparse polynomial over a PolyRing."""

    __slots__ = ("ring", "terms", "_lead_cache")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead_cache = None

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring._zero_exps, self.ring.field.zero)

    def _check(self, other: "Poly"):
        if self.ring.names != other.ring.names:
            raise ArityMismatch("polynomials from rings with different variables")
        if self.ring.field != other.ring.field:
            raise FieldMismatch("polynomials over different fields")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(out.get(m, f.zero), c)
            if f.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.sub(out.get(m, f.zero), c)
            if f.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        f = self.ring.field
        return Poly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        # bucketed accumulation: one dict absorbs all partial products
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = f.add(out.get(m, f.zero), f.mul(ca, cb))
                if f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.ring, out)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def scale(self, coeff) -> "Poly":
        f = self.ring.field
        c = f.of(coeff) if not isinstance(coeff, type(f.zero)) else coeff
        if f.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, exps: tuple, coeff) -> "Poly":
        f = self.ring.field
        return Poly(
            self.ring,
            {
                tuple(x + y for x, y in zip(m, exps)): f.mul(c, coeff)
                for m, c in self.terms.items()
            },
        )

    # -- structure ---------------------------------------------------------

    def leading(self, order) -> tuple:
        """(exponents, coefficient) of the leading term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        cache = self._lead_cache
        if cache is not None and cache[0] == order.kind:
            return cache[1]
        m = max(self.terms, key=order.key)
        lead = (m, self.terms[m])
        self._lead_cache = (order.kind, lead)
        return lead

    def sorted_terms(self, order) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def linear_part(self) -> "Poly":
        """The degree-1 homogeneous component."""
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == 1})

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def derivative(self, i: int) -> "Poly":
        f = self.ring.field
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            val = f.mul(c, f.of(e))
            if not f.is_zero(val):
                out[dm] = val
        return Poly(self.ring, out)

    # -- evaluation and substitution ----------------------------------------

    def eval(self, point):
        """Exact evaluation at a tuple of field elements."""
        if len(point) != self.ring.n:
            raise ArityMismatch(f"point of length {len(point)}, ring has {self.ring.n}")
        f = self.ring.field
        pt = [f.of(c) for c in point]
        acc = f.zero
        for m, c in self.terms.items():
            val = c
            for e, x in zip(m, pt):
                for _ in range(e):
                    val = f.mul(val, x)
            acc = f.add(acc, val)
        return acc

    def translate(self, point) -> "Poly":
        """Substitute x_i -> x_i + c_i, moving ``point`` to the origin."""
        if len(point) != self.ring.n:
            raise ArityMismatch(f"point of length {len(point)}, ring has {self.ring.n}")
        f = self.ring.field
        out = self
        for i, raw in enumerate(point):
            c = f.of(raw)
            if f.is_zero(c):
                continue
            out = out._translate_one(i, c)
        return out

    def _translate_one(self, i: int, c) -> "Poly":
        f = self.ring.field
        out: dict = {}
        for m, coeff in self.terms.items():
            e = m[i]
            # (x + c)^e expanded with binomial coefficients
            binom = 1
            power = f.one
            for k in range(e, -1, -1):
                mk = m[:i] + (k,) + m[i + 1 :]
                val = f.mul(coeff, f.mul(f.of(binom), power))
                if not f.is_zero(val):
                    s = f.add(out.get(mk, f.zero), val)
                    if f.is_zero(s):
                        out.pop(mk, None)
                    else:
                        out[mk] = s
                binom = binom * k // (e - k + 1)
                power = f.mul(power, c)
        return Poly(self.ring, out)

    def is_local_unit(self) -> bool:
        """Invertibility in the local ring at the origin."""
        return not self.ring.field.is_zero(self.constant_term())

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.ring.field
        parts = []
        for m, c in self.sorted_terms(GREVLEX):
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(self.ring.names, m)
                if e
            )
            cs = f.to_str(c)
            if mono:
                piece = mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
            else:
                piece = cs
            parts.append(piece)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"<{self}>"


# -- parser ------------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = text[i:j]
            # rational literal a/b
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append(("num", num + "/" + text[j + 1 : k], i))
                i = k
            else:
                tokens.append(("num", num, i))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", col=i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[1]!r}", col=tok[2])
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolyParseError(f"trailing input {tok[1]!r}", col=tok[2])
        return p

    def expr(self) -> Poly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            sign = 1
            while self.peek()[0] in ("+", "-"):
                if self.take()[0] == "-":
                    sign = -sign
            q = self.term()
            if (op == "-") != (sign < 0):
                q = -q
            p = p + q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.take()
                p = p * self.factor()
            elif tok[0] in ("name", "num", "("):
                p = p * self.factor()  # juxtaposition
            else:
                return p

    def factor(self) -> Poly:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("num")
            if "/" in tok[1]:
                raise PolyParseError("exponent must be an integer", col=tok[2])
            base = base ** int(tok[1])
        return base

    def base(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            return self.ring.const(tok[1] if "/" in tok[1] else int(tok[1]))
        if tok[0] == "name":
            try:
                i = self.ring.names.index(tok[1])
            except ValueError:
                raise PolyParseError(f"unknown variable {tok[1]!r}", col=tok[2]) from None
            return self.ring.var(i)
        if tok[0] == "(":
            p = self.expr()
            self.expect(")")
            return p
        if tok[0] == "-":
            return -self.factor()
        raise PolyParseError(f"unexpected token {tok[1]!r}", col=tok[2])


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    return _Parser(ring, text).parse()
