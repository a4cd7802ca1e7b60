"""Exact arithmetic for the supported coefficient division rings.

Three domains are available:

  * ``rational`` -- exact fractions (``fractions.Fraction``);
  * ``finite_field`` -- GF(p^k) = Z_p[x]/(m), elements stored as coefficient
    tuples of length k, lowest degree first, with m a monic irreducible
    polynomial of degree k over Z_p;
  * ``rational_quaternion`` -- a + bi + cj + dk over exact rationals, with
    the Hamilton relations i^2 = j^2 = k^2 = -1, ij = k.

Ring automorphisms are kept in a canonical form that makes equality
decidable: the identity, a Frobenius power x -> x^(p^i) on a finite field,
or conjugation by a unit quaternion scaled so its first nonzero Hamilton
coefficient is 1 (conjugation by d and by c*d agree for central c, and the
center of the rational quaternions is the rationals).

Everything here is an immutable value; instances may be shared freely
between concurrent workers.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DivisionByZero, DomainMismatch, NotEnumerable

RATIONAL = "rational"
FINITE_FIELD = "finite_field"
QUATERNION = "rational_quaternion"


# ---------------------------------------------------------------------------
# polynomial arithmetic over Z_p (tuples, lowest degree first, no trailing 0)


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                       for i in range(n)])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv_lead) % p
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd_ext(a, b, p):
    # returns (g, s, t) with s*a + t*b = g
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_add(s0, _poly_mul(tuple(-c % p for c in q), s1, p), p)
        t0, t1 = t1, _poly_add(t0, _poly_mul(tuple(-c % p for c in q), t1, p), p)
    return r0, s0, t0


def _monic_polys(degree, p):
    """All monic polynomials of exactly the given degree, as tuples."""
    if degree == 0:
        yield (1,)
        return

    def rec(i):
        if i == degree:
            yield (1,)
            return
        for tail in rec(i + 1):
            for c in range(p):
                yield (c,) + tail

    yield from rec(0)


def _poly_is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            _, r = _poly_divmod(m, g, p)
            if not r:
                return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _default_modulus(p, k):
    """Smallest monic irreducible of degree k over Z_p, ordered by the
    integer value sum(c_i * p^i) of the coefficient tuple."""
    if k == 1:
        return (0, 1)
    for value in range(p ** k, 2 * p ** k):
        coeffs = []
        v = value
        for _ in range(k + 1):
            coeffs.append(v % p)
            v //= p
        m = tuple(coeffs)
        if _poly_is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# domains


class ScalarDomain:
    """A concrete coefficient division ring, compared by value.

    Use the factory classmethods :meth:`rational`, :meth:`finite_field`
    and :meth:`quaternion`.
    """

    __slots__ = ("kind", "p", "k", "modulus", "_cache")

    def __init__(self, kind, p=None, k=None, modulus=None):
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus
        self._cache = {}

    @classmethod
    def rational(cls):
        return cls(RATIONAL)

    @classmethod
    def quaternion(cls):
        return cls(QUATERNION)

    @classmethod
    def finite_field(cls, p, k=1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError("k must be a positive integer")
        if modulus is None:
            modulus = _default_modulus(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(_poly_trim(modulus)) != k + 1:
            raise ValueError(f"modulus must have degree exactly {k}")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _poly_is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over Z_{p}")
        return cls(FINITE_FIELD, p, k, modulus)

    # -- identity of the domain as a value

    def key(self):
        if self.kind == FINITE_FIELD:
            return (self.kind, self.p, self.modulus)
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, ScalarDomain) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == FINITE_FIELD:
            return f"GF({self.p ** self.k})"
        return "Q" if self.kind == RATIONAL else "H(Q)"

    def __getstate__(self):
        return (self.kind, self.p, self.k, self.modulus)

    def __setstate__(self, state):
        self.kind, self.p, self.k, self.modulus = state
        self._cache = {}

    @property
    def order(self):
        """Number of elements, or None when infinite."""
        return self.p ** self.k if self.kind == FINITE_FIELD else None

    def is_commutative(self):
        return self.kind != QUATERNION

    # -- element constructors

    def scalar(self, value):
        """Coerce a value into this domain.

        rational: int / Fraction / "n/d" string.
        finite_field: int (reduced into the prime field) or coefficient
        sequence of length <= k, lowest degree first.
        quaternion: sequence of 4 rational-like values, or a single
        rational-like for a central element.
        """
        if self.kind == RATIONAL:
            return Scalar(self, _as_fraction(value))
        if self.kind == FINITE_FIELD:
            if isinstance(value, int):
                payload = (value % self.p,) + (0,) * (self.k - 1)
            else:
                seq = [int(c) % self.p for c in value]
                if len(seq) > self.k:
                    raise ValueError(f"coefficient vector longer than k={self.k}")
                seq += [0] * (self.k - len(seq))
                payload = tuple(seq)
            return Scalar(self, payload)
        if isinstance(value, (list, tuple)):
            if len(value) != 4:
                raise ValueError("quaternion needs 4 components")
            return Scalar(self, tuple(_as_fraction(v) for v in value))
        return Scalar(self, (_as_fraction(value), Fraction(0), Fraction(0), Fraction(0)))

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def generator(self):
        """A convenient non-identity element: the class of x for GF(p^k)
        with k > 1, the quaternion i, or 2 for the rationals."""
        if self.kind == FINITE_FIELD:
            if self.k == 1:
                return self.scalar(2 if self.p > 2 else 1)
            return self.scalar([0, 1])
        if self.kind == QUATERNION:
            return self.scalar([0, 1, 0, 0])
        return self.scalar(2)


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """An element of a :class:`ScalarDomain`; immutable, hashable.

    Payloads: Fraction (rational), tuple of ints length k (finite field),
    tuple of 4 Fractions (quaternion). Stored reduced, so equality is
    payload equality.
    """

    __slots__ = ("domain", "payload")

    def __init__(self, domain, payload):
        self.domain = domain
        self.payload = payload

    def _check(self, other):
        if not isinstance(other, Scalar) or other.domain != self.domain:
            raise DomainMismatch(f"{self!r} and {other!r} live in different domains")

    def is_zero(self):
        if self.domain.kind == RATIONAL:
            return self.payload == 0
        return all(c == 0 for c in self.payload)

    def is_one(self):
        return self == self.domain.one()

    def __add__(self, other):
        self._check(other)
        kind = self.domain.kind
        if kind == RATIONAL:
            return Scalar(self.domain, self.payload + other.payload)
        if kind == FINITE_FIELD:
            p = self.domain.p
            return Scalar(self.domain,
                          tuple((a + b) % p for a, b in zip(self.payload, other.payload)))
        return Scalar(self.domain,
                      tuple(a + b for a, b in zip(self.payload, other.payload)))

    def __neg__(self):
        kind = self.domain.kind
        if kind == RATIONAL:
            return Scalar(self.domain, -self.payload)
        if kind == FINITE_FIELD:
            p = self.domain.p
            return Scalar(self.domain, tuple((-a) % p for a in self.payload))
        return Scalar(self.domain, tuple(-a for a in self.payload))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        kind = self.domain.kind
        if kind == RATIONAL:
            return Scalar(self.domain, self.payload * other.payload)
        if kind == FINITE_FIELD:
            cache = self.domain._cache.setdefault("mul", {})
            key = (self.payload, other.payload)
            hit = cache.get(key)
            if hit is None:
                prod = _poly_mul(self.payload, other.payload, self.domain.p)
                _, rem = _poly_divmod(prod, self.domain.modulus, self.domain.p)
                hit = rem + (0,) * (self.domain.k - len(rem))
                cache[key] = hit
            return Scalar(self.domain, hit)
        a1, b1, c1, d1 = self.payload
        a2, b2, c2, d2 = other.payload
        return Scalar(self.domain, (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ))

    def inv(self):
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.domain!r}")
        kind = self.domain.kind
        if kind == RATIONAL:
            return Scalar(self.domain, 1 / self.payload)
        if kind == FINITE_FIELD:
            cache = self.domain._cache.setdefault("inv", {})
            hit = cache.get(self.payload)
            if hit is None:
                g, s, _ = _poly_gcd_ext(_poly_trim(self.payload),
                                        self.domain.modulus, self.domain.p)
                # g is a nonzero constant since the modulus is irreducible
                c_inv = pow(g[0], -1, self.domain.p)
                res = _poly_trim(tuple((c * c_inv) % self.domain.p for c in s))
                _, res = _poly_divmod(res, self.domain.modulus, self.domain.p)
                hit = res + (0,) * (self.domain.k - len(res))
                cache[self.payload] = hit
            return Scalar(self.domain, hit)
        a, b, c, d = self.payload
        n = a * a + b * b + c * c + d * d
        return Scalar(self.domain, (a / n, -b / n, -c / n, -d / n))

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = self.domain.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Scalar) and self.domain == other.domain
                and self.payload == other.payload)

    def __hash__(self):
        return hash((self.domain.key(), self.payload))

    def sort_key(self):
        if self.domain.kind == RATIONAL:
            return (self.payload.numerator, self.payload.denominator)
        if self.domain.kind == FINITE_FIELD:
            return self.payload
        return tuple((f.numerator, f.denominator) for f in self.payload)

    def __repr__(self):
        kind = self.domain.kind
        if kind == RATIONAL:
            return str(self.payload)
        if kind == FINITE_FIELD:
            return "[" + ",".join(str(c) for c in self.payload) + "]"
        a, b, c, d = self.payload
        return f"({a}+{b}i+{c}j+{d}k)"


# ---------------------------------------------------------------------------
# automorphisms


IDENTITY = "identity"
FROBENIUS = "frobenius"
INNER = "inner"


class RingAuto:
    """An automorphism of a coefficient domain, in canonical form.

    Forms: ``identity`` on any domain; ``frobenius(i)`` with 0 < i < k on a
    finite field (x -> x^(p^i)); ``inner(d)`` on the quaternions with d a
    non-central unit whose first nonzero Hamilton coefficient is 1.
    Canonical form makes equality a structural check.
    """

    __slots__ = ("domain", "form", "data")

    def __init__(self, domain, form, data=None):
        self.domain = domain
        self.form = form
        self.data = data

    @classmethod
    def identity(cls, domain):
        return cls(domain, IDENTITY)

    @classmethod
    def frobenius(cls, domain, i):
        if domain.kind != FINITE_FIELD:
            raise DomainMismatch("frobenius is only defined on finite fields")
        i %= domain.k
        if i == 0:
            return cls.identity(domain)
        return cls(domain, FROBENIUS, i)

    @classmethod
    def inner(cls, domain, d):
        """Conjugation x -> d x d^{-1}; collapses to the identity on
        commutative domains and for central d."""
        if d.is_zero():
            raise DivisionByZero("conjugation by zero")
        if d.domain != domain:
            raise DomainMismatch("unit and domain disagree")
        if domain.is_commutative():
            return cls.identity(domain)
        a, b, c, dd = d.payload
        if b == 0 and c == 0 and dd == 0:
            return cls.identity(domain)  # central: trivial conjugation
        for coeff in d.payload:
            if coeff != 0:
                scale = coeff
                break
        payload = tuple(x / scale for x in d.payload)
        return cls(domain, INNER, payload)

    def __call__(self, x):
        if x.domain != self.domain:
            raise DomainMismatch("automorphism applied outside its domain")
        if self.form == IDENTITY:
            return x
        if self.form == FROBENIUS:
            cache = self.domain._cache.setdefault(("frob", self.data), {})
            hit = cache.get(x.payload)
            if hit is None:
                hit = (x ** (self.domain.p ** self.data)).payload
                cache[x.payload] = hit
            return Scalar(self.domain, hit)
        d = Scalar(self.domain, self.data)
        return d * x * d.inv()

    def compose(self, other):
        """self after other: (self.compose(other))(x) == self(other(x))."""
        if other.domain != self.domain:
            raise DomainMismatch("composing automorphisms of different domains")
        if self.form == IDENTITY:
            return other
        if other.form == IDENTITY:
            return self
        if self.form == FROBENIUS and other.form == FROBENIUS:
            return RingAuto.frobenius(self.domain, self.data + other.data)
        if self.form == INNER and other.form == INNER:
            d = Scalar(self.domain, self.data) * Scalar(self.domain, other.data)
            return RingAuto.inner(self.domain, d)
        raise DomainMismatch("cannot mix frobenius and inner forms")

    def inverse(self):
        if self.form == IDENTITY:
            return self
        if self.form == FROBENIUS:
            return RingAuto.frobenius(self.domain, -self.data)
        return RingAuto.inner(self.domain, Scalar(self.domain, self.data).inv())

    def is_identity(self):
        return self.form == IDENTITY

    def __eq__(self, other):
        return (isinstance(other, RingAuto) and self.domain == other.domain
                and self.form == other.form and self.data == other.data)

    def __hash__(self):
        return hash((self.domain.key(), self.form, self.data))

    def sort_key(self):
        if self.form == IDENTITY:
            return (0,)
        if self.form == FROBENIUS:
            return (1, self.data)
        return (2,) + tuple((f.numerator, f.denominator) for f in self.data)

    def __repr__(self):
        if self.form == IDENTITY:
            return "id"
        if self.form == FROBENIUS:
            return f"frob^{self.data}"
        return f"inner{Scalar(self.domain, self.data)!r}"


def auto_eq(a, b):
    """Equality of automorphisms, decided on canonical forms."""
    return a == b


def compose_autos(a, b):
    return a.compose(b)


def apply_auto(a, x):
    return a(x)


def rho(d):
    """The inner automorphism x -> d x d^{-1} of d's domain."""
    return RingAuto.inner(d.domain, d)


# ---------------------------------------------------------------------------
# enumeration and sampling


def enumerate_autos(domain):
    """All automorphisms of the domain, canonical order.

    Finite fields carry exactly the k Frobenius powers; the rationals only
    the identity. Raises NotEnumerable for the quaternions, which have an
    infinite family of conjugations.
    """
    if domain.kind == FINITE_FIELD:
        return [RingAuto.frobenius(domain, i) for i in range(domain.k)]
    if domain.kind == RATIONAL:
        return [RingAuto.identity(domain)]
    raise NotEnumerable("the rational quaternions have infinitely many automorphisms")


def enumerate_units(domain):
    """All nonzero elements of a finite field, sorted canonically."""
    if domain.kind != FINITE_FIELD:
        raise NotEnumerable(f"{domain!r} has infinitely many units")
    cache = domain._cache.get("units")
    if cache is None:
        def vectors(i):
            if i == domain.k:
                yield ()
                return
            for c in range(domain.p):
                for tail in vectors(i + 1):
                    yield (c,) + tail

        cache = sorted((Scalar(domain, v) for v in vectors(0) if any(c != 0 for c in v)),
                       key=lambda s: s.sort_key())
        domain._cache["units"] = cache
    return list(cache)


def random_scalar(domain, rng, nonzero=False):
    """Draw a scalar using the supplied random.Random instance."""
    while True:
        if domain.kind == RATIONAL:
            s = Scalar(domain, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        elif domain.kind == FINITE_FIELD:
            s = Scalar(domain, tuple(rng.randrange(domain.p) for _ in range(domain.k)))
        else:
            s = Scalar(domain, tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                                     for _ in range(4)))
        if not (nonzero and s.is_zero()):
            return s


def sample_scalar(domain, seed):
    """Deterministic-in-seed scalar draw."""
    return random_scalar(domain, random.Random(seed))


# ---------------------------------------------------------------------------
# JSON encodings: rational "n/d", finite field coefficient array (lowest
# degree first, fixed length k), quaternion array of 4 rational strings.


def scalar_to_json(s):
    kind = s.domain.kind
    if kind == RATIONAL:
        return f"{s.payload.numerator}/{s.payload.denominator}"
    if kind == FINITE_FIELD:
        return list(s.payload)
    return [f"{f.numerator}/{f.denominator}" for f in s.payload]


def scalar_from_json(domain, data):
    kind = domain.kind
    if kind == RATIONAL:
        if not isinstance(data, str):
            raise ValueError("rational scalars are encoded as strings like \"3/4\"")
        return domain.scalar(Fraction(data))
    if kind == FINITE_FIELD:
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise ValueError("finite-field scalars are integer coefficient arrays")
        return domain.scalar(data)
    if not isinstance(data, list) or len(data) != 4:
        raise ValueError("quaternions are arrays of 4 rational strings")
    return domain.scalar([Fraction(str(v)) for v in data])


def domain_to_json(domain):
    if domain.kind == FINITE_FIELD:
        return {"kind": FINITE_FIELD, "p": domain.p, "k": domain.k,
                "modulus": list(domain.modulus)}
    return {"kind": domain.kind}


def domain_from_json(data):
    kind = data.get("kind")
    if kind == RATIONAL:
        return ScalarDomain.rational()
    if kind == QUATERNION:
        return ScalarDomain.quaternion()
    if kind == FINITE_FIELD:
        return ScalarDomain.finite_field(data["p"], data["k"], data.get("modulus"))
    raise ValueError(f"unknown domain kind {kind!r}")


def auto_to_json(a):
    if a.form == IDENTITY:
        return "identity"
    if a.form == FROBENIUS:
        return {"frobenius": a.data}
    return {"inner": scalar_to_json(Scalar(a.domain, a.data))}


def auto_from_json(domain, data):
    if data == "identity":
        return RingAuto.identity(domain)
    if isinstance(data, dict) and "frobenius" in data:
        return RingAuto.frobenius(domain, int(data["frobenius"]))
    if isinstance(data, dict) and "inner" in data:
        return RingAuto.inner(domain, scalar_from_json(domain, data["inner"]))
    raise ValueError(f"unknown automorphism encoding {data!r}")
