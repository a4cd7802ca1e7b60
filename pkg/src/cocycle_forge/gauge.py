"""The gauge group and its action on 2-cocycles.

A gauge is a pair (mu, eta): a domain automorphism mu_e per idempotent and
a nonzero scalar eta(s) per element. Gauges act on twist data by

    beta_s     = mu_e^{-1} o rho_{eta(s)} o alpha_s o mu_f        (s = e.s.f)
    zeta(s, t) = mu_e^{-1}( eta(s) . alpha_s(eta(t)) . xi(s, t) . eta(s.t)^{-1} )

which is the unique way to solve the defining relations of the action for
(beta, zeta). The group law is chosen so this is a left action, i.e.
act(g1 * g2, c) == act(g1, act(g2, c)); solving the composite relations
forces

    (g1 * g2).mu_e    = g2.mu_e o g1.mu_e
    (g1 * g2).eta(s)  = g2.mu_e( g1.eta(s) ) . g2.eta(s)          (e = src s)

(the mu components compose in swapped order because mu appears inverted on
the outside of both action formulas).

Semigroup automorphisms act by relabeling:  alpha^phi(s) = alpha(phi(s)),
xi^phi(s, t) = xi(phi(s), phi(t)); this satisfies
act_phi(phi o psi, c) == act_phi(psi, act_phi(phi, c)) and is compatible
with the gauge action through g^phi = (e -> mu_{phi(e)}, s -> eta(phi(s))).

`cohomologous` decides whether two cocycles lie in the same gauge orbit:
over a finite field by a pruned backtracking search (idempotent values are
forced first, each further assignment is checked against every relation it
completes), over the rationals by exact multiplicative elimination. Both
negative answers are definitive; the quaternions raise NotEnumerable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._multsolve import solve_multiplicative
from .cochain import TwoCochain
from .errors import DomainMismatch, NotEnumerable
from .scalars import (
    RingAuto, Scalar, auto_from_json, auto_to_json, enumerate_autos,
    enumerate_units, rho, scalar_from_json, scalar_to_json,
)


class Gauge:
    """A (mu, eta) pair, total on idempotents and elements; immutable."""

    __slots__ = ("sg", "domain", "mu", "eta")

    def __init__(self, sg, domain, mu=None, eta=None):
        self.sg = sg
        self.domain = domain
        ident = RingAuto.identity(domain)
        one = domain.one()
        mu = mu or {}
        eta = eta or {}
        self.mu = {e: mu.get(e, ident) for e in sg.idempotents}
        self.eta = {s: eta.get(s, one) for s in sg.elements}
        for e, a in self.mu.items():
            if a.domain != domain:
                raise DomainMismatch(f"mu[{e!r}] lives in {a.domain!r}")
        for s, v in self.eta.items():
            if v.domain != domain:
                raise DomainMismatch(f"eta[{s!r}] lives in {v.domain!r}")
            if v.is_zero():
                raise ValueError(f"eta[{s!r}] must be nonzero")

    @classmethod
    def identity(cls, sg, domain):
        return cls(sg, domain)

    def is_identity(self):
        return (all(a.is_identity() for a in self.mu.values())
                and all(v == self.domain.one() for v in self.eta.values()))

    def compose(self, other):
        """Group law making act_gauge a left action (see module docstring)."""
        if self.sg != other.sg or self.domain != other.domain:
            raise DomainMismatch("composing gauges over different settings")
        mu = {e: other.mu[e].compose(self.mu[e]) for e in self.sg.idempotents}
        eta = {s: other.mu[self.sg.src[s]](self.eta[s]) * other.eta[s]
               for s in self.sg.elements}
        return Gauge(self.sg, self.domain, mu, eta)

    def inverse(self):
        mu = {e: self.mu[e].inverse() for e in self.sg.idempotents}
        eta = {s: mu[self.sg.src[s]](self.eta[s]).inv() for s in self.sg.elements}
        return Gauge(self.sg, self.domain, mu, eta)

    def conjugate_by(self, phi):
        """g^phi = (e -> mu_{phi(e)}, s -> eta(phi(s)))."""
        mu = {e: self.mu[phi(e)] for e in self.sg.idempotents}
        eta = {s: self.eta[phi(s)] for s in self.sg.elements}
        return Gauge(self.sg, self.domain, mu, eta)

    def key(self):
        return (tuple((e, self.mu[e].sort_key()) for e in self.sg.idempotents),
                tuple((s, self.eta[s].sort_key()) for s in self.sg.elements))

    def sort_key(self):
        return (tuple(self.mu[e].sort_key() for e in self.sg.idempotents),
                tuple(self.eta[s].sort_key() for s in self.sg.elements))

    def __eq__(self, other):
        return (isinstance(other, Gauge) and self.sg == other.sg
                and self.domain == other.domain and self.key() == other.key())

    def __hash__(self):
        return hash((self.domain.key(), self.key()))

    def __repr__(self):
        mu = {e: a for e, a in self.mu.items() if not a.is_identity()}
        eta = {s: v for s, v in self.eta.items() if v != self.domain.one()}
        return f"Gauge(mu={mu or 'id'}, eta={eta or '1'})"


@dataclass(frozen=True)
class IsoWitness:
    """Data certifying that two cocycle classes match up to an Aut(S) twist."""
    gauge: Gauge
    phi: object = None  # SemigroupAuto or None for the identity


# ---------------------------------------------------------------------------
# actions


def _require_setting(c, sg, domain):
    if c.sg != sg or c.domain != domain:
        raise DomainMismatch("gauge and cochain settings disagree")


def act_gauge(g, c):
    """Apply a gauge to twist data; cocycles map to cocycles."""
    _require_setting(c, g.sg, g.domain)
    sg = g.sg
    beta = {}
    for s in sg.elements:
        e, f = sg.src[s], sg.tgt[s]
        a = rho(g.eta[s]).compose(c.alpha_at(s)).compose(g.mu[f])
        beta[s] = g.mu[e].inverse().compose(a)
    zeta = {}
    for s, t in sg.tuples(2):
        st = sg.compose(s, t)
        val = g.eta[s] * c.alpha_at(s)(g.eta[t]) * c.xi_at(s, t) * g.eta[st].inv()
        zeta[(s, t)] = g.mu[sg.src[s]].inverse()(val)
    return TwoCochain(sg, g.domain, beta, zeta)


def act_phi(phi, c):
    """Relabel twist data along a semigroup automorphism."""
    sg = c.sg
    beta = {s: c.alpha_at(phi(s)) for s in sg.elements}
    zeta = {(s, t): c.xi_at(phi(s), phi(t)) for s, t in sg.tuples(2)}
    return TwoCochain(sg, c.domain, beta, zeta)


# ---------------------------------------------------------------------------
# orbit membership: find g with act_gauge(g, c1) == c2


def _eta_constraints(sg):
    """Pair constraints grouped by the last element they mention, in the
    canonical assignment order."""
    pos = {s: i for i, s in enumerate(sg.elements)}
    grouped = {i: [] for i in range(len(sg.elements))}
    for s, t in sg.tuples(2):
        st = sg.compose(s, t)
        grouped[max(pos[s], pos[t], pos[st])].append((s, t, st))
    return grouped


def _gauge_solutions_ff(c1, c2):
    """Yield every gauge carrying c1 to c2 over a finite field, in
    deterministic order. Exhaustive: mu ranges over all automorphism
    assignments, eta is backtracked with constraints checked as soon as
    their support is assigned."""
    sg, domain = c1.sg, c1.domain
    autos = enumerate_autos(domain)
    units = enumerate_units(domain)
    elements = sg.elements
    grouped = _eta_constraints(sg)

    for mu_choice in itertools.product(autos, repeat=len(sg.idempotents)):
        mu = dict(zip(sg.idempotents, mu_choice))
        # rho is trivial on a field, so the automorphism relation is
        # eta-independent: check it before touching eta at all
        if any(mu[sg.src[s]].inverse().compose(c1.alpha_at(s)).compose(mu[sg.tgt[s]])
               != c2.alpha_at(s) for s in elements):
            continue
        eta = {}

        def satisfied(con):
            s, t, st = con
            lhs = eta[s] * c1.alpha_at(s)(eta[t]) * c1.xi_at(s, t) * eta[st].inv()
            return lhs == mu[sg.src[s]](c2.xi_at(s, t))

        def extend(i):
            if i == len(elements):
                yield Gauge(sg, domain, dict(mu), dict(eta))
                return
            name = elements[i]
            for u in units:
                eta[name] = u
                if all(satisfied(con) for con in grouped[i]):
                    yield from extend(i + 1)
            del eta[name]

        yield from extend(0)


def _cohomologous_rational(c1, c2):
    """Exact decision over the rationals. Every automorphism is the
    identity there, so only the scalar relations constrain eta; they form a
    multiplicative linear system solved by elimination."""
    sg, domain = c1.sg, c1.domain
    equations = []
    for s, t in sg.tuples(2):
        st = sg.compose(s, t)
        coeffs = {}
        for name, c in ((s, 1), (t, 1), (st, -1)):
            coeffs[name] = coeffs.get(name, 0) + c
        const = c2.xi_at(s, t).payload / c1.xi_at(s, t).payload
        equations.append((coeffs, const))
    solution = solve_multiplicative(equations, list(sg.elements))
    if solution is None:
        return None
    eta = {s: Scalar(domain, v) for s, v in solution.items()}
    return Gauge(sg, domain, None, eta)


def cohomologous(c1, c2):
    """A gauge g with act_gauge(g, c1) == c2, or None (definitively).

    Supported for finite fields (search) and the rationals (elimination);
    the quaternions raise NotEnumerable since a failed search there could
    not be exhaustive.
    """
    if c1.sg != c2.sg or c1.domain != c2.domain:
        raise DomainMismatch("cocycles compared over different settings")
    kind = c1.domain.kind
    if kind == "finite_field":
        return next(_gauge_solutions_ff(c1, c2), None)
    if kind == "rational":
        return _cohomologous_rational(c1, c2)
    raise NotEnumerable("cannot search gauges over the rational quaternions")


def gauge_stabilizer(c):
    """All gauges fixing a cocycle (finite fields only)."""
    if c.domain.kind != "finite_field":
        raise NotEnumerable("stabilizer enumeration needs a finite field")
    return list(_gauge_solutions_ff(c, c))


def stabilizer_of_class(c):
    """The semigroup automorphisms phi with [c] = [c^phi]."""
    return [phi for phi in c.sg.enumerate_autos()
            if cohomologous(c, act_phi(phi, c)) is not None]


# ---------------------------------------------------------------------------
# JSON: {"mu": [{"on": e, "auto": ...}], "eta": [{"on": s, "value": ...}]}


def gauge_to_json(g):
    return {
        "mu": [{"on": e, "auto": auto_to_json(g.mu[e])} for e in g.sg.idempotents
               if not g.mu[e].is_identity()],
        "eta": [{"on": s, "value": scalar_to_json(g.eta[s])} for s in g.sg.elements
                if g.eta[s] != g.domain.one()],
    }


def gauge_from_json(sg, domain, data):
    mu = {entry["on"]: auto_from_json(domain, entry["auto"])
          for entry in data.get("mu", [])}
    eta = {entry["on"]: scalar_from_json(domain, entry["value"])
           for entry in data.get("eta", [])}
    return Gauge(sg, domain, mu, eta)
