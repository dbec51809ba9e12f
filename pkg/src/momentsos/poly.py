"""Hermitian polynomial algebra in complex variables and its real image.

A polynomial f(z, z̄) = Σ f_{ab} z^a z̄^b is stored as a sparse map from
exponent-tuple pairs (a, b) to complex coefficients.  Conjugate symmetry
f_{ab} = conj(f_{ba}) makes the polynomial real-valued on C^n.  Real
polynomials reuse the same container with all-zero b exponents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonHermitian

TOL_HERM = 1e-9

MultiIndex = tuple

ZERO = ()


def mi_zero(n: int) -> MultiIndex:
    return (0,) * n


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def mi_degree(a: MultiIndex) -> int:
    return sum(a)


def mi_unit(n: int, k: int) -> MultiIndex:
    """Exponent tuple of the k-th variable (0-based)."""
    e = [0] * n
    e[k] = 1
    return tuple(e)


def grlex_key(a: MultiIndex):
    """Graded order, ties broken so that z1^d comes before z2^d."""
    return (sum(a), tuple(-x for x in a))


def pair_key(ab):
    a, b = ab
    return (sum(a) + sum(b), grlex_key(a), grlex_key(b))


def monomials_upto(nvars: int, d: int, support=None):
    """All exponent tuples of total degree <= d, graded-lex ordered.

    `support` restricts the nonzero positions to the given variable set
    (0-based); the tuples still have length `nvars`.
    """
    idx = sorted(support) if support is not None else list(range(nvars))
    out = []

    def rec(pos, remaining, cur):
        if pos == len(idx):
            out.append(tuple(cur))
            return
        for e in range(remaining + 1):
            cur[idx[pos]] = e
            rec(pos + 1, remaining - e, cur)
            cur[idx[pos]] = 0

    rec(0, d, [0] * nvars)
    return sorted(out, key=grlex_key)


@dataclass(frozen=True)
class HermitianPoly:
    """Conjugate-symmetric complex polynomial; real-valued on C^n."""

    n: int
    terms: dict = field(default_factory=dict)

    # -- structure ----------------------------------------------------
    def half_degree(self) -> int:
        """max{|a|, |b|} over nonzero terms (0 for the zero polynomial)."""
        return max((max(mi_degree(a), mi_degree(b)) for a, b in self.terms), default=0)

    def total_degree(self) -> int:
        return max((mi_degree(a) + mi_degree(b) for a, b in self.terms), default=0)

    def variables(self):
        """0-based indices of variables that actually occur."""
        used = set()
        for a, b in self.terms:
            for k in range(self.n):
                if a[k] or b[k]:
                    used.add(k)
        return used

    def monomial_pairs(self):
        """Pairs of distinct variables co-occurring in one monomial."""
        pairs = set()
        for a, b in self.terms:
            live = [k for k in range(self.n) if a[k] or b[k]]
            for i in range(len(live)):
                for j in range(i + 1, len(live)):
                    pairs.add((live[i], live[j]))
        return pairs

    def is_balanced(self) -> bool:
        return all(mi_degree(a) == mi_degree(b) for a, b in self.terms)

    def is_even(self) -> bool:
        return all((mi_degree(a) + mi_degree(b)) % 2 == 0 for a, b in self.terms)

    def constant(self) -> float:
        z = mi_zero(self.n)
        return self.terms.get((z, z), 0.0).real if (z, z) in self.terms else 0.0

    # -- algebra ------------------------------------------------------
    def add(self, other: "HermitianPoly") -> "HermitianPoly":
        if other.n != self.n:
            raise DimensionMismatch("adding polynomials over different variable counts")
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0.0) + c
        return HermitianPoly(self.n, _drop_zeros(out))

    def scale(self, s: float) -> "HermitianPoly":
        return HermitianPoly(self.n, _drop_zeros({k: s * c for k, c in self.terms.items()}))

    def shift(self, c: float) -> "HermitianPoly":
        """Add a real constant."""
        z = mi_zero(self.n)
        out = dict(self.terms)
        out[(z, z)] = out.get((z, z), 0.0) + c
        return HermitianPoly(self.n, _drop_zeros(out))

    def conjugate(self) -> "HermitianPoly":
        return HermitianPoly(
            self.n, {(b, a): c.conjugate() for (a, b), c in self.terms.items()}
        )

    def mul_monomial(self, ga: MultiIndex, gb: MultiIndex, coeff=1.0) -> "HermitianPoly":
        """Multiply by coeff * z^ga z̄^gb (generally breaks symmetry)."""
        return HermitianPoly(
            self.n,
            {(mi_add(a, ga), mi_add(b, gb)): coeff * c for (a, b), c in self.terms.items()},
        )

    def multiply(self, other: "HermitianPoly") -> "HermitianPoly":
        if other.n != self.n:
            raise DimensionMismatch("multiplying polynomials over different variable counts")
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (mi_add(a1, a2), mi_add(b1, b2))
                out[key] = out.get(key, 0.0) + c1 * c2
        return HermitianPoly(self.n, _drop_zeros(out))

    def embed(self, n_new: int) -> "HermitianPoly":
        """Reinterpret over a larger variable set (extra exponents zero)."""
        pad = (0,) * (n_new - self.n)
        return HermitianPoly(
            n_new, {(a + pad, b + pad): c for (a, b), c in self.terms.items()}
        )

    def map_vars(self, mapping, n_new: int) -> "HermitianPoly":
        """Relabel variable k to mapping[k] inside an n_new-variable space."""
        out = {}
        for (a, b), c in self.terms.items():
            na, nb = [0] * n_new, [0] * n_new
            for k in range(self.n):
                if a[k]:
                    na[mapping[k]] += a[k]
                if b[k]:
                    nb[mapping[k]] += b[k]
            key = (tuple(na), tuple(nb))
            out[key] = out.get(key, 0.0) + c
        return HermitianPoly(n_new, _drop_zeros(out))

    def __str__(self):
        bits = []
        for (a, b) in sorted(self.terms, key=pair_key):
            c = self.terms[(a, b)]
            bits.append(f"({c:+.6g})*z^{list(a)}*zb^{list(b)}")
        return " ".join(bits) if bits else "0"


def _drop_zeros(terms, tol=0.0):
    return {k: c for k, c in terms.items() if abs(c) > tol}


def normalize_hermitian(n: int, raw_terms, tol: float = TOL_HERM) -> HermitianPoly:
    """Build a HermitianPoly, symmetrizing mirror coefficients.

    Raises NonHermitian when a coefficient and its mirror disagree by more
    than `tol`, and DimensionMismatch on ragged exponent tuples.
    """
    clean = {}
    for (a, b), c in raw_terms.items():
        a, b = tuple(a), tuple(b)
        if len(a) != n or len(b) != n:
            raise DimensionMismatch(f"exponent tuples must have length {n}")
        if any(e < 0 for e in a + b):
            raise DimensionMismatch("negative exponents are not allowed")
        clean[(a, b)] = clean.get((a, b), 0.0) + complex(c)
    out = {}
    for (a, b), c in clean.items():
        if (b, a) in out or (a, b) in out:
            continue
        mirror = clean.get((b, a))
        if a == b:
            if abs(c.imag) > tol:
                raise NonHermitian(f"diagonal coefficient at {a} has imaginary part {c.imag:g}")
            out[(a, b)] = complex(c.real)
            continue
        if mirror is None:
            raise NonHermitian(f"missing mirror term for ({a},{b})")
        if abs(c - mirror.conjugate()) > tol:
            raise NonHermitian(
                f"coefficients at ({a},{b}) and ({b},{a}) are not conjugate "
                f"(|delta| = {abs(c - mirror.conjugate()):g})"
            )
        avg = 0.5 * (c + mirror.conjugate())
        out[(a, b)] = avg
        out[(b, a)] = avg.conjugate()
    return HermitianPoly(n, _drop_zeros(out))


def real_poly(n: int, coeffs) -> HermitianPoly:
    """Real polynomial Σ c_a x^a as a HermitianPoly with zero b-exponents."""
    z = (0,) * n
    terms = {}
    for a, c in coeffs.items():
        a = tuple(a)
        if len(a) != n:
            raise DimensionMismatch(f"exponent tuples must have length {n}")
        terms[(a, z)] = terms.get((a, z), 0.0) + float(c)
    return HermitianPoly(n, _drop_zeros(terms))


def evaluate(p: HermitianPoly, z, tol: float = TOL_HERM) -> float:
    """Evaluate Σ c_{ab} z^a conj(z)^b; the imaginary residue is discarded."""
    z = np.asarray(z, dtype=complex)
    if z.shape != (p.n,):
        raise DimensionMismatch(f"expected a point of length {p.n}")
    zc = z.conjugate()
    val = 0.0 + 0.0j
    for (a, b), c in p.terms.items():
        term = c
        for k in range(p.n):
            if a[k]:
                term *= z[k] ** a[k]
            if b[k]:
                term *= zc[k] ** b[k]
        val += term
    if abs(val.imag) > tol * (1.0 + abs(val.real)):
        raise NonHermitian(f"evaluation has imaginary residue {val.imag:g}")
    return float(val.real)


def evaluate_real(p: HermitianPoly, x) -> float:
    """Evaluate a b=0 (real) polynomial at a real point."""
    x = np.asarray(x, dtype=float)
    if x.shape != (p.n,):
        raise DimensionMismatch(f"expected a point of length {p.n}")
    val = 0.0
    for (a, b), c in p.terms.items():
        term = c.real
        for k in range(p.n):
            e = a[k] + b[k]
            if e:
                term *= x[k] ** e
        val += term
    return float(val)


def realify(p: HermitianPoly) -> HermitianPoly:
    """Substitute z_k = x_k + i x_{k+n}: real polynomial in 2n variables.

    The result has all-zero b exponents and real coefficients; its degree
    equals the total degree |a| + |b| of the input.
    """
    n, m = p.n, 2 * p.n
    zero = (0,) * m
    # z_k  -> x_k + i x_{n+k},  z̄_k -> x_k - i x_{n+k}
    out = {}
    for (a, b), c in p.terms.items():
        expansion = {zero: c}
        for k in range(p.n):
            for _ in range(a[k]):
                expansion = _mul_linear(expansion, m, k, n + k, 1j)
            for _ in range(b[k]):
                expansion = _mul_linear(expansion, m, k, n + k, -1j)
        for mono, cc in expansion.items():
            out[mono] = out.get(mono, 0.0) + cc
    terms = {}
    for mono, cc in out.items():
        if abs(cc) <= TOL_HERM * max(1.0, abs(cc.real)):
            continue
        if abs(cc.imag) > TOL_HERM * (1.0 + abs(cc.real)):
            raise NonHermitian(f"realified coefficient at {mono} has imaginary part {cc.imag:g}")
        terms[(mono, zero)] = complex(cc.real)
    return HermitianPoly(m, terms)


def _mul_linear(expansion, m, kre, kim, imcoef):
    """Multiply a monomial->coeff map by (x_kre + imcoef * x_kim)."""
    out = {}
    for mono, c in expansion.items():
        m1 = list(mono)
        m1[kre] += 1
        m1 = tuple(m1)
        out[m1] = out.get(m1, 0.0) + c
        m2 = list(mono)
        m2[kim] += 1
        m2 = tuple(m2)
        out[m2] = out.get(m2, 0.0) + c * imcoef
    return out


# ---------------------------------------------------------------------------
# Polynomial optimization problems
# ---------------------------------------------------------------------------

GE = "ge"
EQ = "eq"


@dataclass(frozen=True)
class Constraint:
    poly: HermitianPoly
    sense: str = GE  # "ge": poly >= 0, "eq": poly == 0
    label: str = ""
    # |quad_form(z)|^2 <= quad_bound encoded in `poly`; kept for the
    # first-order Schur treatment of quartic flow limits.
    quad_form: HermitianPoly = None
    quad_bound: float = 0.0

    def __post_init__(self):
        if self.sense not in (GE, EQ):
            raise ValueError(f"unknown sense {self.sense!r}")


@dataclass(frozen=True)
class Pop:
    """Polynomial optimization problem inf f s.t. g_i >= 0 / g_i == 0."""

    n: int
    field: str  # "complex" or "real"
    objective: HermitianPoly
    constraints: tuple
    ball_radius: float = None

    def __post_init__(self):
        if self.field not in ("complex", "real"):
            raise ValueError(f"unknown field {self.field!r}")
        for c in self.constraints:
            if c.poly.n != self.n:
                raise DimensionMismatch("constraint over wrong variable count")
        if self.objective.n != self.n:
            raise DimensionMismatch("objective over wrong variable count")

    # half-degrees: complex uses max{|a|,|b|}; the real (Hankel) hierarchy
    # uses ceil(deg/2).
    def half_degree(self, p: HermitianPoly) -> int:
        if self.field == "complex":
            return p.half_degree()
        return (p.total_degree() + 1) // 2

    @property
    def k0(self) -> int:
        return self.half_degree(self.objective)

    def k(self, i: int) -> int:
        return self.half_degree(self.constraints[i].poly)

    @property
    def d_min(self) -> int:
        return max([self.k0, 1] + [self.k(i) for i in range(len(self.constraints))])

    @property
    def m(self) -> int:
        return len(self.constraints)

    def evaluate_objective(self, z) -> float:
        return self._eval(self.objective, z)

    def evaluate_constraint(self, i: int, z) -> float:
        return self._eval(self.constraints[i].poly, z)

    def _eval(self, p, z):
        if self.field == "real":
            return evaluate_real(p, np.asarray(z).real)
        return evaluate(p, z, tol=1e-6)

    def feasibility_violations(self, z):
        """Per-constraint violation (0 when satisfied)."""
        out = []
        for c in self.constraints:
            v = self._eval(c.poly, z)
            out.append(abs(v) if c.sense == EQ else max(0.0, -v))
        return np.array(out)


def pop_realify(pop: Pop) -> Pop:
    """Identify real and imaginary parts: a real POP over 2n variables."""
    cons = tuple(
        Constraint(realify(c.poly), c.sense, label=c.label) for c in pop.constraints
    )
    return Pop(2 * pop.n, "real", realify(pop.objective), cons, pop.ball_radius)


# -- structural detectors used by certification and symmetry ---------------


def sphere_like_vars(p: HermitianPoly):
    """If p == c - Σ_{k in S} w_k |z_k|^2 (w_k > 0), return S, else None."""
    svars = set()
    z = mi_zero(p.n)
    for (a, b), c in p.terms.items():
        if (a, b) == (z, z):
            continue
        if a == b and mi_degree(a) == 1:
            k = next(i for i in range(p.n) if a[i])
            if c.real < 0:
                svars.add(k)
            else:
                return None
        else:
            return None
    return svars or None


def has_ball_constraint(pop: Pop, variables=None) -> bool:
    """True when some constraint bounds Σ|z_k|^2 (or each |z_k|^2) above."""
    need = set(variables) if variables is not None else set(range(pop.n))
    covered = set()
    for c in pop.constraints:
        s = sphere_like_vars(c.poly)
        if s is None:
            continue
        if c.sense == EQ or c.sense == GE:
            covered |= s & need
    if pop.ball_radius is not None:
        return True
    return need <= covered


def torus_pinned_vars(pop: Pop):
    """Variables k with an equality c - w|z_k|^2 == 0 (w, c > 0)."""
    z = mi_zero(pop.n)
    pinned = set()
    for c in pop.constraints:
        if c.sense != EQ:
            continue
        terms = dict(c.poly.terms)
        const = terms.pop((z, z), 0.0)
        if len(terms) != 1:
            continue
        ((a, b),) = terms
        if a != b or mi_degree(a) != 1:
            continue
        k = next(i for i in range(pop.n) if a[i])
        w = terms[(a, b)].real
        if w * const.real < 0 and w != 0:
            pinned.add(k)
    return pinned


def realline_pinned_vars(pop: Pop):
    """Variables k with an equality c*(i z_k - i z̄_k) == 0."""
    pinned = set()
    for c in pop.constraints:
        if c.sense != EQ:
            continue
        terms = c.poly.terms
        if len(terms) != 2:
            continue
        keys = sorted(terms, key=pair_key)
        (a1, b1), (a2, b2) = keys
        if b1 != mi_zero(pop.n) or a2 != mi_zero(pop.n):
            continue
        if a1 != b2 or mi_degree(a1) != 1:
            continue
        k = next(i for i in range(pop.n) if a1[i])
        c1, c2 = terms[(a1, b1)], terms[(a2, b2)]
        if abs(c1.real) < 1e-12 and abs(c1 + c2.conjugate()) < 1e-9 * (1 + abs(c1)):
            pinned.add(k)
    return pinned


# ---------------------------------------------------------------------------
# JSON problem format
# ---------------------------------------------------------------------------


def _terms_to_json(p: HermitianPoly):
    out = []
    for (a, b) in sorted(p.terms, key=pair_key):
        c = p.terms[(a, b)]
        out.append({"alpha": list(a), "beta": list(b), "re": c.real, "im": c.imag})
    return out


def _terms_from_json(n, items):
    raw = {}
    for t in items:
        key = (tuple(t["alpha"]), tuple(t["beta"]))
        raw[key] = raw.get(key, 0.0) + complex(t["re"], t.get("im", 0.0))
    return raw


def pop_to_json(pop: Pop) -> dict:
    doc = {
        "n": pop.n,
        "field": pop.field,
        "objective": _terms_to_json(pop.objective),
        "constraints": [
            {"terms": _terms_to_json(c.poly), "sense": c.sense, "label": c.label}
            for c in pop.constraints
        ],
    }
    if pop.ball_radius is not None:
        doc["ball_radius"] = pop.ball_radius
    return doc


def pop_from_json(doc: dict) -> Pop:
    n = int(doc["n"])
    field_name = doc.get("field", "complex")
    obj = normalize_hermitian(n, _terms_from_json(n, doc["objective"]))
    cons = []
    for k, c in enumerate(doc.get("constraints", [])):
        poly = normalize_hermitian(n, _terms_from_json(n, c["terms"]))
        cons.append(Constraint(poly, c.get("sense", GE), label=c.get("label", f"g{k + 1}")))
    return Pop(n, field_name, obj, tuple(cons), doc.get("ball_radius"))


def load_pop(path) -> Pop:
    with open(path) as fh:
        return pop_from_json(json.load(fh))


def save_pop(pop: Pop, path):
    with open(path, "w") as fh:
        json.dump(pop_to_json(pop), fh, indent=1, sort_keys=True)
        fh.write("\n")
