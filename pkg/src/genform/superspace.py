"""Grassmann-function representation of degree-extended forms.

A form corresponds to a polynomial in anticommuting generators z1..zn (one per
coordinate differential) plus one extra odd generator mu, with ordinary
polynomial coefficients:

    body component  rho_I dx^I   <->   rho_I z^I
    soul component  sig_J dx^J   <->   sig_J z^J mu

Terms are keyed by generator bitmask: bit i-1 is z^i, bit n is mu, and the
generator order z1 < ... < zn < mu fixes every sign.  The exterior derivative
is the odd operator  z^a d/dx^a + eps d/dmu, the interior product by a field
with components (v^r + v^r_s dx^s m) is the odd operator
(v^r + v^r_s z^s mu) d/dz^r, and Lie derivatives are their anticommutators.

Odd partial derivatives act from the LEFT: d/dg picks up the parity of the
generators preceding g in the sorted monomial.  This convention is validated
globally by the round-trip suite: each operator computed here, conjugated by
to_super/from_super, must reproduce its direct form-level counterpart exactly.

All operations here are computed on raw bitmask data, independent of the
form-level sign bookkeeping, which is what makes this module useful as a
cross-check oracle for everything else.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exterior import OrdinaryForm
from .gform import GenForm
from .ring import Polynomial, Scalar


def blade_mul(mask_a: int, mask_b: int) -> tuple[int, int] | None:
    """Multiply generator monomials: returns (sign, mask) or None on overlap."""
    if mask_a & mask_b:
        return None
    sign = 1
    rest = mask_a
    while rest:
        bit = rest & (-rest)
        # this generator of mask_a must pass every smaller generator of mask_b
        if bin(mask_b & (bit - 1)).count("1") % 2:
            sign = -sign
        rest ^= bit
    return sign, mask_a | mask_b


def left_derivative_sign(mask: int, bit_index: int) -> int:
    """Sign of the left derivative d/dg on a sorted monomial containing g."""
    below = mask & ((1 << bit_index) - 1)
    return -1 if bin(below).count("1") % 2 else 1


class SuperFunction:
    """Grassmann polynomial with Polynomial coefficients, keyed by bitmask."""

    __slots__ = ("dim", "epsilon", "terms")

    def __init__(self, dim: int, epsilon: Scalar, terms: Mapping[int, Polynomial] | None = None):
        self.dim = dim
        self.epsilon = Fraction(epsilon)
        clean: dict[int, Polynomial] = {}
        if terms:
            for mask, coeff in terms.items():
                if mask >> (dim + 1):
                    raise ValueError(f"mask {mask:b} uses generators beyond mu")
                if not coeff.is_zero():
                    clean[mask] = coeff
        self.terms = clean

    @property
    def mu_bit(self) -> int:
        return 1 << self.dim

    @classmethod
    def zero(cls, dim: int, epsilon: Scalar) -> "SuperFunction":
        return cls(dim, epsilon)

    @classmethod
    def from_poly(cls, p: Polynomial, epsilon: Scalar) -> "SuperFunction":
        return cls(p.dim, epsilon, {0: p})

    def is_zero(self) -> bool:
        return not self.terms

    def _require_compatible(self, other: "SuperFunction") -> None:
        if self.dim != other.dim or self.epsilon != other.epsilon:
            raise ValueError("dimension/epsilon mismatch")

    def __add__(self, other: "SuperFunction") -> "SuperFunction":
        self._require_compatible(other)
        out = dict(self.terms)
        for mask, coeff in other.terms.items():
            acc = out.get(mask, Polynomial.zero(self.dim)) + coeff
            if acc.is_zero():
                out.pop(mask, None)
            else:
                out[mask] = acc
        return SuperFunction(self.dim, self.epsilon, out)

    def __sub__(self, other: "SuperFunction") -> "SuperFunction":
        return self + (-other)

    def __neg__(self) -> "SuperFunction":
        return SuperFunction(self.dim, self.epsilon, {m: -c for m, c in self.terms.items()})

    def scale(self, factor: Polynomial | Scalar) -> "SuperFunction":
        out = {}
        for mask, coeff in self.terms.items():
            scaled = coeff * factor
            if not scaled.is_zero():
                out[mask] = scaled
        return SuperFunction(self.dim, self.epsilon, out)

    def mul(self, other: "SuperFunction") -> "SuperFunction":
        """Graded-commutative product with transposition-counted signs."""
        self._require_compatible(other)
        out: dict[int, Polynomial] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                blade = blade_mul(m1, m2)
                if blade is None:
                    continue
                sign, mask = blade
                coeff = c1 * c2
                if sign < 0:
                    coeff = -coeff
                acc = out.get(mask, Polynomial.zero(self.dim)) + coeff
                if acc.is_zero():
                    out.pop(mask, None)
                else:
                    out[mask] = acc
        return SuperFunction(self.dim, self.epsilon, out)

    def odd_derivative(self, bit_index: int) -> "SuperFunction":
        """Left derivative with respect to the generator at bit_index."""
        bit = 1 << bit_index
        out = {}
        for mask, coeff in self.terms.items():
            if not mask & bit:
                continue
            if left_derivative_sign(mask, bit_index) < 0:
                coeff = -coeff
            out[mask ^ bit] = coeff
        return SuperFunction(self.dim, self.epsilon, out)

    def coordinate_partial(self, axis: int) -> "SuperFunction":
        out = {}
        for mask, coeff in self.terms.items():
            dc = coeff.partial(axis)
            if not dc.is_zero():
                out[mask] = dc
        return SuperFunction(self.dim, self.epsilon, out)

    def __eq__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return (self.dim == other.dim and self.epsilon == other.epsilon
                and self.terms == other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms):
            gens = [f"z{i + 1}" for i in range(self.dim) if mask & (1 << i)]
            if mask & self.mu_bit:
                gens.append("mu")
            label = " ".join(gens)
            coeff = self.terms[mask]
            parts.append(f"{coeff} * {label}" if label else str(coeff))
        return " + ".join(parts)

    def __repr__(self):
        return f"SuperFunction(dim={self.dim}, {str(self)})"


# -- dictionary ----------------------------------------------------------------


def _mask_of(idxs: tuple[int, ...]) -> int:
    mask = 0
    for i in idxs:
        mask |= 1 << (i - 1)
    return mask


def _idxs_of(mask: int, dim: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(dim) if mask & (1 << i))


def to_super(a: GenForm) -> SuperFunction:
    """Body components map to mu-free monomials, soul components pick up mu."""
    terms: dict[int, Polynomial] = {}
    for idxs, coeff in a.body.components.items():
        terms[_mask_of(idxs)] = coeff
    mu = 1 << a.dim
    for idxs, coeff in a.soul.components.items():
        terms[_mask_of(idxs) | mu] = coeff
    return SuperFunction(a.dim, a.epsilon, terms)


def term_degree(mask: int, dim: int) -> int:
    """Degree of the form a monomial encodes: number of z's, minus one if mu
    is present."""
    zeta_count = bin(mask & ((1 << dim) - 1)).count("1")
    return zeta_count - 1 if mask & (1 << dim) else zeta_count


def from_super(f: SuperFunction) -> GenForm:
    """Inverse dictionary; rejects inputs of mixed degree, which only arise
    from malformed oracle intermediates."""
    degrees = {term_degree(mask, f.dim) for mask in f.terms}
    if len(degrees) > 1:
        raise ValueError(f"inhomogeneous superfunction: degrees {sorted(degrees)}")
    degree = degrees.pop() if degrees else 0
    mu = 1 << f.dim
    body: dict[tuple[int, ...], Polynomial] = {}
    soul: dict[tuple[int, ...], Polynomial] = {}
    for mask, coeff in f.terms.items():
        if mask & mu:
            soul[_idxs_of(mask ^ mu, f.dim)] = coeff
        else:
            body[_idxs_of(mask, f.dim)] = coeff
    return GenForm(f.dim, f.epsilon, degree,
                   OrdinaryForm(f.dim, degree, body),
                   OrdinaryForm(f.dim, degree + 1, soul))


# -- operators -----------------------------------------------------------------


def super_d(f: SuperFunction) -> SuperFunction:
    """(z^a d/dx^a + eps d/dmu) f."""
    result = SuperFunction.zero(f.dim, f.epsilon)
    for axis in range(1, f.dim + 1):
        zeta = SuperFunction(f.dim, f.epsilon, {1 << (axis - 1): Polynomial.one(f.dim)})
        result = result + zeta.mul(f.coordinate_partial(axis))
    if f.epsilon != 0:
        result = result + f.odd_derivative(f.dim).scale(f.epsilon)
    return result


def super_interior(V, f: SuperFunction) -> SuperFunction:
    """(v^r + v^r_s z^s mu) d/dz^r applied to f.

    V is a gvector.GenVectorField; only its component data is read here.
    """
    if V.dim != f.dim:
        raise ValueError(f"dimension mismatch: {V.dim} vs {f.dim}")
    mu = 1 << f.dim
    result = SuperFunction.zero(f.dim, f.epsilon)
    for r in range(1, f.dim + 1):
        df = f.odd_derivative(r - 1)
        if df.is_zero():
            continue
        vr = V.v.component(r)
        if not vr.is_zero():
            result = result + df.scale(vr)
        for s in range(1, f.dim + 1):
            vrs = V.vt.entry(r, s)
            if vrs.is_zero():
                continue
            blade = SuperFunction(f.dim, f.epsilon, {(1 << (s - 1)) | mu: vrs})
            result = result + blade.mul(df)
    return result


def super_lie(V, f: SuperFunction) -> SuperFunction:
    """Anticommutator [d, i_V] = d i_V + i_V d."""
    return super_d(super_interior(V, f)) + super_interior(V, super_d(f))


def super_lie_expansion(V, f: SuperFunction) -> SuperFunction:
    """Expanded form of the Lie operator, computed without composing d and
    i_V:

        v^a d_a + (d_b v^a) z^b d/dz^a - eps v^a_b z^b d/dz^a
        + v^a_b z^b mu d_a + (d_c v^a_b) z^c z^b mu d/dz^a
    """
    if V.dim != f.dim:
        raise ValueError(f"dimension mismatch: {V.dim} vs {f.dim}")
    n = f.dim
    mu = 1 << n
    eps = f.epsilon
    result = SuperFunction.zero(n, eps)
    for a in range(1, n + 1):
        va = V.v.component(a)
        if not va.is_zero():
            result = result + f.coordinate_partial(a).scale(va)
        dfa = f.odd_derivative(a - 1)
        for b in range(1, n + 1):
            zb = 1 << (b - 1)
            dv = V.v.component(a).partial(b)
            vab = V.vt.entry(a, b)
            if not dfa.is_zero():
                coeff = dv - eps * vab
                if not coeff.is_zero():
                    blade = SuperFunction(n, eps, {zb: coeff})
                    result = result + blade.mul(dfa)
                for c in range(1, n + 1):
                    dvt = vab.partial(c)
                    if dvt.is_zero():
                        continue
                    zc = 1 << (c - 1)
                    pre = blade_mul(zc, zb)
                    if pre is None:
                        continue
                    sign, zz = pre
                    blade2 = SuperFunction(n, eps, {zz | mu: dvt if sign > 0 else -dvt})
                    result = result + blade2.mul(dfa)
            if not vab.is_zero():
                blade3 = SuperFunction(n, eps, {zb | mu: vab})
                result = result + blade3.mul(f.coordinate_partial(a))
    return result
