"""Seeded random generators for identity-suite trials.

Coefficients come from a small rational set, polynomials have total degree at
most two and ~50% sparsity; this keeps exact arithmetic fast while still
exercising every sign path.  Every generator is a pure function of the seed,
which is what makes suite reports reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exterior import OrdinaryForm, Tensor11, VectorField
from .gform import GenForm
from .gvector import GenVectorField
from .ring import Polynomial
from .superspace import SuperFunction

COEFF_POOL = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
              Fraction(1, 2), Fraction(-1, 2)]
EPSILON_POOL = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2),
                Fraction(-2), Fraction(1, 2)]


class FormRandom:
    """Random algebra elements over a fixed dimension and epsilon."""

    def __init__(self, seed: int, dim: int, epsilon: Fraction):
        self.rng = random.Random(seed)
        self.dim = dim
        self.epsilon = Fraction(epsilon)
        self._monomials = [e for e in itertools.product(range(3), repeat=dim)
                           if sum(e) <= 2]

    def rational(self, allow_zero: bool = True) -> Fraction:
        if allow_zero and self.rng.random() < 0.25:
            return Fraction(0)
        return self.rng.choice(COEFF_POOL)

    def poly(self, allow_zero: bool = True) -> Polynomial:
        terms = {}
        for exps in self._monomials:
            if self.rng.random() < 0.5:
                continue
            terms[exps] = self.rng.choice(COEFF_POOL)
        if not terms and not allow_zero:
            terms[(0,) * self.dim] = self.rng.choice(COEFF_POOL)
        return Polynomial(self.dim, terms)

    def form(self, degree: int) -> OrdinaryForm:
        if degree < 0 or degree > self.dim:
            return OrdinaryForm.zero(self.dim, degree)
        comps = {}
        for idxs in itertools.combinations(range(1, self.dim + 1), degree):
            if self.rng.random() < 0.4:
                continue
            p = self.poly()
            if not p.is_zero():
                comps[idxs] = p
        return OrdinaryForm(self.dim, degree, comps)

    def genform(self, degree: int | None = None) -> GenForm:
        if degree is None:
            degree = self.rng.randint(-1, self.dim)
        return GenForm(self.dim, self.epsilon, degree,
                       self.form(degree), self.form(degree + 1))

    def vector_field(self) -> VectorField:
        return VectorField([self.poly() for _ in range(self.dim)])

    def tensor(self) -> Tensor11:
        return Tensor11([[self.poly() for _ in range(self.dim)]
                         for _ in range(self.dim)])

    def gen_vector_field(self) -> GenVectorField:
        return GenVectorField(self.dim, self.epsilon, self.vector_field(), self.tensor())

    def superfunction(self) -> SuperFunction:
        """Possibly inhomogeneous Grassmann polynomial."""
        terms = {}
        for mask in range(1 << (self.dim + 1)):
            if self.rng.random() < 0.7:
                continue
            p = self.poly()
            if not p.is_zero():
                terms[mask] = p
        return SuperFunction(self.dim, self.epsilon, terms)

    def unipotent(self) -> tuple[tuple[tuple[Polynomial, ...], ...],
                                 tuple[tuple[Polynomial, ...], ...]]:
        """Upper unitriangular polynomial matrix with its exact inverse."""
        n = self.dim
        one, zero = Polynomial.one(n), Polynomial.zero(n)
        g = [[one if i == j else zero for j in range(n)] for i in range(n)]
        nil = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                entry = self.poly()
                g[i][j] = g[i][j] + entry
                nil[i][j] = entry
        # Neumann series: (I + N)^-1 = I - N + N^2 - ... terminates
        inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        power = [row[:] for row in nil]
        sign = -1
        for _ in range(n - 1):
            for i in range(n):
                for j in range(n):
                    inv[i][j] = inv[i][j] + power[i][j] * sign
            nxt = [[zero] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    acc = zero
                    for k in range(n):
                        acc = acc + power[i][k] * nil[k][j]
                    nxt[i][j] = acc
            power = nxt
            sign = -sign
        return tuple(map(tuple, g)), tuple(map(tuple, inv))

    def metric_pieces(self) -> tuple[tuple[tuple[Polynomial, ...], ...],
                                     tuple[tuple[Polynomial, ...], ...]]:
        """gamma = L^T L for unipotent L: symmetric with polynomial inverse."""
        n = self.dim
        l_mat, l_inv = self.unipotent()
        zero = Polynomial.zero(n)

        def mat_mul(a, b):
            return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), zero)
                               for j in range(n)) for i in range(n))

        def transpose(a):
            return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))

        gamma = mat_mul(transpose(l_mat), l_mat)
        gamma_inv = mat_mul(l_inv, transpose(l_inv))
        return gamma, gamma_inv

    def symmetric_one_forms(self) -> tuple[tuple[OrdinaryForm, ...], ...]:
        n = self.dim
        entries = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                entry = self.form(1)
                entries[i][j] = entry
                entries[j][i] = entry
        return tuple(map(tuple, entries))

    def connection(self) -> "tuple":
        from .connection import GenConnection

        n = self.dim
        entries = [[GenForm(n, self.epsilon, 1, self.form(1), self.form(2))
                    for _ in range(n)] for _ in range(n)]
        return GenConnection.build(entries, self.epsilon)

    def torsion_free_alpha(self) -> tuple[tuple[OrdinaryForm, ...], ...]:
        """alpha^m_n = G^m_{nl} dx^l with G symmetric in (n, l)."""
        n = self.dim
        gam = {}
        for m in range(1, n + 1):
            for a in range(1, n + 1):
                for b in range(a, n + 1):
                    p = self.poly()
                    gam[(m, a, b)] = p
                    gam[(m, b, a)] = p
        rows = []
        for m in range(1, n + 1):
            row = []
            for nu in range(1, n + 1):
                comps = {(lam,): gam[(m, nu, lam)] for lam in range(1, n + 1)
                         if not gam[(m, nu, lam)].is_zero()}
                row.append(OrdinaryForm(n, 1, comps))
            rows.append(tuple(row))
        return tuple(rows)
