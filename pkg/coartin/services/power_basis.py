"""Products f^a of the indecomposable basis elements and the unitriangular solves built on them.

Coefficients live in any sympy domain: the field of a concrete algebra, or a
polynomial ring in the lambda variables for the symbolic variety equations.
All solves are forward substitutions with unit diagonal, so nothing divides.
"""
import logging
from typing import Any, Mapping, Sequence

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from coartin.core.truncpoly import TruncPoly
from coartin.services.semigroup import GammaStructure, Vector

logger = logging.getLogger(__name__)


def identity_matrix(t: int, domain: Domain) -> DomainMatrix:
    rows = [[domain.one if i == j else domain.zero for j in range(t)] for i in range(t)]
    return DomainMatrix(rows, (t, t), domain)


class PowerBasis:
    def __init__(self, structure: GammaStructure, generators: Mapping[int, TruncPoly], domain: Domain):
        self.structure = structure
        self.domain = domain
        self._generators = dict(generators)
        self._powers: dict[Vector, TruncPoly] = {}

    @property
    def m(self) -> int:
        return self.structure.m

    @property
    def members(self) -> tuple[int, ...]:
        return self.structure.gamma.members

    def generator(self, nu: int) -> TruncPoly:
        return self._generators[nu]

    def power(self, a: Vector) -> TruncPoly:
        """f^a = prod f_{nu_i}^{a_i} in F."""
        a = tuple(a)
        if a not in self._powers:
            nonzero = [i for i, k in enumerate(a) if k]
            if not nonzero:
                self._powers[a] = TruncPoly.one(self.m, self.domain)
            else:
                i = nonzero[-1]
                lower = a[:i] + (a[i] - 1,) + a[i + 1:]
                self._powers[a] = self.power(lower) * self._generators[self.structure.nu[i]]
        return self._powers[a]

    def chosen_power(self, gamma: int) -> TruncPoly:
        return self.power(self.structure.a_choice[gamma])

    def solve(self, target: TruncPoly, positions: Sequence[int]) -> tuple[dict[int, Any], TruncPoly]:
        """Writes target = sum_k c_k f^{a(k)} + remainder with the remainder vanishing on positions.

        positions must be increasing members of Gamma; returns the coefficients and the remainder.
        """
        coefficients: dict[int, Any] = {}
        remainder = target
        for k in positions:
            c = remainder.coefficient(k)
            coefficients[k] = c
            if not self.domain.is_zero(c):
                remainder = remainder - self.chosen_power(k).scale(c)
        return coefficients, remainder

    def basis_change(self) -> tuple[DomainMatrix, DomainMatrix]:
        """C (columns: Gamma-coordinates of f^{a(gamma_j)}) and its inverse sum_i (-N)^i, N = C - 1."""
        members = self.members
        t = len(members)
        rows = [
            [self.chosen_power(gj).coefficient(gi) for gj in members]
            for gi in members
        ]
        C = DomainMatrix(rows, (t, t), self.domain)
        identity = identity_matrix(t, self.domain)
        minus_n = identity - C
        inverse, term = identity, identity
        for _ in range(1, t):
            term = term * minus_n
            inverse = inverse + term
        return C, inverse

    def eta(self) -> dict[tuple[int, int], Any]:
        """eta_{gamma, gamma'} read off the inverse basis change, for gamma' in Gamma(gamma)."""
        _, inverse = self.basis_change()
        entries = inverse.to_list()
        members = self.members
        return {
            (members[j], members[i]): entries[i][j]
            for j in range(len(members))
            for i in range(j + 1, len(members))
        }

    def theta_recursive(self, gamma: int, b: Vector) -> tuple[dict[int, Any], TruncPoly]:
        """theta_{gamma, gamma'; b} by forward substitution on f^b - f^{a(gamma)}."""
        target = self.power(b) - self.chosen_power(gamma)
        return self.solve(target, self.structure.gamma.gamma_after(gamma))

    def theta_closed(self, gamma: int, b: Vector, eta: Mapping[tuple[int, int], Any]) -> dict[int, Any]:
        """theta_{gamma, gamma'; b} = eta + c_{gamma'}(f^b) + sum_delta c_delta(f^b) eta_{delta, gamma'}."""
        fb = self.power(b)
        gamma_data = self.structure.gamma
        theta = {}
        for g2 in gamma_data.gamma_after(gamma):
            value = eta[(gamma, g2)] + fb.coefficient(g2)
            for delta in gamma_data.gamma_between(gamma, g2):
                value += fb.coefficient(delta) * eta[(delta, g2)]
            theta[g2] = value
        return theta

    def product_eta(self, nu: int, gamma: int) -> tuple[dict[int, Any], TruncPoly]:
        """Coefficients of f_nu f^{a(gamma)} = f^{a(nu+gamma)} + sum_delta eta f^{a(delta)}.

        Requires nu + gamma < m, so that nu + gamma is itself in Gamma.
        """
        top = nu + gamma
        target = self._generators[nu] * self.chosen_power(gamma) - self.chosen_power(top)
        return self.solve(target, self.structure.gamma.gamma_after(top))
