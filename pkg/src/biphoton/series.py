"""Dense truncated multivariate power series.

Coefficients live in an array indexed by the exponent of each variable.
Terms whose exponent in any variable exceeds its cap, or whose total
degree exceeds ``order``, are dropped after every operation.  Since
multiplication never lowers degrees, truncation commutes with the
arithmetic and extracted coefficients are exact.
"""

import math

import numpy as np

from .errors import CapacityError


class TruncatedSeries:
    def __init__(self, coeffs, order):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self.order = int(order)
        self._truncate()

    @classmethod
    def zeros(cls, caps, order):
        return cls(np.zeros(tuple(c + 1 for c in caps), complex), order)

    @classmethod
    def constant(cls, value, caps, order):
        s = cls.zeros(caps, order)
        s.coeffs[(0,) * len(caps)] = value
        return s

    @classmethod
    def quadratic_form(cls, B, caps, order):
        """The series of sum_ij B_ij mu_i mu_j."""
        B = np.asarray(B, dtype=complex)
        n = B.shape[0]
        s = cls.zeros(caps, order)
        for i in range(n):
            for j in range(i, n):
                e = [0] * n
                e[i] += 1
                e[j] += 1
                if all(ek <= ck for ek, ck in zip(e, caps)):
                    s.coeffs[tuple(e)] += B[i, j] if i == j else B[i, j] + B[j, i]
        s._truncate()
        return s

    @property
    def caps(self):
        return tuple(d - 1 for d in self.coeffs.shape)

    def _degree_grid(self):
        return sum(np.ix_(*(np.arange(d) for d in self.coeffs.shape)))

    def _truncate(self):
        self.coeffs[self._degree_grid() > self.order] = 0

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.coeffs + other.coeffs, min(self.order, other.order))
        out = TruncatedSeries(self.coeffs.copy(), self.order)
        out.coeffs[(0,) * out.coeffs.ndim] += other
        return out

    def scale(self, factor):
        return TruncatedSeries(self.coeffs * factor, self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        # iterate over the sparser operand, shift-and-add the other
        a, b = (self, other) if np.count_nonzero(self.coeffs) <= np.count_nonzero(other.coeffs) else (other, self)
        out = np.zeros_like(b.coeffs)
        shape = out.shape
        for idx in zip(*np.nonzero(a.coeffs)):
            if any(i >= d for i, d in zip(idx, shape)):
                continue
            dst = tuple(slice(i, None) for i in idx)
            src = tuple(slice(0, d - i) for i, d in zip(idx, shape))
            out[dst] += a.coeffs[idx] * b.coeffs[src]
        return TruncatedSeries(out, min(self.order, other.order))

    def exp(self):
        """exp of a series with zero constant term."""
        zero = (0,) * self.coeffs.ndim
        if self.coeffs[zero] != 0:
            raise ValueError("exp requires a vanishing constant term")
        result = TruncatedSeries.constant(1.0, self.caps, self.order)
        term = TruncatedSeries.constant(1.0, self.caps, self.order)
        for n in range(1, self.order + 1):
            term = (term * self).scale(1.0 / n)
            if not np.any(term.coeffs):
                break
            result = result + term
        return result

    def coefficient(self, exponents):
        return self.coeffs[tuple(exponents)]

    def derivative_at_zero(self, exponents):
        """Mixed partial derivative at the origin."""
        if any(e > c for e, c in zip(exponents, self.caps)) or sum(exponents) > self.order:
            raise CapacityError(f"degree {tuple(exponents)} exceeds series capacity")
        return self.coefficient(exponents) * math.prod(math.factorial(e) for e in exponents)


def mixed_derivative_of_exp_quadratic(B, q, order=None):
    """d^q/dmu_1^q ... d^q/dmu_n^q exp(mu^T B mu) at mu = 0."""
    B = np.asarray(B, dtype=complex)
    n = B.shape[0]
    needed = n * q
    order = needed if order is None else order
    if order < needed:
        raise CapacityError(f"series order {order} below required degree {needed}")
    caps = (q,) * n
    series = TruncatedSeries.quadratic_form(B, caps, order).exp()
    return series.derivative_at_zero((q,) * n)
