"""Univariate polynomials over Q(i) (exact) or C (approximate).

Coefficients are stored in ascending order. A polynomial is exact when every
coefficient is a :class:`~ramify.scalars.GaussianRational`; a single complex
coefficient makes the whole polynomial approximate.
"""
from __future__ import annotations

import math
from math import comb

import numpy as np

from .errors import RootFindingFailure
from .scalars import GaussianRational, is_exact, normalize, rationalize

#: chordal radius under which numeric roots are merged
TAU_CLUSTER = 1e-6
#: relative backward-error bound a numeric root must meet
TAU_RES = 1e-10

_EPS = np.finfo(float).eps
# relative Taylor-coefficient bound for accepting a cluster as one multiple root
_MULTIPLE_ROOT_ETA = 1e-8
_CANDIDATE_RADII = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)


class Polynomial:
    """Immutable polynomial; ``Polynomial([c0, c1, ...])`` is c0 + c1 z + ..."""

    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs=()):
        cs = [normalize(c) for c in coeffs]
        exact = all(isinstance(c, GaussianRational) for c in cs)
        if not exact:
            cs = [complex(c) for c in cs]
            if cs:
                big = max(abs(c) for c in cs)
                while cs and abs(cs[-1]) <= 4 * _EPS * big:
                    cs.pop()
        else:
            while cs and cs[-1] == 0:
                cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors ----------------------------------------------------------
    @classmethod
    def z(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def from_roots(cls, roots, lead=1) -> Polynomial:
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # basic properties ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            return GaussianRational(0)
        return self.coeffs[-1]

    def to_complex(self) -> Polynomial:
        return Polynomial([complex(c) for c in self.coeffs])

    def complex_array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def __call__(self, x):
        if not self.coeffs:
            return GaussianRational(0) if is_exact(x) else 0j
        if not (self.exact and is_exact(x)):
            x = complex(x)
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        acc = GaussianRational(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def valuation(self, tol: float = 0.0) -> int:
        """Order of vanishing at 0 (number of leading zero low-order coefficients).

        For approximate polynomials coefficients below ``tol * max|c|`` count as zero.
        """
        if not self.coeffs:
            raise ValueError("the zero polynomial has infinite valuation")
        if self.exact:
            k = 0
            while self.coeffs[k] == 0:
                k += 1
            return k
        big = max(abs(c) for c in self.coeffs)
        k = 0
        while abs(self.coeffs[k]) <= tol * big:
            k += 1
        return k

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Polynomial([])
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Polynomial([]), self
        quot = [0] * (dq + 1)
        lead = o.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lead
            quot[k] = c
            for j, b in enumerate(o.coeffs):
                rem[k + j] = rem[k + j] - c * b
        rem = rem[: len(o.coeffs) - 1]
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> Polynomial:
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def nth_derivative(self, n: int) -> Polynomial:
        p = self
        for _ in range(n):
            p = p.derivative()
        return p

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        lead = self.leading
        return Polynomial([c / lead for c in self.coeffs])

    def scale(self, c) -> Polynomial:
        return Polynomial([c * a for a in self.coeffs])

    def reversed(self, n: int) -> Polynomial:
        """z^n p(1/z) for n >= degree."""
        if n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        if not self.exact:
            cs = [complex(c) for c in cs]
        return Polynomial(cs[::-1])

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            cs = f"({c})"
            terms.append(cs if not mono else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"


def homogeneous_compose(p: Polynomial, n: int, a, b, c, d) -> Polynomial:
    """sum_k p_k (a z + b)^k (c z + d)^(n - k): p o T cleared of denominators.

    ``n`` must be at least deg p.
    """
    lin_num = Polynomial([b, a])
    lin_den = Polynomial([d, c])
    out = Polynomial([])
    for k, pk in enumerate(p.coeffs):
        out = out + (lin_num**k) * (lin_den ** (n - k)) * pk
    return out


# exact algorithms ---------------------------------------------------------
def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic GCD over Q(i). Both inputs must be exact."""
    if not (p.exact and q.exact):
        raise TypeError("exact gcd requires exact polynomials")
    while not q.is_zero():
        p, q = q, p % q
    if p.is_zero():
        return p
    return p.monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: [(g_k, k)] with p = lead * prod g_k^k, g_k squarefree, coprime."""
    if not p.exact:
        raise TypeError("square-free decomposition requires an exact polynomial")
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = gcd(b, d)
        b = b // g
        c = d // g
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g, k))
        k += 1
    return out


# numeric root finding ------------------------------------------------------
def _taylor_scale(cs: np.ndarray, z: complex, j: int) -> float:
    """Backward-error scale of the j-th Taylor coefficient at z."""
    az = abs(z)
    return sum(abs(cs[i]) * comb(i, j) * az ** (i - j) for i in range(j, len(cs)))


def _taylor_coeff(cs: np.ndarray, z: complex, j: int) -> complex:
    acc = 0j
    for i in range(len(cs) - 1, j - 1, -1):
        acc = acc * z + cs[i] * comb(i, j)
    return acc


def _horner(cs, z):
    acc = 0j
    for c in reversed(cs):
        acc = acc * z + c
    return acc


def _newton(cs: np.ndarray, z: complex, iters: int = 30) -> complex:
    dcs = np.array([k * c for k, c in enumerate(cs)][1:], dtype=complex)
    for _ in range(iters):
        fz = _horner(cs, z)
        dfz = _horner(dcs, z)
        if dfz == 0:
            break
        step = fz / dfz
        z_new = z - step
        if not np.isfinite(z_new):
            break
        z = z_new
        if abs(step) <= 4 * _EPS * max(1.0, abs(z)):
            break
    return z


def _is_multiple_root(cs: np.ndarray, z: complex, k: int) -> bool:
    for j in range(k):
        scale = _taylor_scale(cs, z, j)
        if scale == 0:
            continue
        if abs(_taylor_coeff(cs, z, j)) > _MULTIPLE_ROOT_ETA * scale:
            return False
    return True


def _linkage_groups(zs: list[complex], radius: float) -> list[list[int]]:
    n = len(zs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            r = radius * max(1.0, abs(zs[i]), abs(zs[j]))
            if abs(zs[i] - zs[j]) <= r:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _resolve_cluster(cs, zs, level) -> list[tuple[complex, int]]:
    k = len(zs)
    if k == 1:
        return [(_newton(cs, zs[0]), 1)]
    centre = complex(np.mean(zs))
    if _is_multiple_root(cs, centre, k):
        # a k-fold root of p is a simple root of p^(k-1)
        dk = cs.copy()
        for _ in range(k - 1):
            dk = np.array([i * c for i, c in enumerate(dk)][1:], dtype=complex)
        refined = _newton(dk, centre)
        if abs(refined - centre) <= 1e-3 * max(1.0, abs(centre)) and _is_multiple_root(cs, refined, k):
            centre = refined
        return [(centre, k)]
    if level + 1 >= len(_CANDIDATE_RADII):
        return [(_newton(cs, z), 1) for z in zs]
    out = []
    for g in _linkage_groups(zs, _CANDIDATE_RADII[level + 1]):
        out.extend(_resolve_cluster(cs, [zs[i] for i in g], level + 1))
    return out


def _chordal(a: complex, b: complex) -> float:
    return 2.0 * abs(a - b) / math.hypot(1.0, abs(a)) / math.hypot(1.0, abs(b))


def _merge_close(roots: list[tuple[complex, int]], tol: float) -> list[tuple[complex, int]]:
    merged: list[list] = []
    for z, m in roots:
        for item in merged:
            if _chordal(item[0], z) <= tol:
                tot = item[1] + m
                item[0] = (item[0] * item[1] + z * m) / tot
                item[1] = tot
                break
        else:
            merged.append([z, m])
    return [(z, m) for z, m in merged]


def numeric_roots(p: Polynomial, tau_cluster: float = TAU_CLUSTER, tau_res: float = TAU_RES):
    """Roots of ``p`` in C with multiplicities, as [(complex, int)].

    Companion-matrix eigenvalues are grouped into candidate clusters; a cluster
    of size k is accepted as one k-fold root when its centroid annihilates the
    first k Taylor coefficients (relative to their backward-error scale), and is
    split at a finer radius otherwise. Roots closer than ``tau_cluster`` are
    merged at the end. Every root must meet the relative residual ``tau_res``.
    """
    if p.degree < 1:
        return []
    cs = p.complex_array()
    raw = np.roots(cs[::-1])
    if not np.all(np.isfinite(raw)):
        raise RootFindingFailure("companion eigenvalues are not finite")
    zs = [complex(z) for z in raw]
    roots = []
    for g in _linkage_groups(zs, _CANDIDATE_RADII[0]):
        roots.extend(_resolve_cluster(cs, [zs[i] for i in g], 0))
    roots = _merge_close(roots, tau_cluster)
    for z, m in roots:
        # relative to the coefficient norm, so noise in near-zero coefficients
        # does not make a root at the origin look unverified
        scale = _taylor_scale(cs, max(1.0, abs(z)), 0)
        if abs(_horner(cs, z)) > tau_res * scale:
            raise RootFindingFailure(f"root {z} has relative residual above {tau_res}")
    if sum(m for _, m in roots) != p.degree:
        raise RootFindingFailure("root multiplicities do not add up to the degree")
    roots = [(complex(z), m) for z, m in roots]
    return sorted(roots, key=lambda r: (round(r[0].real, 9), round(r[0].imag, 9)))


def _exact_or_certified(g: Polynomial, z: complex, tau_res: float):
    """Return an exact root of squarefree ``g`` near z when one exists, else z.

    The numeric fallback is certified by the inclusion disk of radius
    deg(g) * |g(z) / g'(z)|, which always contains a root of g.
    """
    cs = g.complex_array()
    z = _newton(cs, z)
    for denom in (1, 10**2, 10**4, 10**6):
        cand = rationalize(z, denom)
        if g(cand) == 0:
            return cand
    dcs = np.array([k * c for k, c in enumerate(cs)][1:], dtype=complex)
    dz = _horner(dcs, z)
    radius = math.inf if dz == 0 else g.degree * abs(_horner(cs, z)) / abs(dz)
    if radius > tau_res * max(1.0, abs(z)):
        raise RootFindingFailure(f"could not certify root near {z} (radius {radius:.3g})")
    return z


def roots(p: Polynomial, tau_cluster: float = TAU_CLUSTER, tau_res: float = TAU_RES):
    """Roots with multiplicities. Exact input yields exact multiplicities and,
    where the root lies in Q(i), exact root values."""
    if not p.exact:
        return numeric_roots(p, tau_cluster, tau_res)
    out = []
    for g, k in squarefree_decomposition(p):
        if g.degree == 1:
            out.append((-g.coeffs[0] / g.coeffs[1], k))
            continue
        raw = np.roots(g.complex_array()[::-1])
        for z in raw:
            root = _exact_or_certified(g, complex(z), tau_res)
            out.append((root if isinstance(root, GaussianRational) else complex(root), k))
    return out
