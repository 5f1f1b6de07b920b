"""Exact finite transforms between individual-particle and CM x relative states.

Every planar oscillator state is tracked internally by its chiral quanta
(n_plus, n_minus), with n = min(n_plus, n_minus) and m = n_plus - n_minus.
The center-of-mass and relative ladder operators are, per chirality and per
vertical mode, A = (a1 + a2)/sqrt(2) and B = (a1 - a2)/sqrt(2); a CM x relative
basis state is a normalized monomial in the A/B raising operators whose
multinomial expansion gives the finite, orthogonal shell transform in either
direction.

Phase convention: the ladder monomial (a+^dag)^p (a-^dag)^q |0> equals
(-1)^min(p,q) times the Laguerre-normalized Fock-Darwin function (positive at
small radius), so amplitudes returned here carry a compensating factor
(-1)^(n1 + n2 + n_cm + n_rel).  On the ground radial shell this reproduces the
closed-form binomial coefficients of ``a_coeff`` exactly, signs included.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple


class Orbital(NamedTuple):
    """One oscillator coordinate's labels; nz is None in the planar model."""

    n: int
    m: int
    nz: int | None = None

    @property
    def quanta(self) -> int:
        return 2 * self.n + abs(self.m) + (self.nz or 0)

    @property
    def parity(self) -> int:
        return -1 if (abs(self.m) + (self.nz or 0)) % 2 else 1


class ProductState(NamedTuple):
    """Ordered individual-particle product: first orbital times second orbital."""

    a: Orbital
    b: Orbital


class CmRelState(NamedTuple):
    cm: Orbital
    rel: Orbital


CoeffMap = dict


def coeff_dot(x: CoeffMap, y: CoeffMap) -> float:
    if len(y) < len(x):
        x, y = y, x
    return sum(v * y[k] for k, v in x.items() if k in y)


def coeff_norm_sq(x: CoeffMap) -> float:
    return sum(v * v for v in x.values())


def a_coeff(m_cm: int, m: int, j: int, k: int) -> float:
    """Ground-shell transform coefficient for m_cm, m >= 0.

    (-1)^k C(m_cm, j) C(m, k) sqrt[(M-j-k)! (j+k)! / (2^M m_cm! m!)] with
    M = m_cm + m; the amplitude of Phi_{0,M-j-k} Phi_{0,j+k} in the expansion
    of the product of CM and relative ground-shell states.
    """
    if m_cm < 0 or m < 0:
        raise ValueError("a_coeff requires m_cm, m >= 0")
    if not (0 <= j <= m_cm and 0 <= k <= m):
        raise ValueError(f"indices out of range: j={j} (0..{m_cm}), k={k} (0..{m})")
    big_m = m_cm + m
    sign = -1.0 if k % 2 else 1.0
    return (
        sign
        * math.comb(m_cm, j)
        * math.comb(m, k)
        * math.sqrt(
            math.factorial(big_m - j - k)
            * math.factorial(j + k)
            / (2.0**big_m * math.factorial(m_cm) * math.factorial(m))
        )
    )


@lru_cache(maxsize=None)
def _split_pair(p: int, q: int) -> dict[tuple[int, int], float]:
    """Expansion of (A^dag)^p (B^dag)^q |0> over occupations of a1/a2 modes.

    Also the expansion of (a1^dag)^p (a2^dag)^q |0> over A/B occupations: the
    map is its own inverse because both operator pairs are related by the same
    orthogonal combination with the minus sign on the second operator.
    """
    total = p + q
    base = 1.0 / math.sqrt(2.0**total * math.factorial(p) * math.factorial(q))
    out: dict[tuple[int, int], float] = {}
    for second in range(total + 1):
        first = total - second
        acc = 0
        for k in range(max(0, second - p), min(q, second) + 1):
            term = math.comb(p, second - k) * math.comb(q, k)
            acc += -term if k % 2 else term
        if acc:
            amp = base * math.sqrt(math.factorial(first) * math.factorial(second)) * acc
            out[(first, second)] = amp
    return out


@lru_cache(maxsize=None)
def _split_pair_exact(p: int, q: int) -> dict[tuple[int, int], tuple[int, Fraction]]:
    """Exact companion of ``_split_pair``: (sign, amplitude^2) as Fractions."""
    total = p + q
    out: dict[tuple[int, int], tuple[int, Fraction]] = {}
    for second in range(total + 1):
        first = total - second
        acc = 0
        for k in range(max(0, second - p), min(q, second) + 1):
            term = math.comb(p, second - k) * math.comb(q, k)
            acc += -term if k % 2 else term
        if acc:
            amp_sq = Fraction(
                math.factorial(first) * math.factorial(second) * acc * acc,
                2**total * math.factorial(p) * math.factorial(q),
            )
            out[(first, second)] = (1 if acc > 0 else -1, amp_sq)
    return out


def _chiral(n: int, m: int) -> tuple[int, int]:
    """(n_plus, n_minus) for a planar mode; l_z = n_plus - n_minus."""
    return n + max(m, 0), n + max(-m, 0)


def _orbital(n_plus: int, n_minus: int, nz: int | None) -> Orbital:
    return Orbital(min(n_plus, n_minus), n_plus - n_minus, nz)


def _transform(first: Orbital, second: Orbital, make_key) -> CoeffMap:
    """Shared engine for both transform directions.

    Expands the pair (first, second) of one representation over occupation
    pairs of the other; ``make_key`` shapes the output keys.
    """
    is_3d = first.nz is not None
    if is_3d != (second.nz is not None):
        raise ValueError("both orbitals must carry nz, or neither")
    plus = _split_pair(*(x[0] for x in map(_chiral_pair, (first, second))))
    minus = _split_pair(*(x[1] for x in map(_chiral_pair, (first, second))))
    zed = _split_pair(first.nz, second.nz) if is_3d else {(None, None): 1.0}

    sign_in = -1.0 if (first.n + second.n) % 2 else 1.0
    out: CoeffMap = {}
    for (pp1, pp2), amp_p in plus.items():
        for (pm1, pm2), amp_m in minus.items():
            for (pz1, pz2), amp_z in zed.items():
                one = _orbital(pp1, pm1, pz1)
                two = _orbital(pp2, pm2, pz2)
                amp = amp_p * amp_m * amp_z * sign_in
                if (one.n + two.n) % 2:
                    amp = -amp
                out[make_key(one, two)] = amp
    return out


def _chiral_pair(orb: Orbital) -> tuple[int, int]:
    return _chiral(orb.n, orb.m)


def cm_to_ip(cm: Orbital, rel: Orbital) -> CoeffMap:
    """Expand a CM x relative basis state over ordered individual-particle products.

    Finite and orthogonal: total quanta and total m are conserved entrywise,
    and the squared amplitudes sum to one.
    """
    return _transform(cm, rel, lambda one, two: ProductState(one, two))


def ip_to_cm(a: Orbital, b: Orbital) -> CoeffMap:
    """Expand an ordered individual-particle product over CM x relative states."""
    return _transform(a, b, lambda cm, rel: CmRelState(cm, rel))


def symmetrize(a: Orbital, b: Orbital, sign: int) -> CoeffMap:
    """(Anti)symmetrized product as a map over ordered products.

    Returns an empty map for the antisymmetric combination of identical
    orbitals; for identical orbitals the symmetric combination collapses to
    the plain product with amplitude one.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if a == b:
        return {} if sign < 0 else {ProductState(a, b): 1.0}
    amp = 1.0 / math.sqrt(2.0)
    return {ProductState(a, b): amp, ProductState(b, a): sign * amp}


def product_exchange(cmap: CoeffMap) -> CoeffMap:
    """Swap the two particles in a map over ordered products."""
    return {ProductState(key.b, key.a): amp for key, amp in cmap.items()}
