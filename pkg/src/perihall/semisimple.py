"""A semisimple periodic category for any odd period.

One simple object, no extensions: objects are t-tuples of
multiplicities, morphisms are tuples of linear maps between the layers,
and the cone of a map is read off from ranks. Everything the Hall
engine asks an oracle is a closed-form count here, which makes this
both the fastest backend and an independent check against the
complex-based one (the point quiver at t = 3 must agree with it
constant for constant).
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

__all__ = ["gl_order", "rank_count", "SemisimplePeriodic"]

SsKey = Tuple[int, ...]


def gl_order(m: int, q: int) -> int:
    """|GL_m(F_q)|."""
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out


def gauss_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def rank_count(a: int, b: int, r: int, q: int) -> int:
    """Number of a-by-b matrices over F_q of rank r."""
    if r < 0 or r > min(a, b):
        return 0
    out = gauss_binomial(a, r, q)
    for i in range(r):
        out *= q**b - q**i
    return out


class SemisimplePeriodic:
    """Category oracle with one simple object and period t."""

    def __init__(self, t: int, q: int):
        if t < 3 or t % 2 == 0:
            raise ValueError("period must be odd and at least 3")
        if q < 2:
            raise ValueError("q must be at least 2")
        self.t = t
        self._q = q
        self._fiber_cache: Dict[Tuple[SsKey, SsKey], Dict[SsKey, int]] = {}

    @property
    def q(self) -> int:
        return self._q

    @property
    def zero_key(self) -> SsKey:
        return (0,) * self.t

    def object(self, mults: Sequence[int]) -> SsKey:
        key = tuple(int(m) for m in mults)
        if len(key) != self.t or any(m < 0 for m in key):
            raise ValueError("need one multiplicity per shift")
        return key

    def shift_key(self, key: SsKey, n: int = 1) -> SsKey:
        return tuple(key[(s - n) % self.t] for s in range(self.t))

    def direct_sum_key(self, *keys: SsKey) -> SsKey:
        return tuple(sum(k[s] for k in keys) for s in range(self.t))

    def components(self, key: SsKey) -> Tuple[SsKey, ...]:
        out = []
        for s in range(self.t):
            layer = [0] * self.t
            layer[0] = key[s]
            out.append(tuple(layer))
        return tuple(out)

    def total_dim(self, key: SsKey) -> int:
        return sum(key)

    def hom_dim(self, x: SsKey, y: SsKey) -> int:
        return sum(a * b for a, b in zip(x, y))

    def aut_order(self, key: SsKey) -> int:
        out = 1
        for m in key:
            out *= gl_order(m, self._q)
        return out

    def fiber_counts(self, x: SsKey, m: SsKey, cap: Optional[int] = None) -> Dict[SsKey, int]:
        """Morphism counts x -> m by cone class, from rank profiles.

        A morphism is a tuple of matrices; its cone keeps the cokernel
        of each layer in place and pushes the kernel up one shift.
        """
        k = (x, m)
        hit = self._fiber_cache.get(k)
        if hit is None:
            hit = {}
            for profile in self._rank_profiles(x, m):
                count = 1
                for s in range(self.t):
                    count *= rank_count(x[s], m[s], profile[s], self._q)
                cone = tuple(
                    (m[s] - profile[s]) + (x[(s - 1) % self.t] - profile[(s - 1) % self.t])
                    for s in range(self.t)
                )
                hit[cone] = hit.get(cone, 0) + count
            self._fiber_cache[k] = hit
        return hit

    def _rank_profiles(self, x: SsKey, m: SsKey) -> Iterator[SsKey]:
        ranges = [range(min(x[s], m[s]) + 1) for s in range(self.t)]
        def rec(s: int, acc: List[int]) -> Iterator[SsKey]:
            if s == self.t:
                yield tuple(acc)
                return
            for r in ranges[s]:
                acc.append(r)
                yield from rec(s + 1, acc)
                acc.pop()
        yield from rec(0, [])

    def enumerate_objects(self, bound: int) -> List[SsKey]:
        """All objects with each multiplicity at most bound, graded."""
        out: List[SsKey] = []
        def rec(s: int, acc: List[int]) -> None:
            if s == self.t:
                out.append(tuple(acc))
                return
            for m in range(bound + 1):
                acc.append(m)
                rec(s + 1, acc)
                acc.pop()
        rec(0, [])
        out.sort(key=lambda k: (sum(k), k))
        return out
