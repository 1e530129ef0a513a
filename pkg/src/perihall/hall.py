"""Hall algebra of a periodic triangulated category, exactly.

Structure constants live in Q adjoined a square root of q. Each one is
a morphism count divided by an automorphism order, times a half-power
of q coming from a ratio of alternating hom-size products. Two dual
counting recipes compute the same constant, one enumerating morphisms
out of the first factor, the other morphisms into the second; the
engine picks whichever hom space is smaller and a verification harness
compares the two.

The engine is generic over the category: anything exposing the oracle
surface (period, field size, object keys, shifts, direct sums, hom
dimensions, automorphism orders, and morphism counts fibered by cone
class) can be multiplied. The 3-periodic quiver category is the main
instance; tests also run a 5-periodic semisimple one.

A deliberately broken mode is available for validating the test
harnesses themselves: the first interesting structure constant gets
shifted by one, on one counting side only, and every downstream
identity is expected to notice.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Protocol, Sequence, Tuple

from .sqrtq import HallValue

__all__ = ["CategoryOracle", "HallVector", "PBWExpression", "HallEngine"]

Key = Hashable


class CategoryOracle(Protocol):
    """What a category must answer to have a Hall algebra computed."""

    t: int

    @property
    def q(self) -> int: ...

    @property
    def zero_key(self) -> Key: ...

    def shift_key(self, key: Key, n: int = 1) -> Key: ...

    def direct_sum_key(self, *keys: Key) -> Key: ...

    def components(self, key: Key) -> Sequence[Key]:
        """Per-shift module layers, each as a key concentrated at shift 0."""
        ...

    def hom_dim(self, x: Key, y: Key) -> int: ...

    def aut_order(self, key: Key) -> int: ...

    def fiber_counts(self, x: Key, m: Key, cap: Optional[int] = None) -> Dict[Key, int]:
        """Morphism counts x -> m grouped by the class of the cone."""
        ...


class HallVector:
    """A finite linear combination of object classes."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: Optional[Dict[Key, HallValue]] = None):
        self.q = q
        self.coeffs: Dict[Key, HallValue] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not v.is_zero():
                    self.coeffs[k] = v

    def coeff(self, key: Key) -> HallValue:
        return self.coeffs.get(key, HallValue.zero(self.q))

    @property
    def support(self) -> Tuple[Key, ...]:
        return tuple(sorted(self.coeffs.keys()))

    def items(self) -> List[Tuple[Key, HallValue]]:
        return sorted(self.coeffs.items(), key=lambda kv: kv[0])

    def add(self, other: "HallVector") -> "HallVector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return HallVector(self.q, out)

    def sub(self, other: "HallVector") -> "HallVector":
        return self.add(other.scale(HallValue.of(-1, self.q)))

    def scale(self, c: HallValue) -> "HallVector":
        return HallVector(self.q, {k: v * c for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HallVector) and other.coeffs == self.coeffs

    def __hash__(self):
        raise TypeError("HallVector is mutable by construction, do not hash")

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*u[{k}]" for k, v in self.items())


class PBWExpression:
    """A combination of ordered products of pure-shift generators.

    Each term is a coefficient and a tuple of module-layer keys, highest
    shift first, ending with the shift-0 layer; evaluating a term
    multiplies the corresponding shifted generators in that order.
    """

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: Optional[Dict[Tuple[Key, ...], HallValue]] = None):
        self.q = q
        self.terms: Dict[Tuple[Key, ...], HallValue] = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    self.terms[k] = v

    def add_term(self, factors: Tuple[Key, ...], coeff: HallValue) -> None:
        w = self.terms.get(factors)
        total = coeff if w is None else w + coeff
        if total.is_zero():
            self.terms.pop(factors, None)
        else:
            self.terms[factors] = total

    def combine(self, other: "PBWExpression", scalar: HallValue) -> None:
        for factors, coeff in other.terms.items():
            self.add_term(factors, coeff * scalar)

    def items(self) -> List[Tuple[Tuple[Key, ...], HallValue]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def evaluate(self, engine: "HallEngine") -> HallVector:
        total = HallVector(self.q)
        for factors, coeff in self.items():
            acc = engine.unit()
            for s, layer in zip(range(engine.t - 1, -1, -1), factors):
                acc = engine.multiply_vectors(acc, engine.vector(engine.oracle.shift_key(layer, s)))
            total = total.add(acc.scale(coeff))
        return total

    def __repr__(self) -> str:
        return " + ".join(f"({v})*{list(k)}" for k, v in self.items()) or "0"


class HallEngine:
    """Exact structure constants and products over a category oracle."""

    def __init__(self, oracle: CategoryOracle, fault_inject: bool = False):
        self.oracle = oracle
        self.t = oracle.t
        self.q = oracle.q
        if self.t % 2 == 0 or self.t < 3:
            raise ValueError("the period must be an odd number at least 3")
        self.fault_inject = fault_inject
        self._fault_target: Optional[Tuple[Key, Key, Key, str]] = None
        self._brace_cache: Dict[Tuple[Key, Key], int] = {}
        self._hall_cache: Dict[Tuple[Key, Key, Key, str], HallValue] = {}
        self._mult_cache: Dict[Tuple[Key, Key], HallVector] = {}
        self._pbw_cache: Dict[Key, PBWExpression] = {}
        self._pbw_active: set = set()

    # -- scalars ------------------------------------------------------

    def brace_exponent(self, x: Key, y: Key) -> int:
        """e with q**e equal to the alternating product of the hom sizes
        |Hom(x[i], y)| for i from 1 to the period, signs starting at -1."""
        k = (x, y)
        hit = self._brace_cache.get(k)
        if hit is None:
            e = 0
            for i in range(1, self.t + 1):
                h = self.oracle.hom_dim(self.oracle.shift_key(x, i), y)
                e += h if i % 2 == 0 else -h
            self._brace_cache[k] = hit = e
        return hit

    def hall_number(self, x: Key, y: Key, l: Key) -> HallValue:
        """The structure constant of u_l in u_x * u_y."""
        side = self._preferred_side(x, y, l)
        return self.hall_number_via(x, y, l, side)

    def _preferred_side(self, x: Key, y: Key, l: Key) -> str:
        return "from_x" if self.oracle.hom_dim(x, l) <= self.oracle.hom_dim(l, y) else "to_y"

    def hall_number_via(self, x: Key, y: Key, l: Key, side: str) -> HallValue:
        """One counting recipe by name: "from_x" fibers the morphisms
        x -> l over cone class y, "to_y" fibers l -> y over the cone
        class x shifted once."""
        ck = (x, y, l, side)
        hit = self._hall_cache.get(ck)
        if hit is None:
            if side == "from_x":
                count = self.oracle.fiber_counts(x, l).get(y, 0)
                aut = self.oracle.aut_order(x)
                e = self.brace_exponent(x, l) - self.brace_exponent(x, x)
            elif side == "to_y":
                count = self.oracle.fiber_counts(l, y).get(self.oracle.shift_key(x, 1), 0)
                aut = self.oracle.aut_order(y)
                e = self.brace_exponent(l, y) - self.brace_exponent(y, y)
            else:
                raise ValueError(f"unknown side {side!r}")
            value = HallValue.sqrt_q_power(e, self.q) * HallValue(Fraction(count, aut), Fraction(0), self.q)
            if not value.is_zero() and value.monomial_exponent() is None:
                raise AssertionError(f"structure constant {value} is not a monomial in sqrt(q)")
            self._hall_cache[ck] = hit = value
        return self._maybe_fault(x, y, l, side, hit)

    def hall_number_checked(self, x: Key, y: Key, l: Key) -> HallValue:
        """The structure constant with both counting recipes evaluated
        and compared; raises if they ever disagree."""
        a = self.hall_number_via(x, y, l, "from_x")
        b = self.hall_number_via(x, y, l, "to_y")
        if a != b:
            raise AssertionError(f"dual counts disagree on {(x, y, l)}: {a} vs {b}")
        return a

    def _maybe_fault(self, x: Key, y: Key, l: Key, side: str, value: HallValue) -> HallValue:
        if not self.fault_inject:
            return value
        zero = self.oracle.zero_key
        if self._fault_target is None:
            if (
                side == self._preferred_side(x, y, l)
                and x != zero
                and y != zero
                and not value.is_zero()
                and value != HallValue.one(self.q)
            ):
                self._fault_target = (x, y, l, side)
        if self._fault_target == (x, y, l, side):
            return value + HallValue.one(self.q)
        return value

    # -- products -----------------------------------------------------

    def vector(self, key: Key) -> HallVector:
        return HallVector(self.q, {key: HallValue.one(self.q)})

    def unit(self) -> HallVector:
        return self.vector(self.oracle.zero_key)

    def multiply(self, x: Key, y: Key) -> HallVector:
        """u_x * u_y as a combination of classes.

        The support is exactly the set of cones of morphisms from y
        shifted back once into x; the zero morphism contributes the
        direct sum, so the product of nonzero classes is never zero.
        """
        k = (x, y)
        hit = None if self.fault_inject else self._mult_cache.get(k)
        if hit is None:
            support = self.oracle.fiber_counts(self.oracle.shift_key(y, -1), x)
            coeffs = {}
            for l in support:
                v = self.hall_number(x, y, l)
                if not v.is_zero():
                    coeffs[l] = v
            hit = HallVector(self.q, coeffs)
            if not self.fault_inject:
                self._mult_cache[k] = hit
        return hit

    def multiply_vectors(self, a: HallVector, b: HallVector) -> HallVector:
        out = HallVector(self.q)
        for kx, vx in a.items():
            for ky, vy in b.items():
                out = out.add(self.multiply(kx, ky).scale(vx * vy))
        return out

    # -- straightening into ordered products --------------------------

    def pbw_expand(self, key: Key) -> PBWExpression:
        """Write u_key as a combination of ordered products of
        pure-shift layer generators, highest shift first.

        Products of the shifted layers reproduce u_key up to correction
        terms supported on strictly smaller objects (kernel and
        cokernel of a module map eat into the shift-0 and top layers),
        so the expansion recurses and terminates.
        """
        hit = self._pbw_cache.get(key)
        if hit is not None:
            return hit
        if key in self._pbw_active:
            raise RuntimeError(f"straightening cycled on {key!r}")
        self._pbw_active.add(key)
        try:
            comps = self.oracle.components(key)
            factors = tuple(comps[s] for s in range(self.t - 1, -1, -1))
            prod = self.unit()
            for s in range(self.t - 1, -1, -1):
                prod = self.multiply_vectors(prod, self.vector(self.oracle.shift_key(comps[s], s)))
            lead = prod.coeff(key)
            if lead.is_zero():
                raise RuntimeError(f"straightening lost its leading term on {key!r}")
            inv = HallValue.one(self.q) / lead
            expr = PBWExpression(self.q)
            expr.add_term(factors, inv)
            for other, coeff in prod.items():
                if other == key:
                    continue
                expr.combine(self.pbw_expand(other), -(coeff * inv))
            self._pbw_cache[key] = expr
            return expr
        finally:
            self._pbw_active.discard(key)
