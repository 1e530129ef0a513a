"""The 3-periodic category built on cycle complexes.

Objects here are finite multisets of (module class, shift) pairs; every
cycle complex normalizes to one. The context realizes objects as direct
sums of wrapped module resolutions, computes morphism spaces blockwise
between the wrapped summands, counts morphisms by the class of their
cone, and knows automorphism group orders both by direct enumeration
and through a closed formula that tests cross-check against each other.

Keys are plain sorted tuples, one (class_id, shift) entry per
indecomposable summand, so they hash and compare cheaply and the empty
tuple is the zero object.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .periodic import (
    PERIOD,
    ChainMap,
    CycleComplex,
    HomSpace,
    chain_hom_space,
    direct_sum_complexes,
    mapping_cone,
    normal_pieces,
    wrap_module,
)
from .reps import BudgetExceeded, Rep, RepContext

__all__ = ["ObjKey", "PeriodicContext", "RealizedObject", "BlockHomSpace"]

ObjKey = Tuple[Tuple[int, int], ...]


class RealizedObject:
    """An object key together with its concrete complex and the chain
    maps onto and out of each wrapped summand."""

    __slots__ = ("key", "parts", "total", "injections", "projections")

    def __init__(self, key: ObjKey, parts: Sequence[Tuple[int, int]], total: CycleComplex,
                 injections: Sequence[ChainMap], projections: Sequence[ChainMap]):
        self.key = key
        self.parts = tuple(parts)
        self.total = total
        self.injections = tuple(injections)
        self.projections = tuple(projections)


class BlockHomSpace:
    """Hom between two realized objects, assembled summand by summand.

    Morphism classes are indexed by the concatenation of the class
    coordinates of all (source part, target part) blocks; reading a
    morphism off against the blocks and reassembling it round-trips
    exactly, not just up to homotopy.
    """

    def __init__(self, pctx: "PeriodicContext", source: RealizedObject, target: RealizedObject):
        self.pctx = pctx
        self.source = source
        self.target = target
        self.blocks: List[Tuple[int, int, HomSpace]] = []
        for i, pa in enumerate(source.parts):
            for j, pb in enumerate(target.parts):
                self.blocks.append((i, j, pctx.block_space(pa, pb)))
        self._block_dims = [b[2].dim for b in self.blocks]
        self.dim = sum(self._block_dims)

    def class_of(self, f: ChainMap) -> Tuple[int, ...]:
        out: List[int] = []
        for i, j, space in self.blocks:
            comp = self.source.injections[i].then(f).then(self.target.projections[j])
            out.extend(space.class_coords(comp))
        return tuple(out)

    def rep_map(self, coords: Sequence[int]) -> ChainMap:
        f = ChainMap.zero(self.source.total, self.target.total)
        pos = 0
        for (i, j, space), d in zip(self.blocks, self._block_dims):
            chunk = coords[pos : pos + d]
            pos += d
            if any(chunk):
                block = space.rep_map(chunk)
                f = f.add(self.source.projections[i].then(block).then(self.target.injections[j]))
        return f

    def zero_class(self) -> Tuple[int, ...]:
        return tuple([0] * self.dim)

    def enumerate_classes(self, cap: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        p = self.pctx.q
        limit = cap if cap is not None else self.pctx.ctx.enum_cap
        if p**self.dim > limit:
            raise BudgetExceeded(f"{p**self.dim} morphism classes exceed cap {limit}")
        yield from itertools.product(range(p), repeat=self.dim)


class PeriodicContext:
    """Object, morphism, and counting services for one quiver and prime."""

    def __init__(self, ctx: RepContext):
        self.ctx = ctx
        self.t = PERIOD
        self._wrap_cache: Dict[Tuple[int, int], CycleComplex] = {}
        self._block_cache: Dict[Tuple[Tuple[int, int], Tuple[int, int]], HomSpace] = {}
        self._realize_cache: Dict[ObjKey, RealizedObject] = {}
        self._hom_cache: Dict[Tuple[ObjKey, ObjKey], BlockHomSpace] = {}
        self._fiber_cache: Dict[Tuple[ObjKey, ObjKey], Dict[ObjKey, int]] = {}
        self._aut_cache: Dict[ObjKey, int] = {}

    @property
    def q(self) -> int:
        return self.ctx.field.p

    @property
    def zero_key(self) -> ObjKey:
        return ()

    # -- object keys --------------------------------------------------

    def module_key(self, rep: Rep, shift: int = 0) -> ObjKey:
        """The object key of a module placed at the given shift."""
        shift %= PERIOD
        cids = [self.ctx.class_id(s) for s in self.ctx.decompose(rep).summands]
        return tuple(sorted((cid, shift) for cid in cids))

    def shift_key(self, key: ObjKey, n: int = 1) -> ObjKey:
        return tuple(sorted((cid, (s + n) % PERIOD) for cid, s in key))

    def direct_sum_key(self, *keys: ObjKey) -> ObjKey:
        merged: List[Tuple[int, int]] = []
        for k in keys:
            merged.extend(k)
        return tuple(sorted(merged))

    def part_rep(self, key: ObjKey, shift: int) -> Rep:
        """The module sitting at one shift of an object."""
        reps = [self.ctx.class_rep(cid) for cid, s in key if s == shift]
        if not reps:
            return self.ctx.zero_rep()
        return self.ctx.direct_sum(reps)[0]

    def components(self, key: ObjKey) -> Tuple[ObjKey, ObjKey, ObjKey]:
        """Split an object into its three pure-shift module layers, each
        returned as an object key concentrated at shift 0."""
        out = []
        for s in range(PERIOD):
            out.append(tuple(sorted((cid, 0) for cid, sh in key if sh == s)))
        return tuple(out)

    def total_dim(self, key: ObjKey) -> int:
        return sum(self.ctx.class_rep(cid).total_dim for cid, _ in key)

    def dvec_mod2(self, key: ObjKey) -> Tuple[int, ...]:
        nv = len(self.ctx.quiver.vertices)
        acc = [0] * nv
        for cid, _ in key:
            for i, d in enumerate(self.ctx.class_rep(cid).dims):
                acc[i] = (acc[i] + d) % 2
        return tuple(acc)

    def format_key(self, key: ObjKey) -> str:
        if not key:
            return "0"
        names = []
        for cid, s in key:
            dims = ",".join(str(d) for d in self.ctx.class_rep(cid).dims)
            name = f"c{cid}({dims})"
            if s:
                name += f"[{s}]"
            names.append(name)
        return " + ".join(names)

    def enumerate_objects(self, bound: Sequence[int]) -> List[ObjKey]:
        """All objects whose shift-s layer has dimension vector at most
        ``bound`` for each s, ordered by total dimension then key."""
        classes = [self.ctx.class_id(r) for r in self.ctx.enumerate_reps(bound)]
        keys = set()
        for triple in itertools.product(classes, repeat=PERIOD):
            parts: List[Tuple[int, int]] = []
            for s, cid in enumerate(triple):
                rep = self.ctx.class_rep(cid)
                if rep.total_dim:
                    for sub in self.ctx.decompose(rep).summands:
                        parts.append((self.ctx.class_id(sub), s))
            keys.add(tuple(sorted(parts)))
        return sorted(keys, key=lambda k: (self.total_dim(k), k))

    # -- realization and normalization --------------------------------

    def wrap_part(self, part: Tuple[int, int]) -> CycleComplex:
        hit = self._wrap_cache.get(part)
        if hit is None:
            cid, s = part
            hit = wrap_module(self.ctx, self.ctx.class_rep(cid), s)
            self._wrap_cache[part] = hit
        return hit

    def realize(self, key: ObjKey) -> RealizedObject:
        hit = self._realize_cache.get(key)
        if hit is None:
            complexes = [self.wrap_part(part) for part in key]
            total, injs, projs = direct_sum_complexes(self.ctx, complexes)
            hit = RealizedObject(key, key, total, injs, projs)
            self._realize_cache[key] = hit
        return hit

    def normalize(self, c: CycleComplex) -> ObjKey:
        pieces = normal_pieces(self.ctx, c)
        parts: List[Tuple[int, int]] = []
        for s, piece in enumerate(pieces):
            if piece.total_dim:
                for sub in self.ctx.decompose(piece).summands:
                    parts.append((self.ctx.class_id(sub), s))
        return tuple(sorted(parts))

    # -- morphisms ----------------------------------------------------

    def block_space(self, part_a: Tuple[int, int], part_b: Tuple[int, int]) -> HomSpace:
        k = (part_a, part_b)
        hit = self._block_cache.get(k)
        if hit is None:
            hit = chain_hom_space(self.ctx, self.wrap_part(part_a), self.wrap_part(part_b))
            self._block_cache[k] = hit
        return hit

    def hom_space(self, x: ObjKey, y: ObjKey) -> BlockHomSpace:
        k = (x, y)
        hit = self._hom_cache.get(k)
        if hit is None:
            hit = BlockHomSpace(self, self.realize(x), self.realize(y))
            self._hom_cache[k] = hit
        return hit

    def hom_dim(self, x: ObjKey, y: ObjKey) -> int:
        """Covering formula: summand pairs contribute their module hom,
        their extension space, or nothing, by shift residue."""
        total = 0
        for cid_a, sa in x:
            ra = self.ctx.class_rep(cid_a)
            for cid_b, sb in y:
                rb = self.ctx.class_rep(cid_b)
                r = (sb - sa) % PERIOD
                if r == 0:
                    total += self.ctx.hom_dim(ra, rb)
                elif r == 1:
                    total += self.ctx.ext1_dim(ra, rb)
        return total

    def cone_key(self, f: ChainMap) -> ObjKey:
        cone, _, _ = mapping_cone(self.ctx, f)
        return self.normalize(cone)

    def fiber_counts(self, x: ObjKey, m: ObjKey, cap: Optional[int] = None) -> Dict[ObjKey, int]:
        """How many morphisms x -> m have each cone class.

        The returned dict maps the object key of the cone to the number
        of morphisms producing it; values sum to q**hom_dim(x, m).
        """
        k = (x, m)
        hit = self._fiber_cache.get(k)
        if hit is None:
            space = self.hom_space(x, m)
            hit = {}
            for coords in space.enumerate_classes(cap):
                ck = self.cone_key(space.rep_map(coords))
                hit[ck] = hit.get(ck, 0) + 1
            self._fiber_cache[k] = hit
        return hit

    # -- automorphisms ------------------------------------------------

    def aut_order(self, key: ObjKey) -> int:
        """|Aut| through the layered formula: shift layers contribute
        their module automorphisms, and the strictly lower triangle of
        maps between consecutive shifts is a square-zero ideal, so it
        contributes a free factor of q per extension dimension."""
        hit = self._aut_cache.get(key)
        if hit is None:
            layers = [self.part_rep(key, s) for s in range(PERIOD)]
            order = 1
            for s in range(PERIOD):
                order *= self.ctx.aut_order(layers[s])
                order *= self.q ** self.ctx.ext1_dim(layers[s], layers[(s + 1) % PERIOD])
            self._aut_cache[key] = hit = order
        return hit

    def aut_order_by_enumeration(self, key: ObjKey, cap: Optional[int] = None) -> int:
        """|Aut| by walking every endomorphism class and testing
        invertibility through contractibility of its cone."""
        space = self.hom_space(key, key)
        count = 0
        for coords in space.enumerate_classes(cap):
            if self.is_iso_class(space.rep_map(coords)):
                count += 1
        return count

    def is_iso_class(self, f: ChainMap) -> bool:
        """A morphism is invertible exactly when its cone is zero."""
        return self.cone_key(f) == ()
