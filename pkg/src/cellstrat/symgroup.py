"""Stabilizers of partial diagrams, tabloid cosets, double cosets and rho."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import factorial, prod

from .config import DEFAULT_CAPS, check_cap
from .diagrams import SetPartitionDiagram, embed_permutation, multiply_diagrams
from .errors import DimensionError, NotInSubgroupError, NotYoungError
from .partial import PARTITION, PartialDiagram, build_dv, effective_parts, pi_of
from .perm import Composition, Permutation, Tabloid, tabloids, young_subgroup_elements

__all__ = [
    "Permutation",
    "Composition",
    "Tabloid",
    "StabilizerProduct",
    "DoubleCoset",
    "young_subgroup_generators",
    "stabilizer_product",
    "rho",
    "cosets",
    "double_coset_reps",
    "intersection_with_conjugate",
    "labelled_component",
    "image_young",
]


def young_subgroup_generators(lam: Composition) -> list[Permutation]:
    m = lam.size
    return [Permutation.transposition(i, i + 1, m) for block in lam.blocks() for i in block[:-1]]


@dataclass(frozen=True)
class StabilizerProduct:
    """The subgroup of ``Sigma_l`` fixing ``v`` as a labelled set partition."""

    v: PartialDiagram
    r: int
    l: int
    generators: tuple[Permutation, ...]
    labelled_blocks: tuple[tuple[int, ...], ...]
    unlabelled_blocks: tuple[tuple[int, ...], ...]
    _parts: frozenset = field(repr=False, compare=False)
    _dv: SetPartitionDiagram | None = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.labelled_blocks)

    @property
    def order(self) -> int:
        counts: dict[tuple[int, bool], int] = {}
        for b in self.labelled_blocks:
            counts[(len(b), True)] = counts.get((len(b), True), 0) + 1
        for b in self.unlabelled_blocks:
            counts[(len(b), False)] = counts.get((len(b), False), 0) + 1
        return prod(factorial(size) ** c * factorial(c) for (size, _), c in counts.items())

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.l:
            return False
        return all((frozenset(g(i) for i in dots), flag) in self._parts for dots, flag in self._parts)

    def rho(self, zeta: Permutation) -> Permutation:
        """``pi_of(d_v * zeta)``: how ``zeta`` permutes the labelled parts."""
        if not self.contains(zeta):
            raise NotInSubgroupError(f"{zeta} does not stabilize {self.v}")
        if self.l == 0:
            return Permutation.identity(0)
        product, _ = multiply_diagrams(self._dv, embed_permutation(zeta, self.r))
        return pi_of(product)

    def rho_direct(self, zeta: Permutation) -> Permutation:
        """Same map computed from the part permutation, without diagrams."""
        index = {frozenset(b): i for i, b in enumerate(self.labelled_blocks, start=1)}
        return Permutation(index[frozenset(zeta(d) for d in b)] for b in self.labelled_blocks)

    def fixes_unlabelled(self, g: Permutation) -> bool:
        return all(g(d) == d for b in self.unlabelled_blocks for d in b)


def stabilizer_product(v: PartialDiagram, l: int) -> StabilizerProduct:
    r = v.r
    if not 0 <= l <= r:
        raise DimensionError(f"l={l} outside 0..{r}")
    parts = effective_parts(v, l)
    covered = sorted(d for dots, _ in parts for d in dots)
    if covered != list(range(1, l + 1)):
        raise DimensionError(f"{v} is not compatible with l={l}")
    gens = []
    for dots, _ in parts:
        gens += [Permutation.transposition(a, b, l) for a, b in zip(dots, dots[1:])]
    for (p, fp), (q, fq) in _consecutive_equal(parts):
        images = list(range(1, l + 1))
        for a, b in zip(p, q):
            images[a - 1], images[b - 1] = b, a
        gens.append(Permutation(images))
    dv = build_dv(v, r, v.n, l, PARTITION) if l else None
    return StabilizerProduct(
        v=v,
        r=r,
        l=l,
        generators=tuple(gens),
        labelled_blocks=tuple(dots for dots, f in parts if f),
        unlabelled_blocks=tuple(dots for dots, f in parts if not f),
        _parts=frozenset((frozenset(dots), f) for dots, f in parts),
        _dv=dv,
    )


def _consecutive_equal(parts):
    """Pairs of consecutive parts of one (size, flag) class, in leftmost order."""
    by_class: dict[tuple[int, bool], list] = {}
    for part in parts:
        by_class.setdefault((len(part[0]), part[1]), []).append(part)
    for members in by_class.values():
        yield from zip(members, members[1:])


def rho(zeta: Permutation, v: PartialDiagram) -> Permutation:
    return stabilizer_product(v, zeta.degree).rho(zeta)


def cosets(l: int, lam: Composition, cap: int | None = None) -> list[Tabloid]:
    if lam.size != l:
        raise DimensionError(f"composition {lam} is not of {l}")
    check_cap("tabloid cosets", lam.coset_count(), DEFAULT_CAPS.coset if cap is None else cap)
    return tabloids(lam)


@dataclass(frozen=True)
class DoubleCoset:
    rep: Permutation
    orbit_size: int
    least: Tabloid

    def __iter__(self):
        # unpacks as (rep, orbit_size)
        return iter((self.rep, self.orbit_size))


def tabloid_orbits(H: StabilizerProduct, lam: Composition, cap: int | None = None) -> list[list[Tabloid]]:
    """H-orbits on the lam-tabloids, each sorted, ordered by least member."""
    all_t = cosets(H.l, lam, cap)
    seen: set[Tabloid] = set()
    orbits = []
    for t in all_t:
        if t in seen:
            continue
        seen.add(t)
        orbit = [t]
        queue = deque([t])
        while queue:
            x = queue.popleft()
            for g in H.generators:
                y = x.act(g)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
                    queue.append(y)
        orbits.append(sorted(orbit))
    return orbits


def double_coset_reps(H: StabilizerProduct, l: int, lam: Composition, cap: int | None = None) -> list[DoubleCoset]:
    if l != H.l:
        raise DimensionError(f"stabilizer lives in Sigma_{H.l}, not Sigma_{l}")
    return [DoubleCoset(o[0].witness(lam), len(o), o[0]) for o in tabloid_orbits(H, lam, cap)]


def intersection_with_conjugate(
    H: StabilizerProduct, pi: Permutation, lam: Composition, cap: int | None = None
) -> list[Permutation]:
    """Elements of ``H`` lying in ``pi Sigma_lam pi^-1``, sorted."""
    check_cap("Young subgroup elements", lam.young_order(), DEFAULT_CAPS.group if cap is None else cap)
    inv = pi.inverse()
    out = []
    for k in young_subgroup_elements(lam):
        c = pi * k * inv
        if H.contains(c):
            out.append(c)
    return sorted(out)


def labelled_component(elements: list[Permutation], H: StabilizerProduct) -> list[Permutation]:
    """The elements acting trivially on every unlabelled dot."""
    return [g for g in elements if H.fixes_unlabelled(g)]


def image_young(elements: list[Permutation], H_or_v, l: int | None = None) -> Composition:
    """Orbit sizes of ``rho(elements)`` on ``1..n``, ordered by least orbit point.

    Raises NotYoungError unless the image is the full product of symmetric
    groups on its orbits.
    """
    H = H_or_v if isinstance(H_or_v, StabilizerProduct) else stabilizer_product(H_or_v, l if l is not None else elements[0].degree)
    n = H.n
    images = {H.rho(z) for z in elements}
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in images:
        for i in range(1, n + 1):
            a, b = find(i), find(g(i))
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        orbits.setdefault(find(i), []).append(i)
    sizes = [len(orbits[k]) for k in sorted(orbits)]
    expected = prod(factorial(s) for s in sizes)
    if len(images) != expected:
        raise NotYoungError(f"image of order {len(images)} is not the product of symmetric groups on orbits {sizes}")
    return Composition(tuple(sizes))
