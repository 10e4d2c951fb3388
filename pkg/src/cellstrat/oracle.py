"""Independent check of decompositions by explicit quotient modules and characters.

The module ``k Sigma_n (x)_H k Sigma_l (x)_{Sigma_lam} k`` is built on symbols
``(eta, t)`` with ``eta`` in ``Sigma_n`` and ``t`` a tabloid, modulo
``(eta * rho(z), t) - (eta, z . t)`` for generators ``z`` of ``H``.  Its
character is compared with the sum of permutation characters of the claimed
summands; over a field of characteristic zero this detects isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .config import DEFAULT_CAPS, check_cap
from .diagrams import embed_permutation, multiply_diagrams, propagating_number
from .errors import DimensionError, OracleTooLargeError
from .linalg import ONE, RationalMatrix, SparseEliminator, quotient_action
from .partial import PARTITION, PartialDiagram, in_Vnl
from .perm import (
    Composition,
    Permutation,
    all_permutations,
    coxeter_generators,
    coxeter_word,
    partitions_of,
    tabloids,
)
from .symgroup import stabilizer_product


def class_representatives(n: int) -> list[tuple[tuple[int, ...], Permutation]]:
    """One element per cycle type, cycles on consecutive points, partitions in decreasing order."""
    out = []
    for mu in partitions_of(n):
        cycles, start = [], 1
        for part in mu:
            cycles.append(tuple(range(start, start + part)))
            start += part
        out.append((mu, Permutation.from_cycles(cycles, n)))
    return out


def class_size(mu: tuple[int, ...]) -> int:
    n = sum(mu)
    z = prod(k ** mu.count(k) * factorial(mu.count(k)) for k in set(mu))
    return factorial(n) // z


@dataclass(frozen=True)
class ClassFunction:
    n: int
    values: tuple[Fraction, ...]

    @property
    def classes(self) -> list[tuple[int, ...]]:
        return partitions_of(self.n)

    @classmethod
    def zero(cls, n: int) -> "ClassFunction":
        return cls(n, tuple(Fraction(0) for _ in partitions_of(n)))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if other.n != self.n:
            raise DimensionError("class functions of different degrees")
        return ClassFunction(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def degree(self) -> Fraction:
        return self.values[-1]  # the class (1^n) comes last

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(zip(self.classes, self.values))

    def as_json_obj(self) -> dict:
        return {",".join(map(str, mu)) or "()": str(v) for mu, v in self.as_dict().items()}

    def inner(self, other: "ClassFunction") -> Fraction:
        total = sum(class_size(mu) * a * b for mu, a, b in zip(self.classes, self.values, other.values))
        return Fraction(total, factorial(self.n))


def perm_character(n: int, nu: Composition, cap: int | None = None) -> ClassFunction:
    """Character of ``k Sigma_n (x)_{Sigma_nu} k``: fixed nu-tabloids per class."""
    if nu.size != n:
        raise DimensionError(f"{nu} is not a composition of {n}")
    check_cap("tabloid cosets", nu.coset_count(), DEFAULT_CAPS.coset if cap is None else cap)
    ts = tabloids(nu)
    return ClassFunction(n, tuple(Fraction(sum(1 for t in ts if t.fixed_by(g))) for _, g in class_representatives(n)))


def character_of_action(dimension: int, action: Sequence[RationalMatrix], n: int) -> ClassFunction:
    """Traces of class representatives, each written as a word in the Coxeter generators."""
    if len(action) != max(n - 1, 0):
        raise DimensionError(f"expected {max(n - 1, 0)} generator matrices, got {len(action)}")
    values = []
    for _, g in class_representatives(n):
        m = RationalMatrix.identity(dimension)
        for a in coxeter_word(g):
            m = m @ action[a - 1]
        values.append(m.trace())
    return ClassFunction(n, tuple(values))


@dataclass
class QuotientModule:
    dimension: int
    action: list[RationalMatrix]
    symbols: int
    relations: int

    def character(self, n: int) -> ClassFunction:
        return character_of_action(self.dimension, self.action, n)


def _quotient(ncols: int, relations, left_images: list[list[int]], cap: int | None) -> QuotientModule:
    cap = DEFAULT_CAPS.oracle_columns if cap is None else cap
    if ncols > cap:
        raise OracleTooLargeError("oracle symbols", ncols, cap)
    elim = SparseEliminator(ncols)
    count = 0
    for a, b in relations:
        count += 1
        if a != b:
            elim.add({a: ONE, b: -ONE})
    free = elim.free_columns()
    action = [quotient_action(elim, images, free) for images in left_images]
    return QuotientModule(len(free), action, ncols, count)


def build_quotient_module(
    r: int, n: int, l: int, v: PartialDiagram, lam: Composition, cap: int | None = None
) -> QuotientModule:
    if not in_Vnl(v, n, l):
        raise DimensionError(f"{v} is not in V_{n}^{l}")
    if lam.size != l:
        raise DimensionError(f"{lam} is not a composition of {l}")
    # fail fast, before enumerating anything
    cap = DEFAULT_CAPS.oracle_columns if cap is None else cap
    size = factorial(n) * lam.coset_count()
    if size > cap:
        raise OracleTooLargeError("oracle symbols", size, cap)
    H = stabilizer_product(v, l)
    etas = sorted(all_permutations(n))
    eta_index = {e: i for i, e in enumerate(etas)}
    ts = tabloids(lam)
    t_index = {t: i for i, t in enumerate(ts)}
    T = len(ts)

    def relations():
        for z in H.generators:
            rz = H.rho(z)
            zt = [t_index[t.act(z)] for t in ts]
            for i, eta in enumerate(etas):
                j = eta_index[eta * rz]
                for k in range(T):
                    yield j * T + k, i * T + zt[k]

    left = []
    for s in coxeter_generators(n):
        images = [0] * (len(etas) * T)
        for i, eta in enumerate(etas):
            j = eta_index[s * eta]
            for k in range(T):
                images[i * T + k] = j * T + k
        left.append(images)
    return _quotient(len(etas) * T, relations(), left, cap)


def claimed_character(n: int, nus: Sequence[Composition]) -> ClassFunction:
    total = ClassFunction.zero(n)
    for nu in nus:
        total = total + perm_character(n, nu)
    return total


@dataclass
class OracleResult:
    passed: bool
    dimension: int
    claimed_dimension: int
    oracle: ClassFunction
    claimed: ClassFunction
    diffs: dict = field(default_factory=dict)
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def as_json_obj(self) -> dict:
        return {
            "passed": self.passed,
            "dimension": self.dimension,
            "claimed_dimension": self.claimed_dimension,
            "oracle_character": self.oracle.as_json_obj(),
            "claimed_character": self.claimed.as_json_obj(),
            "diffs": {",".join(map(str, k)): str(v) for k, v in self.diffs.items()},
            "note": self.note,
        }

    def diff_report(self) -> str:
        if self.passed:
            return "characters agree on every class"
        return "\n".join(f"class {','.join(map(str, mu))}: oracle - claim = {d}" for mu, d in self.diffs.items())


def compare(oracle: ClassFunction, claimed: ClassFunction, dimension: int) -> OracleResult:
    diffs = {mu: a - b for mu, a, b in zip(oracle.classes, oracle.values, claimed.values) if a != b}
    return OracleResult(
        not diffs,
        dimension,
        int(claimed.degree()),
        oracle,
        claimed,
        diffs,
        "isomorphism checked by character equality over the rationals",
    )


def verify_decomposition(claim, cap: int | None = None) -> OracleResult:
    """Oracle character of ``U_v (x) M^lam`` against the claimed permutation summands.

    ``claim`` needs attributes ``r, n, l, v, lam`` and ``nus``.
    """
    module = build_quotient_module(claim.r, claim.n, claim.l, claim.v, claim.lam, cap)
    return compare(module.character(claim.n), claimed_character(claim.n, claim.nus), module.dimension)


def corrupt_nus(nus: Sequence[Composition]) -> list[Composition]:
    """Replace the first summand by a composition of a different shape (negative control)."""
    if not nus:
        raise ValueError("nothing to corrupt in an empty decomposition")
    n = nus[0].size
    first = nus[0].partition()
    other = next((mu for mu in partitions_of(n) if mu != first), None)
    if other is None:
        raise ValueError(f"Sigma_{n} has a single Young shape; no corruption possible")
    return [Composition(other)] + list(nus[1:])


def _permutation_action_on_layer(r: int, n: int, l: int, basis, ts):
    """Relations and left action for the full layer restriction."""
    index = {d: i for i, d in enumerate(basis)}
    t_index = {t: i for i, t in enumerate(ts)}
    T = len(ts)

    def move(d, e, right):
        product, loops = multiply_diagrams(d, e) if right else multiply_diagrams(e, d)
        if loops or propagating_number(product) != n or product not in index:
            raise AssertionError(f"generator leaves the layer basis at {d}")
        return index[product]

    def relations():
        for s in coxeter_generators(l):
            e = embed_permutation(s, r)
            st = [t_index[t.act(s)] for t in ts]
            for i, d in enumerate(basis):
                j = move(d, e, True)
                for k in range(T):
                    yield j * T + k, i * T + st[k]

    left = []
    for s in coxeter_generators(n):
        e = embed_permutation(s, r)
        images = [0] * (len(basis) * T)
        for i, d in enumerate(basis):
            j = move(d, e, False)
            for k in range(T):
                images[i * T + k] = j * T + k
        left.append(images)
    return relations(), left


def verify_full_restriction(r: int, n: int, l: int, lam: Composition, cap: int | None = None, r_cap: int | None = None) -> OracleResult:
    """Character of ``e_n (A/J_{n-1}) e_l (x)_{Sigma_l} M^lam`` against the sum over all classes."""
    from .decompose import decompose_restriction
    from .stratification import layer_restriction_basis

    r_cap = DEFAULT_CAPS.full_restriction_r if r_cap is None else r_cap
    check_cap("full restriction size r", r, r_cap)
    decomposition = decompose_restriction(r, n, l, lam)
    claimed = claimed_character(n, [nu for uv in decomposition.classes.values() for nu in uv.nus])
    if n > l:
        return compare(ClassFunction.zero(n), claimed, 0)
    basis = layer_restriction_basis(PARTITION, r, n, l)
    ts = tabloids(lam)
    relations, left = _permutation_action_on_layer(r, n, l, basis, ts)
    module = _quotient(len(basis) * len(ts), relations, left, cap)
    return compare(module.character(n), claimed, module.dimension)
