"""Layer idempotents, layer ideals and executable checks of the stratification axioms.

Every check returns a :class:`CheckResult`; :func:`stratification_report`
collects them together with the per-layer dimension bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

from .config import DEFAULT_CAPS
from .diagrams import (
    AlgebraElement,
    DeltaPoly,
    SetPartitionDiagram,
    bell_number,
    double_factorial_odd,
    embed_permutation,
    enumerate_basis,
    multiply,
    multiply_diagrams,
    propagating_number,
)
from .errors import DimensionError, SingularParameterError, SizeLimitError, UndefinedLayerError
from .partial import (
    BRAUER,
    PARTITION,
    PartialDiagram,
    bottom_row,
    complete,
    enumerate_Vn,
    enumerate_Vnl,
    idempotent_row,
    pi_of,
    top_row,
)
from .perm import Permutation, all_permutations, coxeter_generators

ALGEBRAS = (PARTITION, BRAUER)


def _check_algebra(algebra: str) -> None:
    if algebra not in ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}; expected one of {ALGEBRAS}")


def layers(algebra: str, r: int, delta=None) -> list[int]:
    """Valid layer indices: ``0..r`` for the partition algebra, ``l = r mod 2`` steps for Brauer."""
    _check_algebra(algebra)
    if algebra == PARTITION:
        return list(range(0, r + 1))
    low = r % 2
    if low == 0 and delta is not None and Fraction(delta) == 0:
        low = 2  # e_0 needs delta invertible
    return list(range(low, r + 1, 2))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    reason: str
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def as_json_obj(self) -> dict:
        return {"name": self.name, "passed": self.passed, "reason": self.reason, "details": self.details}


# --- idempotents ------------------------------------------------------------------


def _brauer_zero_variant(r: int, l: int) -> SetPartitionDiagram:
    """The delta = 0 replacement for the Brauer e_l, ``r`` odd."""
    blocks = [(i - 1, r + i - 1) for i in range(1, l)]
    blocks.append((l - 1, 2 * r - 1))
    blocks += [(i - 1, i) for i in range(l + 1, r, 2)]
    blocks += [(r + i - 1, r + i) for i in range(l, r - 1, 2)]
    return SetPartitionDiagram.from_code_blocks(r, blocks)


def idempotent(algebra: str, r: int, l: int, delta=None) -> AlgebraElement:
    """The layer idempotent ``e_l``; ``delta=None`` keeps delta symbolic."""
    _check_algebra(algebra)
    delta = None if delta is None else Fraction(delta)
    row = idempotent_row(algebra, r, l)
    if algebra == BRAUER and delta == 0:
        if r % 2 == 0:
            raise SingularParameterError("the Brauer idempotents need delta != 0 when r is even")
        return AlgebraElement.from_diagram(_brauer_zero_variant(r, l))
    d = complete(row, row)
    if algebra == PARTITION:
        exp = -1 if l == 0 else 0
    else:
        exp = -((r - l) // 2)
    x = AlgebraElement.from_diagram(d, DeltaPoly.monomial(exp))
    return x if delta is None else x.specialize(delta)


def embed_element(algebra: str, pi: Permutation, r: int) -> AlgebraElement:
    """Image of ``pi`` in ``Sigma_l`` inside ``e_l A e_l``; the identity maps to ``e_l``."""
    l = pi.degree
    if algebra == PARTITION:
        if l == 0:
            return idempotent(PARTITION, r, 0)
        return AlgebraElement.from_diagram(embed_permutation(pi, r))
    row = idempotent_row(BRAUER, r, l)
    arcs = [tuple(d - 1 for d in dots) for dots in row.unlabelled_parts()]
    blocks = [(i - 1, r + pi(i) - 1) for i in range(1, l + 1)]
    blocks += arcs + [tuple(r + c for c in a) for a in arcs]
    d = SetPartitionDiagram.from_code_blocks(r, blocks)
    return AlgebraElement.from_diagram(d, DeltaPoly.monomial(-((r - l) // 2)))


def embedded_generators(algebra: str, r: int, l: int) -> list[AlgebraElement]:
    return [embed_element(algebra, s, r) for s in coxeter_generators(l)]


def verify_idempotent_laws(algebra: str, r: int, delta=None) -> CheckResult:
    """``e_l^2 = e_l`` and ``e_l e_m = e_l = e_m e_l`` for all layers ``l <= m``."""
    idem = {l: idempotent(algebra, r, l, delta) for l in layers(algebra, r, delta)}
    failures = []
    for l, el in idem.items():
        for m, em in idem.items():
            if m < l:
                continue
            if multiply(el, em, delta) != el:
                failures.append(f"e_{l} e_{m} != e_{l}")
            if multiply(em, el, delta) != el:
                failures.append(f"e_{m} e_{l} != e_{l}")
    mode = "symbolic" if delta is None else str(Fraction(delta))
    return CheckResult(
        "idempotent_laws",
        not failures,
        "exact products of all layer idempotents" if not failures else "; ".join(failures),
        {"algebra": algebra, "r": r, "delta": mode, "layers": sorted(idem)},
    )


def layer_of(x: AlgebraElement) -> int:
    if x.is_zero():
        raise UndefinedLayerError("the zero element lies in no layer")
    return max(propagating_number(d) for d in x.terms)


# --- bases of the layer spaces -----------------------------------------------------


def _basis(algebra: str, r: int, cap: int | None) -> list[SetPartitionDiagram]:
    return enumerate_basis(r, brauer_only=algebra == BRAUER, cap=cap)


def _diagram(x: AlgebraElement) -> SetPartitionDiagram:
    (d,) = x.terms
    return d


def compress_basis(algebra: str, r: int, l: int, cap: int | None = None) -> list[SetPartitionDiagram]:
    """Diagram basis of ``e_l A e_l``: supports of ``e_l d e_l`` over all basis diagrams."""
    e = _diagram(idempotent(algebra, r, l))
    out = set()
    for d in _basis(algebra, r, cap):
        x, _ = multiply_diagrams(e, d)
        y, _ = multiply_diagrams(x, e)
        out.add(y)
    return sorted(out)


def right_ideal_basis(algebra: str, r: int, n: int, l: int, cap: int | None = None) -> list[SetPartitionDiagram]:
    """Diagram basis of ``J_n e_l``: supports of ``d e_l`` with at most ``n`` propagating parts."""
    e = _diagram(idempotent(algebra, r, l))
    out = set()
    for d in _basis(algebra, r, cap):
        x, _ = multiply_diagrams(d, e)
        if propagating_number(x) <= n:
            out.add(x)
    return sorted(out)


def layer_restriction_basis(algebra: str, r: int, n: int, l: int, cap: int | None = None) -> list[SetPartitionDiagram]:
    """Basis diagrams of ``e_n (A/J_{n-1}) e_l``.

    Exactly ``n`` propagating parts, top row that of ``e_n``, bottom row in
    ``V_n^l``.  Built as ``complete(top(e_n), v, sigma)`` over ``v`` and
    ``sigma in Sigma_n``; empty when ``n > l``.
    """
    _check_algebra(algebra)
    if n > l:
        return []
    if algebra == BRAUER and (l - n) % 2:
        return []
    top = idempotent_row(algebra, r, n)
    vs = enumerate_Vnl(r, n, l, algebra, cap)
    out = [complete(top, v, sigma) for v in vs for sigma in all_permutations(n)]
    return sorted(out)


def _preserves(elements: Iterable[SetPartitionDiagram], gens: list[AlgebraElement], allowed: set, side: str) -> list[str]:
    problems = []
    for d in elements:
        x = AlgebraElement.from_diagram(d)
        p = propagating_number(d)
        for k, g in enumerate(gens, start=1):
            y = g * x if side == "left" else x * g
            for e in y.terms:
                if e not in allowed:
                    problems.append(f"{side} s_{k} moves {d} outside the basis")
                elif propagating_number(e) != p:
                    problems.append(f"{side} s_{k} mixes layers at {d}")
    return problems


def verify_assumption_Ia(algebra: str, r: int, l: int, cap: int | None = None) -> CheckResult:
    """``e_l A e_l`` splits as the Sigma_l span plus ``e_l J_{l-1} e_l``, compatibly with Sigma_l on both sides."""
    basis = compress_basis(algebra, r, l, cap)
    top = [d for d in basis if propagating_number(d) == l]
    expected = sorted(_diagram(embed_element(algebra, p, r)) for p in all_permutations(l))
    problems = []
    if top != expected:
        problems.append(f"{len(top)} diagrams with {l} propagating parts, expected the {len(expected)} embedded permutations")
    if any(propagating_number(d) > l for d in basis):
        problems.append("a compressed diagram exceeds the layer")
    gens = embedded_generators(algebra, r, l)
    allowed = set(basis)
    problems += _preserves(basis, gens, allowed, "left")
    problems += _preserves(basis, gens, allowed, "right")
    return CheckResult(
        "assumption_Ia",
        not problems,
        "split by propagating number, which Coxeter generators of Sigma_l preserve on both sides"
        if not problems
        else "; ".join(problems[:5]),
        {"algebra": algebra, "r": r, "l": l, "dim": len(basis), "dim_B_l": len(top)},
    )


def verify_assumption_Ib(algebra: str, r: int, n: int, l: int, cap: int | None = None) -> CheckResult:
    """``J_n e_l`` splits as ``J_{n-1} e_l`` plus the top layer, as right Sigma_l-modules."""
    if n > l:
        raise DimensionError(f"need n <= l, got n={n}, l={l}")
    basis = right_ideal_basis(algebra, r, n, l, cap)
    gens = embedded_generators(algebra, r, l)
    problems = _preserves(basis, gens, set(basis), "right")
    top = sum(1 for d in basis if propagating_number(d) == n)
    return CheckResult(
        "assumption_Ib",
        not problems,
        "split by propagating number, preserved by right Coxeter generators of Sigma_l"
        if not problems
        else "; ".join(problems[:5]),
        {"algebra": algebra, "r": r, "n": n, "l": l, "dim": len(basis), "dim_top": top},
    )


def verify_assumption_IIprime(algebra: str, r: int, n: int, l: int, cap: int | None = None) -> CheckResult:
    """``dim (J_n/J_{n-1}) e_l = n! dim V_n dim V_n^l``, counted by brute force."""
    if n > l:
        raise DimensionError(f"need n <= l, got n={n}, l={l}")
    e = _diagram(idempotent(algebra, r, l))
    layer = set()
    for d in _basis(algebra, r, cap):
        x, _ = multiply_diagrams(d, e)
        if propagating_number(x) == n:
            layer.add(x)
    vn = len(enumerate_Vn(r, n, algebra, cap))
    vnl = len(enumerate_Vnl(r, n, l, algebra, cap))
    expected = factorial(n) * vn * vnl
    rows_ok = all(bottom_row(x) in set(enumerate_Vnl(r, n, l, algebra, cap)) for x in layer)
    passed = len(layer) == expected and rows_ok
    return CheckResult(
        "assumption_IIprime",
        passed,
        f"{len(layer)} = {n}! * {vn} * {vnl}" if passed else f"{len(layer)} diagrams, expected {n}! * {vn} * {vnl} = {expected}",
        {"algebra": algebra, "r": r, "n": n, "l": l, "count": len(layer), "dim_Vn": vn, "dim_Vnl": vnl},
    )


def verify_compressed_dimension(algebra: str, r: int, l: int, cap: int | None = None) -> CheckResult:
    """``dim e_l A e_l = sum_n n! |V_n^l|^2``, the grading of the compressed algebra."""
    dim = len(compress_basis(algebra, r, l, cap))
    step = 2 if algebra == BRAUER else 1
    total = sum(factorial(n) * len(enumerate_Vnl(r, n, l, algebra, cap)) ** 2 for n in range(l % step, l + 1, step))
    return CheckResult(
        "compressed_dimension",
        dim == total,
        f"dim e_{l}Ae_{l} = {dim}, graded sum {total}",
        {"algebra": algebra, "r": r, "l": l, "dim": dim, "graded": total},
    )


def verify_grading(algebra: str, r: int, cap: int | None = None) -> CheckResult:
    step = 2 if algebra == BRAUER else 1
    total = sum(factorial(n) * len(enumerate_Vn(r, n, algebra, cap)) ** 2 for n in range(r % step, r + 1, step))
    expected = double_factorial_odd(r) if algebra == BRAUER else bell_number(2 * r)
    return CheckResult(
        "grading",
        total == expected,
        f"sum over layers {total}, basis size {expected}",
        {"algebra": algebra, "r": r, "total": total, "expected": expected},
    )


# --- the Brauer module action on arc diagrams ---------------------------------------


@dataclass(frozen=True)
class ActionResult:
    """``b v = delta^exponent * partial``, with the permutation ``pi(b, v)`` of propagating lines."""

    exponent: int
    partial: PartialDiagram | None
    perm: Permutation | None

    @property
    def is_zero(self) -> bool:
        return self.partial is None


def brauer_action(b: SetPartitionDiagram, v: PartialDiagram) -> ActionResult:
    """Act with a Brauer diagram on an arc partial diagram placed under it.

    A free dot of the result is one joined to a free dot of ``v``; joining two
    free dots of ``v`` loses a propagating line and the result is zero.
    """
    r = b.r
    if v.r != r:
        raise DimensionError("diagram and partial diagram of different sizes")
    parent = list(range(2 * r))  # 0..r-1 top of b, r..2r-1 bottom of b = dots of v
    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, c):
        a, c = find(a), find(c)
        if a != c:
            parent[max(a, c)] = min(a, c)

    for block in b.blocks:
        for c in block[1:]:
            union(block[0], c)
    free_pos = {}
    for dots, labelled in v.parts:
        if labelled:
            free_pos[r + dots[0] - 1] = len(free_pos) + 1
        else:
            union(r + dots[0] - 1, r + dots[1] - 1)
    comps: dict[int, list[int]] = {}
    for c in range(2 * r):
        comps.setdefault(find(c), []).append(c)
    loops = 0
    parts = []
    link = {}
    for members in comps.values():
        tops = [c + 1 for c in members if c < r]
        frees = [free_pos[c] for c in members if c in free_pos]
        if len(frees) > 1:
            return ActionResult(0, None, None)
        if not tops:
            if frees:
                return ActionResult(0, None, None)
            loops += 1
            continue
        if frees:
            parts.append(((tops[0],), True))
            link[tops[0]] = frees[0]
        else:
            parts.append((tuple(tops), False))
    w = PartialDiagram(r, tuple(parts))
    perm = Permutation(link[dots[0]] for dots in w.labelled_parts())
    return ActionResult(loops, w, perm)


def brauer_action_by_product(b: SetPartitionDiagram, v: PartialDiagram) -> ActionResult:
    """Same action read off ``b d^v`` with ``d^v = complete(v, bottom(e_l))``."""
    r, l = b.r, v.n
    dv = complete(v, idempotent_row(BRAUER, r, l))
    product, loops = multiply_diagrams(b, dv)
    if propagating_number(product) < l:
        return ActionResult(0, None, None)
    return ActionResult(loops, top_row(product), pi_of(product))


def verify_module_law(r: int, cap: int | None = None, diagrams: list[SetPartitionDiagram] | None = None) -> CheckResult:
    """The module law ``a (b v) = (a b) v`` on (delta power, partial diagram, permutation) triples."""
    cap_r = DEFAULT_CAPS.module_law_r if cap is None else cap
    if r > cap_r:
        raise SizeLimitError("Brauer action sweep size r", r, cap_r)
    basis = diagrams if diagrams is not None else enumerate_basis(r, brauer_only=True)
    vs = [v for l in range(r % 2, r + 1, 2) for v in enumerate_Vn(r, l, BRAUER)]
    act = {(b, v): brauer_action(b, v) for b in basis for v in vs}
    checked = 0
    failures = []
    for a in basis:
        for b in basis:
            ab, loops = multiply_diagrams(a, b)
            for v in vs:
                checked += 1
                bv = act[(b, v)]
                lhs = act.get((ab, v)) or brauer_action(ab, v)
                if bv.is_zero:
                    ok = lhs.is_zero
                else:
                    rhs = act.get((a, bv.partial)) or brauer_action(a, bv.partial)
                    if rhs.is_zero:
                        ok = lhs.is_zero
                    else:
                        ok = (
                            not lhs.is_zero
                            and lhs.partial == rhs.partial
                            and lhs.exponent + loops == rhs.exponent + bv.exponent
                            and lhs.perm == rhs.perm * bv.perm
                        )
                if not ok and len(failures) < 5:
                    failures.append(f"a={a} b={b} v={v}")
    return CheckResult(
        "module_law",
        not failures,
        f"module law holds on {checked} triples" if not failures else "; ".join(failures),
        {"r": r, "triples": checked},
    )


# --- the full report ------------------------------------------------------------------


@dataclass
class LayerDims:
    n: int
    l: int
    dim_Vn: int
    dim_Vnl: int

    @property
    def dim_layer(self) -> int:
        return factorial(self.n) * self.dim_Vn * self.dim_Vnl

    def as_json_obj(self) -> dict:
        return {"n": self.n, "l": self.l, "dim_Vn": self.dim_Vn, "dim_Vnl": self.dim_Vnl, "dim_layer": self.dim_layer}


@dataclass
class StratificationReport:
    algebra: str
    r: int
    delta: str
    dims: list[LayerDims]
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def as_json_obj(self) -> dict:
        return {
            "algebra": self.algebra,
            "r": self.r,
            "delta": self.delta,
            "passed": self.passed,
            "dims": [d.as_json_obj() for d in self.dims],
            "checks": [c.as_json_obj() for c in self.checks],
        }


def stratification_report(algebra: str, r: int, delta=None, cap: int | None = None) -> StratificationReport:
    """Run every axiom check for ``(algebra, r)``.

    The combinatorial checks are independent of delta and use it symbolically;
    ``delta`` only enters the idempotent laws.
    """
    _check_algebra(algebra)
    ls = layers(algebra, r)
    dims = []
    checks = [verify_idempotent_laws(algebra, r, delta), verify_grading(algebra, r, cap)]
    for l in ls:
        checks.append(verify_assumption_Ia(algebra, r, l, cap))
        checks.append(verify_compressed_dimension(algebra, r, l, cap))
        for n in ls:
            if n > l:
                continue
            dims.append(
                LayerDims(n, l, len(enumerate_Vn(r, n, algebra, cap)), len(enumerate_Vnl(r, n, l, algebra, cap)))
            )
            checks.append(verify_assumption_Ib(algebra, r, n, l, cap))
            checks.append(verify_assumption_IIprime(algebra, r, n, l, cap))
    mode = "symbolic" if delta is None else str(Fraction(delta))
    return StratificationReport(algebra, r, mode, dims, checks)
