"""JSON and text rendering of decompositions.

Rendering is deterministic: no timestamps, fixed key order, and every number
is an integer or a ``p/q`` string.
"""

from __future__ import annotations

import json

from . import __version__
from .config import Caps
from .decompose import RestrictionDecomposition, UvDecomposition

SCHEMA = "cellstrat.decomposition/1"

CONVENTIONS = {
    "product": "left to right: (p*q)(i) = q(p(i))",
    "double_cosets": "H-orbits on lambda-tabloids, witness fills rows of the least tabloid in increasing order",
    "class_representative": "least partial diagram per signature",
    "isomorphism": "summands compared by the partition of nu",
}


def _partition_list(counter) -> list[dict]:
    items = sorted(counter.items(), key=lambda kv: tuple(-p for p in kv[0]))
    return [{"partition": list(p), "multiplicity": m} for p, m in items]


def _uv_body(d: UvDecomposition) -> dict:
    return {
        "stabilizer_order": d.stabilizer_order,
        "q": d.q,
        "summands": [
            {
                "rep": str(s.rep),
                "orbit_size": s.orbit_size,
                "least_tabloid": list(s.least_tabloid.row_of),
                "intersection_order": s.intersection_order,
                "labelled_order": s.labelled_order,
                "nu": list(s.nu.parts),
                "nu_partition": list(s.partition),
                "index": s.index(d.n),
            }
            for s in d.summands
        ],
        "partition_multiset": _partition_list(d.partition_multiset()),
        "dimension": d.dimension,
    }


def report_obj(d, caps: Caps | None = None) -> dict:
    caps = caps or Caps()
    head = {"schema": SCHEMA, "version": __version__}
    if isinstance(d, UvDecomposition):
        head["kind"] = "Uv"
        head["instance"] = {"r": d.r, "n": d.n, "l": d.l, "v": str(d.v), "lambda": list(d.lam.parts)}
        body = _uv_body(d)
    elif isinstance(d, RestrictionDecomposition):
        head["kind"] = "restriction"
        head["instance"] = {"r": d.r, "n": d.n, "l": d.l, "lambda": list(d.lam.parts)}
        ordered = sorted(d.classes.items(), key=lambda kv: kv[1].v)
        body = {
            "classes": [
                {
                    "signature": sig.as_json_obj(),
                    "representative": str(uv.v),
                    "class_size": d.class_sizes.get(sig),
                    **_uv_body(uv),
                }
                for sig, uv in ordered
            ],
            "partition_multiset": _partition_list(d.partition_multiset()),
            "dimension": d.dimension,
        }
    else:
        raise TypeError(f"cannot report on {type(d).__name__}")
    head.update(body)
    head["provenance"] = {"caps": caps.as_dict(), "conventions": CONVENTIONS}
    return head


def _text_uv(d: UvDecomposition) -> list[str]:
    header = ("i", "pi_i", "orbit", "|Pi_nu|", "|Pi_nu| labelled", "Sigma_nu", "partition")
    rows = [
        (str(i), str(s.rep), str(s.orbit_size), str(s.intersection_order), str(s.labelled_order), f"({s.nu})", f"({','.join(map(str, s.partition))})")
        for i, s in enumerate(d.summands, start=1)
    ]
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*header).rstrip(), fmt.format(*("-" * w for w in widths)).rstrip()]
    lines += [fmt.format(*row).rstrip() for row in rows]
    terms = []
    for item in _partition_list(d.partition_multiset()):
        name = f"M({','.join(map(str, item['partition']))})"
        terms.append(name if item["multiplicity"] == 1 else f"{name}^{item['multiplicity']}")
    lines.append(f"U_v (x) M^lambda = {' + '.join(terms) if terms else '0'}   dimension {d.dimension}")
    return lines


def render_text(d) -> str:
    if isinstance(d, RestrictionDecomposition) and d.is_empty():
        return "[]"
    if isinstance(d, UvDecomposition):
        lines = [
            f"r={d.r} n={d.n} l={d.l} v={d.v} lambda=({d.lam})",
            f"stabilizer order {d.stabilizer_order}, {d.q} double cosets",
        ]
        return "\n".join(lines + _text_uv(d))
    lines = [f"r={d.r} n={d.n} l={d.l} lambda=({d.lam}): {len(d.classes)} classes"]
    for sig, uv in sorted(d.classes.items(), key=lambda kv: kv[1].v):
        lines.append("")
        lines.append(f"class {sig} ({d.class_sizes.get(sig)} members), representative {uv.v}")
        lines += _text_uv(uv)
    lines.append("")
    lines.append(f"total dimension {d.dimension}")
    return "\n".join(lines)


def emit_report(d, format: str = "json", caps: Caps | None = None) -> str:
    if format == "json":
        return json.dumps(report_obj(d, caps), indent=2, ensure_ascii=False)
    if format == "text":
        return render_text(d)
    raise ValueError(f"unknown format {format!r}")
