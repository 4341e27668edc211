"""Aggregated analysis of a quadric as a plain dictionary, plus text rendering."""

from __future__ import annotations

from .abelian import GroupElement
from .cone import RationalCone
from .normalform import NormalFormResult
from .quadric import QuadricVariety, SearchBoundExceeded

SCHEMA = "iq-analysis/1"


def cone_dict(c: RationalCone) -> dict:
    return {
        "dim": c.dim(),
        "rays": [list(r) for r in c.rays],
        "lineality": [list(v) for v in c.lineality],
    }


def element_dict(w: GroupElement) -> dict:
    return {"free": list(w.free), "tors": list(w.tors)}


def normal_form_dict(nf: NormalFormResult) -> dict:
    return {
        "q": nf.q,
        "t": nf.t,
        "sing_dim": nf.sing_dim,
        "permutation": [i + 1 for i in nf.permutation],
        "steps": [str(s) for s in nf.rational_reduction],
    }


def analysis_record(X: QuadricVariety, normal_form: NormalFormResult | None = None) -> dict:
    s = X.setup
    pic = X.picard_group()
    pic_struct = pic.structure()
    status = X.fano_status()
    try:
        mukai = X.mukai_check()
        mukai_d = {"lhs": mukai.lhs, "rhs": mukai.rhs, "holds": mukai.holds, "strict": mukai.strict}
    except ValueError as e:
        mukai_d = {"error": str(e)}
    if X.group.is_torsion_free():
        try:
            bpf: dict = {"saturated": X.bpf_saturated()}
        except SearchBoundExceeded as e:
            bpf = {"error": str(e)}
    else:
        bpf = {"unsupported": "class group has torsion"}
    contractions = []
    for ray in X.semiample_cone().rays:
        contractions.append({"class": list(ray), "type": X.classify_contraction(ray).value})
    smooth = X.is_smooth()
    record = {
        "schema": SCHEMA,
        "setup": {
            "group": str(X.group),
            "q": s.q,
            "t": s.t,
            "m": s.m,
            "degrees": [element_dict(w) for w in s.degrees],
            "ample": element_dict(X.u),
        },
        "validation": X.report.as_dict(),
        "dimension": X.dimension(),
        "relation_degree": element_dict(X.relation_degree()),
        "picard": {
            "group": str(pic_struct),
            "number": X.picard_number(),
            "index": pic.index(),
            "quotient": list(pic.quotient_invariants()),
        },
        "cones": {
            "eff": cone_dict(X.eff_cone()),
            "mov": cone_dict(X.mov_cone()),
            "semiample": cone_dict(X.semiample_cone()),
        },
        "cov": {
            "representatives": [list(f.indices) for f in X.covering_representatives()],
            "size": len(X.covering_collection()),
        },
        "flags": {
            "smooth": smooth,
            "quasismooth": X.is_quasismooth(),
            "locally_factorial": X.is_locally_factorial(),
            "q_factorial": X.is_q_factorial(),
        },
        "anticanonical": element_dict(status.anticanonical),
        "fano": {"status": status.tag.value, "index": status.fano_index, "caveat": status.index_caveat},
        "mukai": mukai_d,
        "bpf": bpf,
        "contractions": contractions,
    }
    if normal_form is not None:
        record["normal_form"] = normal_form_dict(normal_form)
    return record


def _fmt_el(d: dict) -> str:
    free = "(" + ",".join(map(str, d["free"])) + ")"
    return free + (" + tors(" + ",".join(map(str, d["tors"])) + ")" if d["tors"] else "")


def _fmt_cone(d: dict) -> str:
    rays = " ".join("(" + ",".join(map(str, r)) + ")" for r in d["rays"])
    lin = ""
    if d["lineality"]:
        lin = " lineality " + " ".join("(" + ",".join(map(str, r)) + ")" for r in d["lineality"])
    return f"dim {d['dim']}, rays {rays or '-'}{lin}"


def render_text(rec: dict) -> str:
    s = rec["setup"]
    lines = [
        f"setup: K = {s['group']}, (q,t,m) = ({s['q']},{s['t']},{s['m']}), u = {_fmt_el(s['ample'])}",
    ]
    if "normal_form" in rec:
        nf = rec["normal_form"]
        lines.append(f"normal form: (q,t) = ({nf['q']},{nf['t']}), singular locus dim {nf['sing_dim']}")
    v = rec["validation"]
    lines.append(f"valid: {v['valid']} (factorial: {v['factorial_case']})")
    lines.append(f"dimension: {rec['dimension']}")
    lines.append(f"relation degree: {_fmt_el(rec['relation_degree'])}")
    p = rec["picard"]
    lines.append(f"Pic: {p['group']}, rho = {p['number']}, index in Cl = {p['index']}")
    for name in ("eff", "mov", "semiample"):
        lines.append(f"{name}: {_fmt_cone(rec['cones'][name])}")
    reps = ", ".join("{" + ",".join(map(str, f)) + "}" for f in rec["cov"]["representatives"])
    lines.append(f"cov: {rec['cov']['size']} faces, orbit representatives {reps}")
    lines.append("flags: " + ", ".join(f"{k}={v}" for k, v in rec["flags"].items()))
    lines.append(f"-K: {_fmt_el(rec['anticanonical'])}")
    f = rec["fano"]
    lines.append(f"fano: {f['status']}, index {f['index']}" + (f" ({f['caveat']})" if f["caveat"] else ""))
    m = rec["mukai"]
    if "error" in m:
        lines.append(f"mukai: {m['error']}")
    else:
        lines.append(f"mukai: {m['lhs']} <= {m['rhs']}: {m['holds']}")
    lines.append("bpf: " + ", ".join(f"{k}={v}" for k, v in rec["bpf"].items()))
    for c in rec["contractions"]:
        lines.append(f"contraction at ({','.join(map(str, c['class']))}): {c['type']}")
    return "\n".join(lines) + "\n"
