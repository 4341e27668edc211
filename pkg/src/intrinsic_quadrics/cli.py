"""``iq``: command line front end.

Exit codes: 0 success, 1 internal error, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import classify as cl
from .normalform import NotHomogeneous, ZeroForm, normalize_quadric, standard_form
from .quadric import (
    AmpleClassNotInMovingInterior,
    FaceLimitExceeded,
    InvalidGrading,
    QuadricVariety,
    SearchBoundExceeded,
    Unsupported,
    WNotEffective,
    new_quadric,
)
from .report import analysis_record, cone_dict, normal_form_dict, render_text
from .setupfile import SetupFile, SetupFormatError, emit_text, load, to_json

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


INPUT_ERRORS = (
    SetupFormatError,
    InvalidGrading,
    AmpleClassNotInMovingInterior,
    FaceLimitExceeded,
    NotHomogeneous,
    ZeroForm,
    WNotEffective,
    Unsupported,
    InputError,
    OSError,
)


def _load_variety(path: str) -> tuple[QuadricVariety, object]:
    sf = load(path)
    nf = None
    if sf.is_raw:
        nf = normalize_quadric(sf.to_form())
        try:
            setup = nf.to_setup()
            return new_quadric(setup, sf.ample), nf
        except ValueError as e:
            raise InputError(f"normal form (q,t) = ({nf.q},{nf.t}), singular locus dim {nf.sing_dim}: {e}") from e
    else:
        try:
            setup = sf.to_setup()
        except ValueError as e:
            raise InputError(str(e)) from e
    return new_quadric(setup, sf.ample), nf


def cmd_analyze(args) -> int:
    X, nf = _load_variety(args.file)
    rec = analysis_record(X, nf)
    sys.stdout.write(json.dumps(rec, indent=2) + "\n" if args.json else render_text(rec))
    return EXIT_OK


def cmd_normal_form(args) -> int:
    sf = load(args.file)
    if sf.is_raw:
        f = sf.to_form()
    else:
        q, t, _ = sf.blocks
        f = standard_form(q, t, sf.elements())
    nf = normalize_quadric(f)
    d = normal_form_dict(nf)
    if args.json:
        print(json.dumps({"schema": "iq-normal-form/1", **d, "setup": to_json(SetupFile.from_setup(nf.to_setup()))}, indent=2))
        return EXIT_OK
    print(f"# (q,t) = ({nf.q},{nf.t}), singular locus dim {nf.sing_dim}")
    print("# variable order: " + " ".join(f"T{i}" for i in d["permutation"]))
    for step in d["steps"]:
        print(f"# {step}")
    sys.stdout.write(emit_text(SetupFile.from_setup(nf.to_setup())))
    return EXIT_OK


def _write_item(k: int, item: cl.Item, out: Path | None) -> None:
    X = item.variety
    text = f"# {item.constellation.label()}\n" + emit_text(SetupFile.from_setup(X.setup, X.u))
    if out is None:
        sys.stdout.write(f"# item {k}\n" + text)
    else:
        (out / f"item_{k:04d}.iq").write_text(text)
        print(f"{k}: {item.constellation.label()}")
    sys.stdout.flush()


def cmd_classify(args) -> int:
    fano = "fano" if args.fano else "almost-fano" if args.almost_fano else None
    out = Path(args.out) if args.out else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    if args.picard == 3:
        if not args.full or args.n_max is None or args.a_max is None:
            raise InputError("--picard 3 needs --full, --n-max and --a-max")
        if args.dim is not None or fano:
            raise InputError("--picard 3 takes no --dim or Fano filter")
        stream = cl.iter_items(cl.iter_full_picard3(args.n_max, args.a_max), cl.check_p3)
    else:
        if args.full or args.n_max is not None or args.a_max is not None:
            raise InputError("--full, --n-max and --a-max only apply to --picard 3")
        if args.dim is None:
            raise InputError(f"--picard {args.picard} needs --dim")
        if args.picard == 1:
            if args.alpha_max is not None:
                raise InputError("--alpha-max only applies to --picard 2")
            stream = (it for it in cl.enumerate_picard1(args.dim) if cl._passes(it.variety, fano))
        else:
            if args.alpha_max is None and args.dim > 3:
                raise InputError("--alpha-max is required: the families are infinite above dimension 3")
            # in dimension 3 no constellation depends on alpha
            alpha_max = 0 if args.alpha_max is None else args.alpha_max
            cons = sorted(set(cl.iter_picard2(args.dim, alpha_max)))
            stream = cl.iter_items(cons, cl.check_p2, True, fano)
    counts: dict[str, int] = {}
    total = 0
    for item in stream:
        total += 1
        tag = item.variety.fano_status().tag.value
        counts[tag] = counts.get(tag, 0) + 1
        _write_item(total, item, out)
    detail = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
    print(f"# total: {total} items ({detail})" if total else "# total: 0 items")
    return EXIT_OK


def _parse_class(text: str, rank: int) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as e:
        raise InputError(f"bad class {text!r}") from e
    if len(vals) != rank:
        raise InputError(f"class needs {rank} entries, got {len(vals)}")
    return vals


def cmd_chamber(args) -> int:
    X, _ = _load_variety(args.file)
    w = _parse_class(args.cls, X.rank)
    lam = X.chamber(w)
    tag = X.classify_contraction(w)
    if args.json:
        print(json.dumps({"schema": "iq-chamber/1", "class": list(w), "chamber": cone_dict(lam), "type": tag.value}, indent=2))
        return EXIT_OK
    rays = " ".join("(" + ",".join(map(str, r)) + ")" for r in lam.rays)
    print(f"chamber: dim {lam.dim()}, rays {rays}")
    print(f"contraction: {tag.value}")
    return EXIT_OK


def cmd_fujita(args) -> int:
    X, _ = _load_variety(args.file)
    data = X.monoid_data(args.bound)
    saturated = all(d.saturated for d in data)
    if args.json:
        print(json.dumps({
            "schema": "iq-fujita/1",
            "saturated": saturated,
            "faces": [
                {"face": list(d.face.indices), "generators": [list(g.free) for g in d.generators],
                 "hilbert_basis": [list(h) for h in d.hilbert_basis], "saturated": d.saturated}
                for d in data
            ],
        }, indent=2))
        return EXIT_OK
    for d in data:
        gens = " ".join("(" + ",".join(map(str, g.free)) + ")" for g in d.generators)
        hb = " ".join("(" + ",".join(map(str, h)) + ")" for h in d.hilbert_basis)
        print(f"face {{{','.join(map(str, d.face.indices))}}}: generators {gens}; Hilbert basis {hb}; saturated={d.saturated}")
    print(f"saturated: {saturated}")
    if saturated:
        print("every nef class is base point free")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iq", description="Intrinsic quadrics: analysis and classification")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis of a setup file")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    n = sub.add_parser("normal-form", help="bring a quadratic form into standard shape")
    n.add_argument("file")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_normal_form)

    c = sub.add_parser("classify", help="enumerate classification lists")
    c.add_argument("--picard", type=int, choices=(1, 2, 3), required=True)
    c.add_argument("--dim", type=int)
    c.add_argument("--alpha-max", type=int)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--fano", action="store_true")
    g.add_argument("--almost-fano", action="store_true")
    c.add_argument("--out")
    c.add_argument("--full", action="store_true")
    c.add_argument("--n-max", type=int)
    c.add_argument("--a-max", type=int)
    c.set_defaults(func=cmd_classify)

    ch = sub.add_parser("chamber", help="GIT chamber and contraction type of a class")
    ch.add_argument("file")
    ch.add_argument("--class", dest="cls", required=True)
    ch.add_argument("--json", action="store_true")
    ch.set_defaults(func=cmd_chamber)

    f = sub.add_parser("fujita", help="saturation of the base point free monoids")
    f.add_argument("file")
    f.add_argument("--bound", type=int, default=1_000_000)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fujita)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        print(f"iq: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        # bad numeric bounds, e.g. --dim 2
        print(f"iq: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (cl.ClassificationMismatch, SearchBoundExceeded) as e:
        print(f"iq: error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:  # noqa: BLE001
        print(f"iq: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
