"""Text and JSON formats for graded setups.

Block mode::

    group rank=2 torsion=
    blocks q=4 t=1 m=1
    deg 0 1 |
    deg 2 1 |
    ...
    ample 3 2

Raw mode replaces the ``blocks`` line by ``raw vars=<s>`` plus ``coef i j a``
lines (1-based variable indices, ``i <= j``, rational ``a``) describing an
arbitrary homogeneous quadratic form.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .abelian import FgAbelianGroup, GroupElement
from .grading import GradedSetup
from .normalform import QuadraticForm

SCHEMA = "iq-setup/1"


class SetupFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SetupFile:
    rank: int
    torsion: tuple[int, ...]
    degrees: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    blocks: tuple[int, int, int] | None = None
    ample: tuple[int, ...] | None = None
    raw_vars: int | None = None
    coefficients: tuple[tuple[int, int, Fraction], ...] = field(default=())

    @property
    def group(self) -> FgAbelianGroup:
        return FgAbelianGroup(self.rank, self.torsion)

    @property
    def is_raw(self) -> bool:
        return self.raw_vars is not None

    def elements(self) -> tuple[GroupElement, ...]:
        K = self.group
        return tuple(K.element(f, t) for f, t in self.degrees)

    def to_setup(self) -> GradedSetup:
        if self.blocks is None:
            raise SetupFormatError("raw-mode file: run the normal form first")
        q, t, m = self.blocks
        return GradedSetup(self.group, self.elements(), q, t, m)

    def to_form(self) -> QuadraticForm:
        if not self.is_raw:
            raise SetupFormatError("block-mode file has no raw coefficients")
        coeffs: dict[tuple[int, int], Fraction] = {}
        for i, j, a in self.coefficients:
            key = (min(i, j) - 1, max(i, j) - 1)
            coeffs[key] = coeffs.get(key, Fraction(0)) + a
        return QuadraticForm(self.raw_vars, coeffs, self.elements())

    @classmethod
    def from_setup(cls, s: GradedSetup, ample: GroupElement | tuple | None = None) -> "SetupFile":
        amp = None if ample is None else tuple(ample.free if isinstance(ample, GroupElement) else ample)
        return cls(
            s.group.rank,
            s.group.torsion,
            tuple((w.free, w.tors) for w in s.degrees),
            (s.q, s.t, s.m),
            amp,
        )


def _ints(tokens: list[str], what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in tokens)
    except ValueError as e:
        raise SetupFormatError(f"bad integer in {what}: {' '.join(tokens)}") from e


def _keyvals(tokens: list[str], lineno: int) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise SetupFormatError(f"line {lineno}: expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def parse_text(text: str) -> SetupFile:
    rank = torsion = None
    blocks = ample = raw_vars = None
    degrees: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    coefs: list[tuple[int, int, Fraction]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "group":
            kv = _keyvals(rest, lineno)
            rank = _ints([kv.get("rank", "")], "rank")[0]
            tors = kv.get("torsion", "")
            torsion = _ints([x for x in tors.split(",") if x], "torsion")
        elif head == "blocks":
            kv = _keyvals(rest, lineno)
            blocks = tuple(_ints([kv.get(k, "") for k in "qtm"], "blocks"))
        elif head == "raw":
            kv = _keyvals(rest, lineno)
            raw_vars = _ints([kv.get("vars", "")], "raw")[0]
        elif head == "deg":
            body = " ".join(rest)
            free_s, _, tors_s = body.partition("|")
            degrees.append((_ints(free_s.split(), "deg"), _ints(tors_s.split(), "deg")))
        elif head == "coef":
            if len(rest) != 3:
                raise SetupFormatError(f"line {lineno}: coef needs i j a")
            i, j = _ints(rest[:2], "coef")
            try:
                a = Fraction(rest[2])
            except ValueError as e:
                raise SetupFormatError(f"line {lineno}: bad coefficient {rest[2]!r}") from e
            coefs.append((i, j, a))
        elif head == "ample":
            ample = _ints(rest, "ample")
        else:
            raise SetupFormatError(f"line {lineno}: unknown keyword {head!r}")
    if rank is None:
        raise SetupFormatError("missing 'group' line")
    if (blocks is None) == (raw_vars is None):
        raise SetupFormatError("need exactly one of 'blocks' and 'raw'")
    return _checked(SetupFile(rank, torsion, tuple(degrees), blocks, ample, raw_vars, tuple(coefs)))


def _checked(sf: SetupFile) -> SetupFile:
    try:
        K = sf.group
    except ValueError as e:
        raise SetupFormatError(str(e)) from e
    for f, t in sf.degrees:
        if len(f) != K.rank or len(t) not in (0, len(K.torsion)):
            raise SetupFormatError(f"degree {f} | {t} does not fit {K}")
    expected = sum(sf.blocks) if sf.blocks else sf.raw_vars
    if len(sf.degrees) != expected:
        raise SetupFormatError(f"expected {expected} deg lines, got {len(sf.degrees)}")
    if sf.ample is not None and len(sf.ample) != K.rank:
        raise SetupFormatError(f"ample class needs {K.rank} entries")
    for i, j, _ in sf.coefficients:
        if not (1 <= i <= expected and 1 <= j <= expected):
            raise SetupFormatError(f"coef index out of range: {i} {j}")
    # normalize torsion entries so that emit(parse(x)) is canonical
    degs = tuple((f, sf.group.element(f, t).tors) for f, t in sf.degrees)
    return SetupFile(sf.rank, sf.torsion, degs, sf.blocks, sf.ample, sf.raw_vars, sf.coefficients)


def emit_text(sf: SetupFile) -> str:
    lines = [f"group rank={sf.rank} torsion={','.join(map(str, sf.torsion))}"]
    if sf.is_raw:
        lines.append(f"raw vars={sf.raw_vars}")
        lines += [f"coef {i} {j} {a}" for i, j, a in sf.coefficients]
    else:
        q, t, m = sf.blocks
        lines.append(f"blocks q={q} t={t} m={m}")
    for f, t in sf.degrees:
        tail = (" " + " ".join(map(str, t))) if t else ""
        lines.append(f"deg {' '.join(map(str, f))} |{tail}")
    if sf.ample is not None:
        lines.append("ample " + " ".join(map(str, sf.ample)))
    return "\n".join(lines) + "\n"


def to_json(sf: SetupFile) -> dict:
    d: dict = {
        "schema": SCHEMA,
        "group": {"rank": sf.rank, "torsion": list(sf.torsion)},
        "degrees": [{"free": list(f), "tors": list(t)} for f, t in sf.degrees],
    }
    if sf.is_raw:
        d["raw"] = {"num_vars": sf.raw_vars, "coefficients": [[i, j, str(a)] for i, j, a in sf.coefficients]}
    else:
        q, t, m = sf.blocks
        d["blocks"] = {"q": q, "t": t, "m": m}
    if sf.ample is not None:
        d["ample"] = list(sf.ample)
    return d


def from_json(d: dict) -> SetupFile:
    try:
        g = d["group"]
        degrees = tuple((tuple(x["free"]), tuple(x.get("tors", ()))) for x in d["degrees"])
        blocks = raw_vars = None
        coefs: tuple = ()
        if "blocks" in d:
            b = d["blocks"]
            blocks = (int(b["q"]), int(b["t"]), int(b["m"]))
        if "raw" in d:
            raw_vars = int(d["raw"]["num_vars"])
            coefs = tuple((int(i), int(j), Fraction(str(a))) for i, j, a in d["raw"]["coefficients"])
        if (blocks is None) == (raw_vars is None):
            raise SetupFormatError("need exactly one of 'blocks' and 'raw'")
        ample = tuple(d["ample"]) if d.get("ample") is not None else None
        sf = SetupFile(int(g["rank"]), tuple(g.get("torsion", ())), degrees, blocks, ample, raw_vars, coefs)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, SetupFormatError):
            raise
        raise SetupFormatError(f"malformed JSON setup: {e}") from e
    return _checked(sf)


def parse(text: str) -> SetupFile:
    if text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise SetupFormatError(f"invalid JSON: {e}") from e
    return parse_text(text)


def load(path: str | Path) -> SetupFile:
    return parse(Path(path).read_text())
