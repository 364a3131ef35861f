"""Reading and writing the ``.alg`` (algebra) and ``.rep`` (module) text formats.

``.alg``::

    # comments run to end of line
    field Q                 # or: field F 5
    quiver
      vertices 3
      arrow a : 1 -> 2
    relations
      J 2                   # all paths of length 2
      a*b - 2/3 c*d         # paths compose left to right

``.rep``::

    module X over paper_A.alg
    dim 1 1 0
    map a = [[1]]           # rows = target dimension; omitted maps are zero
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path as FsPath

from ..errors import ParseError
from ..exact_linalg import FieldSpec, Matrix, QQ
from ..quiver_algebra import Arrow, BoundQuiverAlgebra, Path, Quiver, RelationSet, build_algebra
from ..representations import Representation

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_NUMBER = re.compile(r"\d+(/\d+)?\Z")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _col(raw: str, token: str) -> int:
    i = raw.find(token)
    return i + 1 if i >= 0 else 1


def parse_field(text: str) -> FieldSpec:
    """``Q``, ``F 5``, ``F5`` or ``f5``."""
    t = text.replace(" ", "")
    if t in ("Q", "q", "QQ"):
        return QQ
    m = re.fullmatch(r"[Ff](\d+)", t)
    if not m:
        raise ValueError(f"unknown field {text!r}")
    return FieldSpec(int(m.group(1)))


def parse_alg(text: str, source: str | None = None) -> tuple[Quiver, RelationSet, FieldSpec]:
    """Parse ``.alg`` text into (quiver, relations, field)."""
    field = QQ
    nverts = None
    arrows: list[Arrow] = []
    names: dict[str, int] = {}
    raw_rels: list[tuple[int, str, str]] = []
    rad_powers: list[int] = []
    section = None
    seen_field = False

    def err(msg, ln, raw="", tok=""):
        return ParseError(msg, ln, _col(raw, tok) if tok else 1, source)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue
        words = line.split()
        head = words[0]
        if head == "field":
            if seen_field:
                raise err("duplicate field declaration", ln, raw, head)
            try:
                field = parse_field(" ".join(words[1:]))
            except ValueError as e:
                raise err(str(e), ln, raw, words[1] if len(words) > 1 else head) from None
            seen_field = True
            section = None
            continue
        if head in ("quiver", "relations") and len(words) == 1:
            section = head
            continue
        if section == "quiver":
            if head == "vertices":
                if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                    raise err("expected 'vertices <positive integer>'", ln, raw, head)
                nverts = int(words[1])
                continue
            if head == "arrow":
                m = re.fullmatch(r"\s*arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", line)
                if not m:
                    raise err("expected 'arrow <name> : <i> -> <j>'", ln, raw, head)
                name, s, t = m.groups()
                if not _NAME.match(name):
                    raise err(f"bad arrow name {name!r}", ln, raw, name)
                if name in names:
                    raise err(f"duplicate arrow {name!r}", ln, raw, name)
                if nverts is None:
                    raise err("'vertices' must precede arrows", ln, raw, head)
                for tok in (s, t):
                    if not tok.isdigit() or not 1 <= int(tok) <= nverts:
                        raise err(f"unknown vertex {tok!r}", ln, raw, tok)
                names[name] = len(arrows)
                arrows.append(Arrow(name, int(s), int(t)))
                continue
            raise err(f"unexpected {head!r} in quiver block", ln, raw, head)
        if section == "relations":
            if head == "J":
                if len(words) != 2 or not words[1].isdigit():
                    raise err("expected 'J <m>'", ln, raw, head)
                rad_powers.append(int(words[1]))
                continue
            raw_rels.append((ln, raw, line))
            continue
        raise err(f"unexpected {head!r}", ln, raw, head)
    if nverts is None:
        raise ParseError("missing 'vertices' declaration", None, None, source)
    q = Quiver(nverts, arrows)
    rels = []
    for ln, raw, line in raw_rels:
        rels.append(_parse_relation(q, names, line, ln, raw, source))
    for m in rad_powers:
        if m < 2:
            raise ParseError(f"J {m} is not admissible (need m >= 2)", None, None, source)
    return q, RelationSet(tuple(rels), tuple(rad_powers)), field


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_']*(?:\s*\*\s*[A-Za-z_][A-Za-z0-9_']*)*)\s*")


def _parse_relation(q: Quiver, names, line, ln, raw, source):
    pos = 0
    terms = []
    while pos < len(line):
        if not line[pos:].strip():
            break
        m = _TERM.match(line, pos)
        if not m or m.end() == pos or (terms and m.group(1) is None):
            raise ParseError(f"cannot parse relation term at {line[pos:].strip()!r}", ln, pos + 1, source)
        sign, coeff, path = m.groups()
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        arrow_names = [p.strip() for p in path.split("*")]
        idx = []
        for nm in arrow_names:
            if nm not in names:
                raise ParseError(f"unknown arrow {nm!r}", ln, _col(raw, nm), source)
            idx.append(names[nm])
        for x, y in zip(idx, idx[1:]):
            if q.arrows[x].target != q.arrows[y].source:
                raise ParseError(f"path {path.strip()!r} is not composable", ln, _col(raw, path.strip()), source)
        p = Path(q.arrows[idx[0]].source, q.arrows[idx[-1]].target, tuple(idx))
        terms.append((c, p))
        pos = m.end()
    if not terms:
        raise ParseError("empty relation", ln, 1, source)
    ends = {(p.source, p.target) for _, p in terms}
    if len(ends) != 1:
        raise ParseError("relation mixes paths with different endpoints", ln, 1, source)
    for _, p in terms:
        if p.length < 2:
            raise ParseError("relation term shorter than 2 (not admissible)", ln, 1, source)
    return tuple(terms)


def _fmt_scalar(c) -> str:
    fr = Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator") else Fraction(c)
    return str(fr)


def format_relation(q: Quiver, rel) -> str:
    out = []
    for k, (c, p) in enumerate(rel):
        fr = Fraction(_fmt_scalar(c))
        sign = "-" if fr < 0 else "+"
        mag = abs(fr)
        body = p.label(q)
        text = body if mag == 1 else f"{mag} {body}"
        if k == 0:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f"{sign} {text}")
    return " ".join(out)


def emit_alg(q: Quiver, rels: RelationSet, field: FieldSpec, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"field {field.label}")
    lines.append("quiver")
    lines.append(f"  vertices {q.vertex_count}")
    for a in q.arrows:
        lines.append(f"  arrow {a.name} : {a.source} -> {a.target}")
    lines.append("relations")
    for m in rels.rad_powers:
        lines.append(f"  J {m}")
    for r in rels.relations:
        lines.append(f"  {format_relation(q, r)}")
    return "\n".join(lines) + "\n"


def load_alg(path, field: FieldSpec | None = None, len_cap: int = 20) -> BoundQuiverAlgebra:
    text = FsPath(path).read_text()
    q, rels, fld = parse_alg(text, str(path))
    return build_algebra(q, rels, field or fld, len_cap)


# ----------------------------------------------------------------------------
# modules
# ----------------------------------------------------------------------------

def _parse_matrix(text: str, ln: int, raw: str, source) -> list[list[Fraction]]:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError("matrix must be written [[...],[...]]", ln, _col(raw, t[:1]), source)
    inner = t[1:-1].strip()
    if not inner:
        return []
    rows = []
    for m in re.finditer(r"\[([^\[\]]*)\]|([^\s,])", inner):
        if m.group(2) is not None:
            raise ParseError(f"unexpected {m.group(2)!r} in matrix", ln, _col(raw, m.group(2)), source)
        body = m.group(1).strip()
        row = []
        if body:
            for tok in body.split(","):
                tok = tok.strip()
                try:
                    row.append(Fraction(tok))
                except ValueError:
                    raise ParseError(f"bad matrix entry {tok!r}", ln, _col(raw, tok), source) from None
        rows.append(row)
    return rows


def parse_rep(text: str, algebra: BoundQuiverAlgebra | None = None, source: str | None = None,
              base_dir=None, len_cap: int = 20) -> list[Representation]:
    """Parse one or more module blocks.  Without ``algebra`` the ``over`` file is loaded."""
    blocks = []
    cur = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue
        words = line.split()
        if words[0] == "module":
            m = re.fullmatch(r"\s*module\s+(\S+)\s+over\s+(\S+)\s*", line)
            if not m:
                raise ParseError("expected 'module <name> over <algfile>'", ln, 1, source)
            cur = {"name": m.group(1), "over": m.group(2), "dims": None, "maps": {}, "line": ln}
            blocks.append(cur)
            continue
        if cur is None:
            raise ParseError("expected 'module' header", ln, 1, source)
        if words[0] == "dim":
            try:
                cur["dims"] = [int(w) for w in words[1:]]
            except ValueError:
                raise ParseError("dimensions must be integers", ln, 1, source) from None
            continue
        if words[0] == "map":
            m = re.fullmatch(r"\s*map\s+(\S+)\s*=\s*(.*)", line)
            if not m:
                raise ParseError("expected 'map <arrow> = [[...]]'", ln, 1, source)
            cur["maps"][m.group(1)] = (_parse_matrix(m.group(2), ln, raw, source), ln, raw)
            continue
        raise ParseError(f"unexpected {words[0]!r}", ln, _col(raw, words[0]), source)
    out = []
    for b in blocks:
        alg = algebra
        if alg is None:
            base = FsPath(base_dir) if base_dir else FsPath(".")
            alg = load_alg(base / b["over"], len_cap=len_cap)
        if b["dims"] is None:
            raise ParseError(f"module {b['name']}: missing 'dim' line", b["line"], 1, source)
        if len(b["dims"]) != alg.n:
            raise ParseError(f"module {b['name']}: {len(b['dims'])} dimensions for {alg.n} vertices", b["line"], 1, source)
        q = alg.quiver
        f = alg.field
        maps = {}
        for name, (rows, ln, raw) in b["maps"].items():
            if name not in q.index:
                raise ParseError(f"unknown arrow {name!r}", ln, _col(raw, name), source)
            arr = q.arrows[q.index[name]]
            r, c = b["dims"][arr.target - 1], b["dims"][arr.source - 1]
            if len(rows) != r or any(len(row) != c for row in rows):
                raise ParseError(f"map {name}: expected a {r}x{c} matrix", ln, 1, source)
            maps[name] = Matrix(f, [[f(x) for x in row] for row in rows], c)
        try:
            rep = Representation(alg, b["dims"], maps, name=b["name"])
        except ValueError as e:
            raise ParseError(f"module {b['name']}: {e}", b["line"], 1, source) from None
        out.append(rep)
    return out


def load_rep(path, algebra: BoundQuiverAlgebra | None = None) -> list[Representation]:
    p = FsPath(path)
    return parse_rep(p.read_text(), algebra, str(path), p.parent)


def emit_rep(rep: Representation, algfile: str, name: str | None = None) -> str:
    q = rep.algebra.quiver
    lines = [f"module {name or rep.name or 'X'} over {algfile}",
             "dim " + " ".join(str(d) for d in rep.dims)]
    for i, a in enumerate(q.arrows):
        m = rep.maps[i]
        if m.is_zero():
            continue
        rows = ", ".join("[" + ", ".join(_fmt_scalar(x) for x in row) + "]" for row in m.tolist())
        lines.append(f"map {a.name} = [{rows}]")
    return "\n".join(lines) + "\n"
