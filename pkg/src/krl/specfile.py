"""The declarative text format for structures, operators, and morphisms.

Documents are line oriented: a header line names the kind, then one
section per line as ``key: entry ; entry ; ...``.  Tables must be
complete (every pair present), names resolve against the declared
carrier, and subset-valued elements are written as brace tokens like
``{a b}`` which the tokenizer treats as single names.  Powerset-backed
algebras are stored by their generating Krivine structure and never
expanded.  Emission is canonical (fixed section order, sorted rows), so
parse after emit is the identity and emit after parse is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .aks import AbstractKrivineStructure
from .bridge import FunctorImageIA, algebra_of, functor_A_obj
from .errors import IncompleteTable, ParseError, SpecFileError, UnknownElement
from .implicative import ImplicativeAlgebra, ImplicativeStructure
from .interior import InteriorOperator
from .morphism import DensityCertificate, MorphismSpec
from .order import ExplicitLattice, PowersetLattice, bits

KIND_SECTIONS = {
    "lattice": ("elements", "order"),
    "ia": ("elements", "order", "imp", "separator", "k", "s"),
    "ia-powerset": ("pi", "perp", "push", "app", "qp", "K", "S"),
    "aks": ("pi", "perp", "push", "app", "qp", "K", "S"),
    "interior": ("map",),
    "morphism": ("map", "hint-h", "hint-t", "hint-r"),
}
UNSORTED_SECTIONS = {"elements", "pi"}
OPTIONAL_SECTIONS = {"hint-h", "hint-t", "hint-r", "order", "perp"}
SINGLETON_SECTIONS = {"k", "s", "K", "S", "hint-t", "hint-r"}
LIST_SECTIONS = {"elements", "pi", "separator", "qp"}


@dataclass(frozen=True)
class SpecDocument:
    kind: str                      # lattice | ia | aks | interior | morphism
    name: str | None
    sections: tuple                # ((key, (entry, ...)), ...), entry = token tuple
    subkind: str | None = None     # morphism: ia | aks
    base: str | None = None        # interior: name of the carrier structure
    source_name: str | None = None
    target_name: str | None = None
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    def section(self, key):
        for k, entries in self.sections:
            if k == key:
                return entries
        return None

    @property
    def display_name(self) -> str:
        if self.name is not None:
            return self.name
        return f"{self.base}:interior"


def _normalize_sections(kind_key: str, raw: dict) -> tuple:
    out = []
    for key in KIND_SECTIONS[kind_key]:
        if key not in raw:
            continue
        entries = tuple(raw[key])
        if key not in UNSORTED_SECTIONS:
            entries = tuple(sorted(entries))
        out.append((key, entries))
    return tuple(out)


def tokenize(payload: str, line_no: int) -> list[str]:
    tokens = []
    i, n = 0, len(payload)
    while i < n:
        ch = payload[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            tokens.append(";")
            i += 1
        elif ch == "{":
            j = payload.find("}", i)
            if j < 0:
                raise ParseError("unclosed brace token", line_no, "'}'")
            tokens.append(payload[i:j + 1])
            i = j + 1
        elif ch == "}":
            raise ParseError("unmatched '}'", line_no)
        else:
            j = i
            while j < n and not payload[j].isspace() and payload[j] not in ";{}":
                j += 1
            tokens.append(payload[i:j])
            i = j
    return tokens


def _split_entries(tokens: list[str]) -> list[list[str]]:
    entries, current = [], []
    for tok in tokens:
        if tok == ";":
            entries.append(current)
            current = []
        else:
            current.append(tok)
    entries.append(current)
    return [e for e in entries if e]


def _quoted(text: str, line_no: int) -> str:
    text = text.strip()
    if not (text.startswith('"') and text.endswith('"') and len(text) >= 2):
        raise ParseError(f"expected a quoted name, got '{text}'", line_no, '"..."')
    return text[1:-1]


def parse_spec(text: str) -> SpecDocument:
    """Parse one document; positions go into the error, completeness and
    name resolution are checked as far as the document is self-contained."""
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            lines.append((no, body.strip()))
    if not lines:
        raise ParseError("empty document", 1, "a header line")

    header_no, header = lines[0]
    kind = name = subkind = base = source_name = target_name = None
    if header.startswith("structure "):
        rest = header[len("structure "):]
        parts = rest.split(None, 1)
        if len(parts) != 2 or parts[0] not in ("lattice", "ia", "aks"):
            raise ParseError("bad structure header", header_no,
                             'structure lattice|ia|aks "name"')
        kind = parts[0]
        name = _quoted(parts[1], header_no)
    elif header.startswith("interior"):
        rest = header[len("interior"):].strip()
        if rest.startswith('"'):
            close = rest.find('"', 1)
            if close < 0:
                raise ParseError("bad interior header", header_no)
            name = rest[1:close]
            rest = rest[close + 1:].strip()
        if not rest.startswith("on "):
            raise ParseError("bad interior header", header_no,
                             'interior ["name"] on "base"')
        kind = "interior"
        base = _quoted(rest[3:], header_no)
    elif header.startswith("morphism "):
        rest = header[len("morphism "):]
        parts = rest.split(None, 1)
        if len(parts) != 2 or parts[0] not in ("ia", "aks"):
            raise ParseError("bad morphism header", header_no,
                             'morphism ia|aks "name" from "X" to "Y"')
        kind = "morphism"
        subkind = parts[0]
        tail = parts[1]
        try:
            name_part, tail = tail.split(" from ", 1)
            src_part, tgt_part = tail.split(" to ", 1)
        except ValueError:
            raise ParseError("bad morphism header", header_no,
                             '... from "X" to "Y"') from None
        name = _quoted(name_part, header_no)
        source_name = _quoted(src_part, header_no)
        target_name = _quoted(tgt_part, header_no)
    else:
        raise ParseError(f"unrecognized header '{header}'", header_no,
                         "structure|interior|morphism")

    raw_sections: dict[str, list] = {}
    section_lines: dict[str, int] = {}
    for no, body in lines[1:]:
        if ":" not in body:
            raise ParseError(f"expected 'key: ...', got '{body}'", no)
        key, payload = body.split(":", 1)
        key = key.strip()
        if key in raw_sections:
            raise ParseError(f"duplicate section '{key}'", no)
        raw_sections[key] = _split_entries(tokenize(payload, no))
        section_lines[key] = no

    kind_key = kind
    if kind == "ia" and "pi" in raw_sections:
        kind_key = "ia-powerset"
    allowed = set(KIND_SECTIONS[kind_key])
    for key in raw_sections:
        if key not in allowed:
            raise ParseError(f"section '{key}' not allowed in a {kind} document",
                             section_lines[key], "/".join(sorted(allowed)))
    shaped = {}
    for key, entries in raw_sections.items():
        if key in LIST_SECTIONS:
            shaped[key] = [(tok,) for entry in entries for tok in entry]
        else:
            shaped[key] = [tuple(e) for e in entries]
        for entry in shaped[key]:
            _check_entry_shape(key, entry, section_lines.get(key, header_no))
        if key in SINGLETON_SECTIONS and len(shaped[key]) > 1:
            raise ParseError(f"section '{key}' takes a single element",
                             section_lines[key])
    for key in KIND_SECTIONS[kind_key]:
        if key not in shaped and key not in OPTIONAL_SECTIONS:
            raise ParseError(f"missing section '{key}'", header_no)
        shaped.setdefault(key, [])

    doc = SpecDocument(kind, name, _normalize_sections(kind_key, shaped),
                       subkind, base, source_name, target_name,
                       lines=section_lines)
    _validate_document(doc, kind_key)
    return doc


def _check_entry_shape(key, entry, line_no):
    shapes = {
        "elements": 1, "pi": 1, "separator": 1, "qp": 1,
        "k": 1, "s": 1, "K": 1, "S": 1, "hint-t": 1, "hint-r": 1,
        "perp": 2,
    }
    if key in shapes:
        if len(entry) != shapes[key]:
            raise ParseError(f"bad entry in '{key}': {' '.join(entry)}", line_no)
    elif key == "order":
        if len(entry) != 3 or entry[1] != "<=":
            raise ParseError(f"bad order entry: {' '.join(entry)}", line_no, "a <= b")
    elif key in ("imp", "push", "app"):
        if len(entry) != 4 or entry[2] != "->":
            raise ParseError(f"bad {key} entry: {' '.join(entry)}", line_no, "a b -> c")
    elif key in ("map", "hint-h"):
        if len(entry) != 3 or entry[1] != "->":
            raise ParseError(f"bad {key} entry: {' '.join(entry)}", line_no, "a -> b")


def _validate_document(doc: SpecDocument, kind_key: str) -> None:
    if kind_key in ("lattice", "ia"):
        names = [e[0] for e in doc.section("elements")]
        _check_carrier(names, "elements")
        _check_names(doc, ("order", "imp", "separator", "k", "s"), set(names))
        if kind_key == "ia":
            _check_table(doc, "imp", names, names)
    elif kind_key in ("aks", "ia-powerset"):
        names = [e[0] for e in doc.section("pi")]
        _check_carrier(names, "pi")
        _check_names(doc, ("perp", "push", "app", "qp", "K", "S"), set(names))
        _check_table(doc, "push", names, names)
        _check_table(doc, "app", names, names)


def _check_carrier(names, section):
    if not names:
        raise ParseError(f"'{section}' must declare at least one element")
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate element in '{section}'")


def _check_names(doc, keys, known):
    for key in keys:
        entries = doc.section(key) or ()
        for entry in entries:
            for tok in entry:
                if tok in ("->", "<="):
                    continue
                if tok not in known:
                    raise UnknownElement(tok, f"section '{key}'")


def _check_table(doc, key, left_names, right_names):
    seen = {}
    for entry in doc.section(key):
        pair = (entry[0], entry[1])
        if pair in seen:
            raise ParseError(f"duplicate {key} entry for {pair[0]} {pair[1]}")
        seen[pair] = entry[3 if len(entry) == 4 else 2]
    missing = [f"{a} {b}" for a in left_names for b in right_names
               if (a, b) not in seen]
    if missing:
        raise IncompleteTable(key, missing)


def emit_spec(doc: SpecDocument) -> str:
    """Canonical rendering; inverse to :func:`parse_spec`."""
    if doc.kind in ("lattice", "ia", "aks"):
        header = f'structure {doc.kind} "{doc.name}"'
    elif doc.kind == "interior":
        header = (f'interior on "{doc.base}"' if doc.name is None
                  else f'interior "{doc.name}" on "{doc.base}"')
    elif doc.kind == "morphism":
        header = (f'morphism {doc.subkind} "{doc.name}" '
                  f'from "{doc.source_name}" to "{doc.target_name}"')
    else:
        raise SpecFileError(f"cannot emit kind '{doc.kind}'")
    out = [header]
    for key, entries in doc.sections:
        if not entries and key in OPTIONAL_SECTIONS:
            continue
        sep = " " if key in LIST_SECTIONS else " ; "
        out.append(f"{key}: " + sep.join(" ".join(e) for e in entries))
    return "\n".join(out) + "\n"


# ------------------------------------------------------- objects <-> docs


def _element_resolver(obj):
    """Name -> id and id -> name for any carrier-bearing object."""
    if isinstance(obj, AbstractKrivineStructure):
        return (lambda tok: obj.names.index(tok)), obj.name
    lattice = obj.lattice if not isinstance(obj, (ExplicitLattice, PowersetLattice)) else obj
    return lattice.index_of, lattice.name


def build_lattice(doc: SpecDocument) -> ExplicitLattice:
    names = [e[0] for e in doc.section("elements")]
    idx = {n: i for i, n in enumerate(names)}
    pairs = [(idx[a], idx[b]) for a, _, b in doc.section("order") or ()]
    return ExplicitLattice.from_pairs(names, pairs)


def build_algebra(doc: SpecDocument):
    if doc.section("pi") is not None:
        return functor_A_obj(build_aks(doc), validate=False)
    lattice = build_lattice(doc)
    idx = lattice.index_of
    n = lattice.size
    table = [[0] * n for _ in range(n)]
    for a, b, _, c in doc.section("imp"):
        table[idx(a)][idx(b)] = idx(c)
    structure = ImplicativeStructure(lattice, tuple(map(tuple, table)))
    separator = frozenset(idx(e[0]) for e in doc.section("separator"))
    return ImplicativeAlgebra(structure, separator,
                              idx(doc.section("k")[0][0]),
                              idx(doc.section("s")[0][0]))


def build_aks(doc: SpecDocument) -> AbstractKrivineStructure:
    names = tuple(e[0] for e in doc.section("pi"))
    idx = names.index
    n = len(names)
    rows = [0] * n
    for t, pi in doc.section("perp") or ():
        rows[idx(t)] |= 1 << idx(pi)
    push = [[0] * n for _ in range(n)]
    app = [[0] * n for _ in range(n)]
    for a, b, _, c in doc.section("push"):
        push[idx(a)][idx(b)] = idx(c)
    for a, b, _, c in doc.section("app"):
        app[idx(a)][idx(b)] = idx(c)
    qp = 0
    for (e,) in doc.section("qp"):
        qp |= 1 << idx(e)
    return AbstractKrivineStructure(
        names, tuple(rows), tuple(map(tuple, push)), tuple(map(tuple, app)),
        qp, idx(doc.section("K")[0][0]), idx(doc.section("S")[0][0]))


def lattice_of(obj):
    if isinstance(obj, (ExplicitLattice, PowersetLattice)):
        return obj
    if isinstance(obj, AbstractKrivineStructure):
        return PowersetLattice(obj.names)
    return algebra_of(obj).lattice


def build_interior(doc: SpecDocument, base_obj) -> InteriorOperator:
    lattice = lattice_of(base_obj)
    idx = lattice.index_of
    table = {}
    for a, _, b in doc.section("map"):
        ia = idx(a)
        if ia in table:
            raise ParseError(f"duplicate map entry for {a}")
        table[ia] = idx(b)
    missing = [lattice.name(a) for a in lattice.elements() if a not in table]
    if missing:
        raise IncompleteTable("map", missing)
    return InteriorOperator(lattice, tuple(table[a] for a in lattice.elements()))


def build_morphism(doc: SpecDocument, source_obj, target_obj):
    """Returns the morphism together with any hinted certificate."""
    if doc.subkind == "ia":
        src, tgt = algebra_of(source_obj), algebra_of(target_obj)
        src_idx, _ = _element_resolver(src.lattice)
        tgt_idx, _ = _element_resolver(tgt.lattice)
        size = src.lattice.size
    else:
        from .bridge import aks_of
        src, tgt = aks_of(source_obj), aks_of(target_obj)
        src_idx, tgt_idx = src.names.index, tgt.names.index
        size = src.pi_size
    table = {}
    for a, _, b in doc.section("map"):
        table[src_idx(a)] = tgt_idx(b)
    missing = [a for a in range(size) if a not in table]
    if missing:
        raise IncompleteTable("map", [str(m) for m in missing])
    spec = MorphismSpec(doc.subkind, src, tgt,
                        tuple(table[a] for a in range(size)), doc.name)

    hint = None
    if doc.section("hint-t"):
        if doc.subkind == "ia":
            h_src, h_tgt = tgt_idx, src_idx
        else:
            pl_src = PowersetLattice(src.names)
            pl_tgt = PowersetLattice(tgt.names)
            h_src, h_tgt = pl_tgt.index_of, pl_src.index_of
        h = {h_src(a): h_tgt(b) for a, _, b in doc.section("hint-h") or ()}
        t = doc.section("hint-t")[0][0]
        r_sec = doc.section("hint-r")
        t_id = tgt_idx(t)
        r_id = tgt_idx(r_sec[0][0]) if r_sec else None
        hint = DensityCertificate.make(t_id, h, r_id)
    return spec, hint


def document_for(obj, name: str, **meta) -> SpecDocument:
    """Render a library object as a document."""
    if isinstance(obj, ExplicitLattice):
        sections = {
            "elements": [(n,) for n in obj.names],
            "order": [(obj.names[a], "<=", obj.names[b]) for a, b in obj.pairs()],
        }
        return SpecDocument("lattice", name, _normalize_sections("lattice", sections))
    if isinstance(obj, FunctorImageIA):
        inner = document_for(obj.source_aks, name)
        return SpecDocument("ia", name, inner.sections)
    if isinstance(obj, ImplicativeAlgebra):
        if isinstance(obj.lattice, PowersetLattice):
            raise SpecFileError(
                "powerset algebras are stored by their generating structure")
        L = obj.lattice
        sections = {
            "elements": [(n,) for n in L.names],
            "order": [(L.names[a], "<=", L.names[b]) for a, b in L.pairs()],
            "imp": [(L.names[a], L.names[b], "->", L.names[obj.imp(a, b)])
                    for a in L.elements() for b in L.elements()],
            "separator": [(L.names[x],) for x in sorted(obj.separator)],
            "k": [(L.names[obj.k],)],
            "s": [(L.names[obj.s],)],
        }
        return SpecDocument("ia", name, _normalize_sections("ia", sections))
    if isinstance(obj, AbstractKrivineStructure):
        nm = obj.names
        sections = {
            "pi": [(n,) for n in nm],
            "perp": [(nm[t], nm[pi]) for t in range(obj.pi_size)
                     for pi in bits(obj.perp_rows[t])],
            "push": [(nm[a], nm[b], "->", nm[obj.push[a][b]])
                     for a in range(obj.pi_size) for b in range(obj.pi_size)],
            "app": [(nm[a], nm[b], "->", nm[obj.app[a][b]])
                    for a in range(obj.pi_size) for b in range(obj.pi_size)],
            "qp": [(nm[x],) for x in bits(obj.qp)],
            "K": [(nm[obj.k_elem],)],
            "S": [(nm[obj.s_elem],)],
        }
        return SpecDocument("aks", name, _normalize_sections("aks", sections))
    if isinstance(obj, InteriorOperator):
        L = obj.lattice
        sections = {"map": [(L.name(a), "->", L.name(obj.table[a]))
                            for a in L.elements()]}
        return SpecDocument("interior", meta.get("op_name"),
                            _normalize_sections("interior", sections),
                            base=name)
    if isinstance(obj, MorphismSpec):
        _, src_name = _element_resolver(obj.source)
        _, tgt_name = _element_resolver(obj.target)
        sections = {"map": [(src_name(a), "->", tgt_name(obj.carrier[a]))
                            for a in range(len(obj.carrier))]}
        cert = meta.get("cert")
        if cert is not None:
            if obj.kind == "ia":
                h_nm_src, h_nm_tgt = tgt_name, src_name
            else:
                h_nm_src = PowersetLattice(obj.target.names).name
                h_nm_tgt = PowersetLattice(obj.source.names).name
            sections["hint-h"] = [(h_nm_src(b), "->", h_nm_tgt(s))
                                  for b, s in cert.h]
            sections["hint-t"] = [(tgt_name(cert.t),)]
            if cert.r is not None:
                sections["hint-r"] = [(tgt_name(cert.r),)]
        return SpecDocument("morphism", name,
                            _normalize_sections("morphism", sections),
                            subkind=obj.kind,
                            source_name=meta.get("source_name", "source"),
                            target_name=meta.get("target_name", "target"))
    raise SpecFileError(f"cannot render a {type(obj).__name__} as a document")


class Workspace:
    """Named documents with cross-references resolved into objects."""

    def __init__(self):
        self.documents: dict[str, SpecDocument] = {}
        self.objects: dict[str, object] = {}
        self.morphism_hints: dict[str, DensityCertificate | None] = {}

    def add_text(self, text: str) -> SpecDocument:
        doc = parse_spec(text)
        key = doc.display_name
        if key in self.documents:
            raise SpecFileError(f"duplicate document name '{key}'")
        self.documents[key] = doc
        return doc

    def add_path(self, path) -> SpecDocument:
        with open(path, encoding="utf-8") as fh:
            return self.add_text(fh.read())

    def resolve(self) -> None:
        for key, doc in self.documents.items():
            if doc.kind == "lattice":
                self.objects[key] = build_lattice(doc)
            elif doc.kind == "ia":
                self.objects[key] = build_algebra(doc)
            elif doc.kind == "aks":
                self.objects[key] = build_aks(doc)
        for key, doc in self.documents.items():
            if doc.kind == "interior":
                self.objects[key] = build_interior(doc, self._lookup(doc.base))
            elif doc.kind == "morphism":
                spec, hint = build_morphism(doc, self._lookup(doc.source_name),
                                            self._lookup(doc.target_name))
                self.objects[key] = spec
                self.morphism_hints[key] = hint

    def _lookup(self, name: str):
        if name not in self.objects:
            raise UnknownElement(name, "workspace (structure not loaded)")
        return self.objects[name]

    def get(self, name: str):
        return self._lookup(name)
