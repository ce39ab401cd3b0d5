"""Parser and serializer for the group description files.

The format is line oriented with two block kinds::

    base {
      kind = abelian            # or: free
      generators = a b c d
      relator c = ab            # word pair lhs = rhs; rhs may be omitted
    }
    stable s {                  # one block per stable letter
      u = [a]                   # words over the base generators
      v = [d]
    }

Words use the compact syntax of the words module.  '#' starts a comment.
A file with no stable blocks describes a plain base group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .base_groups import AbelianOracle, BaseGroupOracle, FreeOracle
from .hnn import AssociatedPair, HnnSpec
from .subgroups import cyclic_subgroup, stallings_subgroup
from .words import Alphabet, Word, format_word, parse_word


class SpecFileError(ValueError):
    def __init__(self, message: str, line_no: Optional[int] = None):
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(message + where)
        self.line_no = line_no


@dataclass
class StableBlock:
    name: str
    u_words: list[str] = field(default_factory=list)
    v_words: list[str] = field(default_factory=list)


@dataclass
class SpecAst:
    kind: str = ""
    generators: list[str] = field(default_factory=list)
    relators: list[tuple[str, Optional[str]]] = field(default_factory=list)
    stables: list[StableBlock] = field(default_factory=list)


def parse_spec_text(text: str) -> SpecAst:
    ast = SpecAst()
    block: Optional[str] = None
    current_stable: Optional[StableBlock] = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith("{"):
            head = line[:-1].split()
            if block is not None:
                raise SpecFileError("nested block", line_no)
            if head == ["base"]:
                block = "base"
            elif len(head) == 2 and head[0] == "stable":
                block = "stable"
                current_stable = StableBlock(head[1])
                ast.stables.append(current_stable)
            else:
                raise SpecFileError(f"unknown block header {line!r}", line_no)
            continue
        if line == "}":
            if block is None:
                raise SpecFileError("unmatched '}'", line_no)
            block = None
            current_stable = None
            continue
        if block == "base":
            if line.startswith("kind"):
                ast.kind = _after_eq(line, line_no)
            elif line.startswith("generators"):
                ast.generators = _after_eq(line, line_no).split()
            elif line.startswith("relator"):
                body = line[len("relator"):].strip()
                if "=" in body:
                    lhs, rhs = (part.strip() for part in body.split("=", 1))
                    ast.relators.append((lhs, rhs))
                else:
                    ast.relators.append((body, None))
            else:
                raise SpecFileError(f"unknown base entry {line!r}", line_no)
        elif block == "stable":
            if line.startswith("u") or line.startswith("v"):
                side = line[0]
                words = _word_list(_after_eq(line, line_no), line_no)
                if side == "u":
                    current_stable.u_words = words
                else:
                    current_stable.v_words = words
            else:
                raise SpecFileError(f"unknown stable entry {line!r}", line_no)
        else:
            raise SpecFileError(f"content outside a block: {line!r}", line_no)
    if block is not None:
        raise SpecFileError("unterminated block")
    if ast.kind not in ("abelian", "free"):
        raise SpecFileError(f"base kind must be 'abelian' or 'free', got {ast.kind!r}")
    if not ast.generators:
        raise SpecFileError("base block must declare generators")
    return ast


def _after_eq(line: str, line_no: int) -> str:
    if "=" not in line:
        raise SpecFileError(f"expected '=' in {line!r}", line_no)
    return line.split("=", 1)[1].strip()


def _word_list(body: str, line_no: int) -> list[str]:
    if not (body.startswith("[") and body.endswith("]")):
        raise SpecFileError(f"expected [w1, w2, ...], got {body!r}", line_no)
    inner = body[1:-1].strip()
    if not inner:
        return []
    return [part.strip() for part in inner.split(",")]


def serialize_ast(ast: SpecAst) -> str:
    lines = ["base {", f"  kind = {ast.kind}", f"  generators = {' '.join(ast.generators)}"]
    for lhs, rhs in ast.relators:
        lines.append(f"  relator {lhs} = {rhs}" if rhs is not None else f"  relator {lhs}")
    lines.append("}")
    for st in ast.stables:
        lines.append(f"stable {st.name} {{")
        lines.append(f"  u = [{', '.join(st.u_words)}]")
        lines.append(f"  v = [{', '.join(st.v_words)}]")
        lines.append("}")
    return "\n".join(lines) + "\n"


def ast_of(obj: Union[HnnSpec, BaseGroupOracle]) -> SpecAst:
    """Reconstruct the declarative description of a built object."""
    ast = SpecAst()
    if isinstance(obj, HnnSpec):
        base = obj.base
        for pair, gen in zip(obj.pairs, obj.alphabet.stable_generators):
            ast.stables.append(
                StableBlock(
                    gen.name,
                    [format_word(w) for w in pair.u.generator_words],
                    [format_word(w) for w in pair.v.generator_words],
                )
            )
    else:
        base = obj
    ast.generators = [g.name for g in base.alphabet.generators]
    if isinstance(base, AbelianOracle):
        ast.kind = "abelian"
        ast.relators = [(format_word(r), None) for r in base.relators]
    elif isinstance(base, FreeOracle):
        ast.kind = "free"
    else:
        raise TypeError(f"cannot serialize base oracle of type {type(base).__name__}")
    return ast


def build_from_ast(ast: SpecAst, name: str = "") -> Union[HnnSpec, BaseGroupOracle]:
    base_alphabet = Alphabet.make(ast.generators)

    def base_word(text: str) -> Word:
        return parse_word(base_alphabet, text)

    relator_words = []
    for lhs, rhs in ast.relators:
        w = base_word(lhs)
        if rhs is not None:
            from .words import invert

            w = w * invert(base_word(rhs))
        relator_words.append(w)

    if ast.kind == "abelian":
        base: BaseGroupOracle = AbelianOracle(base_alphabet, relator_words)
    else:
        if relator_words:
            raise SpecFileError("free base groups take no relators")
        base = FreeOracle(base_alphabet)

    if not ast.stables:
        return base

    pairs = []
    for st in ast.stables:
        if not st.u_words or not st.v_words:
            raise SpecFileError(f"stable {st.name}: u and v word lists are required")
        if len(st.u_words) != len(st.v_words):
            raise SpecFileError(
                f"stable {st.name}: u and v must list the same number of words"
            )
        u_words = [base_word(t) for t in st.u_words]
        v_words = [base_word(t) for t in st.v_words]
        if isinstance(base, AbelianOracle):
            if len(u_words) != 1:
                raise SpecFileError(
                    f"stable {st.name}: abelian bases support single-generator "
                    "(cyclic) associated subgroups only"
                )
            u_sub = cyclic_subgroup(base, u_words[0])
            v_sub = cyclic_subgroup(base, v_words[0])
        else:
            u_sub = stallings_subgroup(base, u_words)
            v_sub = stallings_subgroup(base, v_words)
        pairs.append(AssociatedPair(u_sub, v_sub))
    return HnnSpec(base, [st.name for st in ast.stables], pairs, name=name)


def load_spec_text(text: str, name: str = "") -> Union[HnnSpec, BaseGroupOracle]:
    return build_from_ast(parse_spec_text(text), name=name)
