"""Concept syntax: the AST, naturalness, normalization and printers.

Concepts are immutable and hashable so they can key fact tables in the
inference engine. Conjunction is binary in the AST; `normalize` produces a
canonical left-nested form used when facts are matched.
"""
from dataclasses import dataclass
from typing import AbstractSet, Iterator, List, Set, Union

from .exceptions import NaturalnessError


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "Concept"


@dataclass(frozen=True)
class Between:
    left: "Concept"
    right: "Concept"


Concept = Union[Top, Bot, Atom, And, Exists, Between]

TOP = Top()
BOT = Bot()


def is_natural(concept: Concept, natural_atoms: AbstractSet[str], intra_roles: AbstractSet[str]) -> bool:
    if isinstance(concept, (Top, Bot)):
        return True
    if isinstance(concept, Atom):
        return concept.name in natural_atoms
    if isinstance(concept, And):
        return is_natural(concept.left, natural_atoms, intra_roles) and is_natural(
            concept.right, natural_atoms, intra_roles
        )
    if isinstance(concept, Exists):
        return concept.role in intra_roles and is_natural(concept.filler, natural_atoms, intra_roles)
    if isinstance(concept, Between):
        return is_natural(concept.left, natural_atoms, intra_roles) and is_natural(
            concept.right, natural_atoms, intra_roles
        )
    raise TypeError(f"not a concept: {concept!r}")


def check_between(concept: Concept, natural_atoms: AbstractSet[str], intra_roles: AbstractSet[str]) -> None:
    """Raise NaturalnessError on any in-between concept with a non-natural side"""
    for sub in subconcepts(concept):
        if isinstance(sub, Between):
            for side in (sub.left, sub.right):
                if not is_natural(side, natural_atoms, intra_roles):
                    raise NaturalnessError("in-between concept over a non-natural concept", to_sexpr(side))


def require_natural(concept: Concept, natural_atoms: AbstractSet[str], intra_roles: AbstractSet[str]) -> None:
    if not is_natural(concept, natural_atoms, intra_roles):
        raise NaturalnessError("natural concept required", to_sexpr(concept))


def subconcepts(concept: Concept) -> Iterator[Concept]:
    yield concept
    if isinstance(concept, (And, Between)):
        yield from subconcepts(concept.left)
        yield from subconcepts(concept.right)
    elif isinstance(concept, Exists):
        yield from subconcepts(concept.filler)


def atom_names(concept: Concept) -> Set[str]:
    return {sub.name for sub in subconcepts(concept) if isinstance(sub, Atom)}


def role_names(concept: Concept) -> Set[str]:
    return {sub.role for sub in subconcepts(concept) if isinstance(sub, Exists)}


def conjuncts(concept: Concept) -> List[Concept]:
    if isinstance(concept, And):
        return conjuncts(concept.left) + conjuncts(concept.right)
    return [concept]


def conjoin(parts: List[Concept]) -> Concept:
    if not parts:
        return TOP
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def depth(concept: Concept) -> int:
    if isinstance(concept, And):
        parts = conjuncts(concept)
        return len(parts) - 1 + max(depth(part) for part in parts)
    if isinstance(concept, Exists):
        return 1 + depth(concept.filler)
    if isinstance(concept, Between):
        return 1 + max(depth(concept.left), depth(concept.right))
    return 0


def sort_key(concept: Concept) -> str:
    return to_sexpr(concept)


def normalize(concept: Concept) -> Concept:
    if isinstance(concept, And):
        parts: List[Concept] = []
        for part in conjuncts(concept):
            part = normalize(part)
            if isinstance(part, Bot):
                return BOT
            if not isinstance(part, Top) and part not in parts:
                parts.append(part)
        return conjoin(sorted(parts, key=sort_key))
    if isinstance(concept, Exists):
        return Exists(concept.role, normalize(concept.filler))
    if isinstance(concept, Between):
        left, right = sorted((normalize(concept.left), normalize(concept.right)), key=sort_key)
        return Between(left, right)
    return concept


def to_sexpr(concept: Concept) -> str:
    if isinstance(concept, Top):
        return "top"
    if isinstance(concept, Bot):
        return "bot"
    if isinstance(concept, Atom):
        return concept.name
    if isinstance(concept, And):
        return f"(and {to_sexpr(concept.left)} {to_sexpr(concept.right)})"
    if isinstance(concept, Exists):
        return f"(some {concept.role} {to_sexpr(concept.filler)})"
    if isinstance(concept, Between):
        return f"(btw {to_sexpr(concept.left)} {to_sexpr(concept.right)})"
    raise TypeError(f"not a concept: {concept!r}")


def to_dl(concept: Concept, nested: bool = False) -> str:
    """Render in DL notation, e.g. `Young ⊓ Cat` or `∃specifies.Building`"""
    if isinstance(concept, Top):
        return "⊤"
    if isinstance(concept, Bot):
        return "⊥"
    if isinstance(concept, Atom):
        return concept.name
    if isinstance(concept, Exists):
        return f"∃{concept.role}.{to_dl(concept.filler, nested=True)}"
    if isinstance(concept, And):
        text = " ⊓ ".join(to_dl(part, nested=True) for part in conjuncts(concept))
    else:
        text = f"{to_dl(concept.left, nested=True)} ⋈ {to_dl(concept.right, nested=True)}"
    return f"({text})" if nested else text
