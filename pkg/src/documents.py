"""Interpretation documents, TBox files and the bundled fixtures.

A bundled fixture can be named wherever a path is accepted: `fx-zoo`,
`fx-spec`, any corpus id such as `ce-desid-1`, and the TBoxes `example1`
and `example2`.
"""
import json
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Tuple, Union

import structlog
from pydantic import ValidationError

from .exceptions import DocumentError
from .features import AnalogyStructure, FeatureSpace
from .model import Individual, Interpretation, KappaTable
from .parser import parse_tbox
from .schemas import CorpusEntry, IndividualRef, InterpretationDocument, KappaDocument, KappaEntry
from .tbox import TBox

logger = structlog.get_logger(__name__)

DATA_DIR = Path(__file__).resolve().parent / "data"
CORPUS_DIR = DATA_DIR / "corpus"

InterpretationSource = Union[str, Path, InterpretationDocument, Mapping[str, Any]]


def list_fixtures() -> List[str]:
    names = [p.stem for p in sorted(DATA_DIR.glob("*.json"))]
    return names + list_corpus()


def list_corpus() -> List[str]:
    return [p.stem for p in sorted(CORPUS_DIR.glob("*.json"))]


def list_tboxes() -> List[str]:
    return [p.stem for p in sorted(DATA_DIR.glob("*.tbox"))]


def resolve_path(ref: Union[str, Path], suffix: str) -> Path:
    path = Path(ref)
    if path.is_file():
        return path
    name = str(ref).lower()
    for candidate in (DATA_DIR / f"{name}{suffix}", CORPUS_DIR / f"{name}{suffix}"):
        if candidate.is_file():
            return candidate
    raise DocumentError(f"'{ref}' is neither a file nor a bundled fixture")


def read_document(ref: Union[str, Path]) -> InterpretationDocument:
    path = resolve_path(ref, ".json")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if isinstance(raw, dict) and "interpretation" in raw and "checks" in raw:
        raw = raw["interpretation"]
    return parse_document(raw, source=str(path))


def parse_document(raw: Mapping[str, Any], source: str = "<document>") -> InterpretationDocument:
    try:
        return InterpretationDocument.model_validate(raw)
    except ValidationError as exc:
        raise DocumentError(f"{source}: malformed interpretation document: {exc}") from exc


def read_corpus_entry(ref: Union[str, Path]) -> CorpusEntry:
    path = resolve_path(ref, ".json")
    try:
        return CorpusEntry.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise DocumentError(f"{path}: malformed corpus entry: {exc}") from exc


def _individual(ref: IndividualRef, extras: Mapping[str, Individual]) -> Individual:
    if isinstance(ref, str):
        if ref not in extras:
            raise DocumentError(f"unknown individual '{ref}'")
        return extras[ref]
    return Individual(frozenset(ref))


def _kappa_table(role: str, document: KappaDocument) -> KappaTable:
    entries: Dict[FrozenSet[str], FrozenSet[str]] = {}
    for entry in document.tables:
        key = frozenset(entry.source)
        if key in entries and entries[key] != frozenset(entry.image):
            raise DocumentError(f"kappa for role '{role}' gives two images for {sorted(key)}")
        entries[key] = frozenset(entry.image)
    return KappaTable(role, document.mode, entries)


def from_document(document: InterpretationDocument, enumeration_cap: int = 16) -> Interpretation:
    universe = frozenset(document.features)
    forbidden = [universe if x == "ALL" else frozenset(x) for x in document.forbidden]
    space = FeatureSpace.build(document.features, document.domains, forbidden)
    analogy = AnalogyStructure.build(space, document.analogous, document.bijection_pairs())

    extras = {name: Individual(frozenset(features), name) for name, features in document.individuals.items()}
    plain = {
        name: frozenset(_individual(ref, extras) for ref in refs)
        for name, refs in document.plain_atoms.items()
    }
    roles = {
        name: frozenset((_individual(d, extras), _individual(e, extras)) for d, e in pairs)
        for name, pairs in document.roles.items()
    }
    kappa = {role: _kappa_table(role, table) for role, table in document.kappa.items()}
    return Interpretation(
        space=space,
        analogy=analogy,
        mode=document.mode,
        natural_atoms={name: frozenset(features) for name, features in document.natural_atoms.items()},
        plain_atoms=plain,
        roles=roles,
        kappa=kappa,
        extras=tuple(sorted(extras.values(), key=Individual.sort_key)),
        enumeration_cap=enumeration_cap,
    )


def _ref(individual: Individual) -> IndividualRef:
    return individual.name if individual.name is not None else sorted(individual.features)


def _spanning_bijections(interp: Interpretation) -> Tuple[List[Tuple[int, int]], Dict[str, Dict[str, str]]]:
    analogy = interp.analogy
    if analogy.given:
        pairs = sorted(analogy.given)
        mappings = analogy.given
    else:
        pairs = [(min(members), j) for members in analogy.classes for j in sorted(members) if j != min(members)]
        mappings = {pair: analogy.sigma[pair] for pair in pairs if pair in analogy.sigma}
    analogous = sorted(set(analogy.generators) | set(pairs))
    bijections = {f"{s}->{t}": dict(sorted(mappings[(s, t)].items())) for s, t in sorted(mappings)}
    return analogous, bijections


def to_document(interp: Interpretation, description: str = None) -> InterpretationDocument:
    space = interp.space
    forbidden: List[Any] = []
    for x in space.forbidden:
        if x == space.universe:
            if "ALL" not in forbidden:
                forbidden.append("ALL")
        else:
            forbidden.append(sorted(x))
    analogous, bijections = _spanning_bijections(interp)
    kappa = {
        role: KappaDocument(
            mode=table.mode,
            tables=[
                KappaEntry(source=sorted(key), image=sorted(value))
                for key, value in sorted(table.entries.items(), key=lambda item: sorted(item[0]))
            ],
        )
        for role, table in sorted(interp.kappa.items())
    }
    return InterpretationDocument(
        description=description,
        features=list(space.features),
        domains=[sorted(block) for block in space.partition],
        forbidden=forbidden,
        analogous=analogous,
        bijections=bijections,
        mode=interp.mode,
        natural_atoms={name: sorted(features) for name, features in sorted(interp.natural_atoms.items())},
        plain_atoms={
            name: [_ref(d) for d in sorted(members, key=Individual.sort_key)]
            for name, members in sorted(interp.plain_atoms.items())
        },
        individuals={d.name: sorted(d.features) for d in interp.extras},
        roles={
            name: [(_ref(d), _ref(e)) for d, e in sorted(pairs, key=lambda p: (p[0].sort_key(), p[1].sort_key()))]
            for name, pairs in sorted(interp.roles.items())
        },
        kappa=kappa,
    )


def load_interpretation(source: InterpretationSource, enumeration_cap: int = 16) -> Interpretation:
    if isinstance(source, InterpretationDocument):
        document = source
    elif isinstance(source, Mapping):
        document = parse_document(source)
    else:
        document = read_document(source)
    interp = from_document(document, enumeration_cap)
    logger.debug("interpretation_loaded", features=len(interp.space.features), domains=interp.space.k,
                 mode=interp.mode)
    return interp


def dump_interpretation(interp: Interpretation, path: Union[str, Path], description: str = None) -> Path:
    path = Path(path)
    text = to_document(interp, description).model_dump_json(indent=2, exclude_none=True)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def load_tbox(ref: Union[str, Path]) -> TBox:
    """Read a TBox from a file, a bundled name, or literal TBox text"""
    text = str(ref)
    if isinstance(ref, Path) or "\n" not in text:
        try:
            path = resolve_path(ref, ".tbox")
        except DocumentError:
            if isinstance(ref, Path) or not text.split(None, 1) or text.split(None, 1)[0] not in (
                "natural", "intra", "ci", "ana", "sana", "nonempty"
            ):
                raise
        else:
            return parse_tbox(path.read_text(encoding="utf-8"), source=path.name)
    return parse_tbox(text)
