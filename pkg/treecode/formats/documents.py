"""
JSON documents for barcodes and merge trees. Decoding and validation problems surface as a single
``DocumentError`` carrying the offending field or the line and column of the JSON error.
"""
import json
import logging
from typing import Dict, Iterator, List, Optional, TextIO, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError

from treecode.barcode import RawBarcode, StrictBarcode
from treecode.mergetree import MergeTree, validate
from treecode.phylo import LabelledMergeTree

logger = logging.getLogger(__name__)

D = TypeVar("D", bound=BaseModel)


class DocumentError(ValueError):
    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        super().__init__(message)
        self.field = field
        self.line = line
        self.column = column


class BarcodeDocument(BaseModel):
    essential_birth: float
    bars: List[Tuple[float, float]]

    @classmethod
    def from_barcode(cls, barcode: RawBarcode) -> "BarcodeDocument":
        return cls(essential_birth=barcode.essential_birth, bars=list(barcode.bars))

    def to_barcode(self) -> StrictBarcode:
        return StrictBarcode(self.essential_birth, tuple(self.bars))


class MergeTreeNodeDocument(BaseModel):
    parent: Optional[str]
    height: Optional[float]


class MergeTreeDocument(BaseModel):
    root: str
    nodes: Dict[str, MergeTreeNodeDocument]

    @classmethod
    def from_tree(cls, tree: MergeTree) -> "MergeTreeDocument":
        return cls.parse_obj(tree.to_dict())

    def to_tree(self) -> MergeTree:
        return validate(self.dict())


class LabelledMergeTreeDocument(MergeTreeDocument):
    labels: Dict[str, str]

    @classmethod
    def from_labelled(cls, labelled: LabelledMergeTree) -> "LabelledMergeTreeDocument":
        return cls(**labelled.tree.to_dict(), labels=dict(labelled.labels))

    def to_labelled(self) -> LabelledMergeTree:
        return LabelledMergeTree(validate(self.dict(exclude={"labels"})), self.labels)


def parse_document(cls: Type[D], text: str, line: Optional[int] = None) -> D:
    """``line`` is the 1-based line the document starts on, used for diagnostics."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(
            f"Invalid JSON: {e.msg}", line=e.lineno + (line - 1 if line else 0), column=e.colno
        ) from e
    try:
        return cls.parse_obj(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise DocumentError(
            f"Invalid {cls.__name__}: {field}: {first['msg']}",
            field=field,
            line=line,
        ) from e


def read_document(cls: Type[D], stream: TextIO) -> D:
    return parse_document(cls, stream.read())


def iter_documents(cls: Type[D], stream: TextIO) -> Iterator[D]:
    """Newline-delimited JSON, blank lines skipped."""
    for number, text in enumerate(stream, start=1):
        if text.strip():
            yield parse_document(cls, text.rstrip("\r\n"), line=number)


def write_document(document: BaseModel, stream: TextIO):
    stream.write(document.json())
    stream.write("\n")


def read_barcode(stream: TextIO) -> StrictBarcode:
    return read_document(BarcodeDocument, stream).to_barcode()


def read_merge_tree(stream: TextIO) -> MergeTree:
    return read_document(MergeTreeDocument, stream).to_tree()


def write_barcode(barcode: RawBarcode, stream: TextIO):
    write_document(BarcodeDocument.from_barcode(barcode), stream)


def write_merge_tree(tree: MergeTree, stream: TextIO):
    write_document(MergeTreeDocument.from_tree(tree), stream)
