from treecode.formats.documents import (
    BarcodeDocument,
    DocumentError,
    LabelledMergeTreeDocument,
    MergeTreeDocument,
    iter_documents,
    read_barcode,
    read_document,
    read_merge_tree,
    write_barcode,
    write_document,
    write_merge_tree,
)
from treecode.formats.newick import NewickParseError, parse_newick, to_newick
from treecode.formats.streams import open_input, open_output

__all__ = [
    "BarcodeDocument",
    "DocumentError",
    "LabelledMergeTreeDocument",
    "MergeTreeDocument",
    "NewickParseError",
    "iter_documents",
    "open_input",
    "open_output",
    "parse_newick",
    "read_barcode",
    "read_document",
    "read_merge_tree",
    "to_newick",
    "write_barcode",
    "write_document",
    "write_merge_tree",
]
