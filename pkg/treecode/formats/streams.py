import logging
import sys
from contextlib import contextmanager
from typing import Iterator, Optional, TextIO

import fsspec

logger = logging.getLogger(__name__)

STDIO = "-"


@contextmanager
def open_input(path: Optional[str]) -> Iterator[TextIO]:
    """Text stream for ``path``: stdin for ``-``, otherwise any fsspec URL, compression inferred."""
    if path in (None, STDIO):
        yield sys.stdin
        return
    logger.debug("Reading %s", path)
    with fsspec.open(path, "rt", compression="infer") as f:
        yield f


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    if path in (None, STDIO):
        yield sys.stdout
        sys.stdout.flush()
        return
    logger.debug("Writing %s", path)
    with fsspec.open(path, "wt", compression="infer") as f:
        yield f
