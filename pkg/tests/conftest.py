import os
from pathlib import Path

import pytest
from click.testing import CliRunner

from treecode.barcode import StrictBarcode
from treecode.config import _CONFIG_TEMPLATE, TreecodeConfig
from treecode.formats.newick import parse_newick
from treecode.mergetree import MergeTree
from treecode.utils import CliContext
from tests.utils import tree_from_edges


@pytest.fixture()
def dummy_config() -> TreecodeConfig:
    return _CONFIG_TEMPLATE.copy(deep=True)


@pytest.fixture()
def cli_context(dummy_config) -> CliContext:
    return CliContext(dummy_config)


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


@pytest.fixture()
def cherry_tree() -> MergeTree:
    """Two leaves at 0 and 1 merging at 2."""
    return tree_from_edges({"a": "x", "b": "x", "x": "r"}, {"a": 0.0, "b": 1.0, "x": 2.0})


@pytest.fixture()
def three_leaf_tree() -> MergeTree:
    """Leaves 1 and 2 merge at 3, then meet leaf 0 at 4."""
    return tree_from_edges(
        {"l0": "y", "l1": "x", "l2": "x", "x": "y", "y": "r"},
        {"l0": 0.0, "l1": 1.0, "l2": 2.0, "x": 3.0, "y": 4.0},
    )


@pytest.fixture()
def nested_barcode() -> StrictBarcode:
    return StrictBarcode(0.0, ((1.0, 7.0), (2.0, 6.0), (3.0, 5.0), (4.0, 8.0)))


@pytest.fixture()
def reversed_barcode() -> StrictBarcode:
    return StrictBarcode(0.0, ((1.0, 8.0), (2.0, 7.0), (3.0, 6.0), (4.0, 5.0)))


@pytest.fixture()
def balanced_phylo():
    return parse_newick("((A:1.0,B:2.0):1.0,(C:1.5,D:0.6):2.25):0.5;")


@pytest.fixture()
def caterpillar_phylo():
    return parse_newick("(((A,B),C),D);")


@pytest.fixture
def in_temp_dir(tmp_path: Path):
    original_cwd = os.getcwd()

    os.chdir(tmp_path)

    yield tmp_path

    os.chdir(original_cwd)
