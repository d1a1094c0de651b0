import io

import numpy as np
import pytest

from dissect.burnside.c_chain import CHAIN_MAGIC, c_chain
from dissect.burnside.chain import dump_chain, load_chain
from dissect.burnside.exceptions import ChainFormatError
from dissect.burnside.phi import ChainComplex, phi_cube_linearize


def roundtrip(chain_complex: ChainComplex) -> ChainComplex:
    fh = io.BytesIO()
    written = dump_chain(chain_complex, fh)
    assert written == len(fh.getvalue())
    fh.seek(0)
    return load_chain(fh)


def test_chain_hopf(hopf) -> None:
    cube = phi_cube_linearize(hopf)
    loaded = roundtrip(cube)

    assert loaded.min_degree == cube.min_degree
    assert loaded.dims == cube.dims == (4, 4, 4)
    for ours, theirs in zip(cube.differentials, loaded.differentials):
        assert np.array_equal(ours % 2, theirs)
    assert loaded.homology() == cube.homology()


def test_chain_single_degree() -> None:
    loaded = roundtrip(ChainComplex(-1, (3,), ()))
    assert loaded.min_degree == -1
    assert loaded.dims == (3,)
    assert loaded.differentials == ()


def header(**kwargs) -> bytes:
    fields = {"magic": CHAIN_MAGIC, "version": 1, "degrees": 2, "min_degree": 0, "dims": [1, 1]}
    fields.update(kwargs)
    return c_chain.chain_header(**fields).dumps()


def block(rows: int, cols: int, entries: list[tuple[int, int]]) -> bytes:
    items = [c_chain.chain_entry(row=row, col=col) for row, col in entries]
    return c_chain.chain_block(rows=rows, cols=cols, nnz=len(items), entries=items).dumps()


@pytest.mark.parametrize(
    "data",
    [
        b"",
        b"BSCH\x01",
        header(magic=b"FAT1") + block(1, 1, [(0, 0)]),
        header(version=2) + block(1, 1, [(0, 0)]),
        header(),
        header() + block(2, 1, []),
        header() + block(1, 1, [(0, 1)]),
    ],
    ids=["empty", "truncated-header", "magic", "version", "truncated-block", "shape", "entry"],
)
def test_chain_invalid(data: bytes) -> None:
    with pytest.raises(ChainFormatError):
        load_chain(io.BytesIO(data))
