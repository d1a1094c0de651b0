from __future__ import annotations

import logging
import os
from typing import BinaryIO

import numpy as np

from dissect.burnside.c_chain import CHAIN_MAGIC, CHAIN_VERSION, c_chain
from dissect.burnside.exceptions import ChainFormatError
from dissect.burnside.phi import ChainComplex

__all__ = ["dump_chain", "load_chain"]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_CHAIN", "CRITICAL"))


def dump_chain(chain_complex: ChainComplex, fh: BinaryIO) -> int:
    """Write ``chain_complex`` in the binary chain format and return the number of bytes written.

    The differentials are stored as sparse F2 matrices: one ``(row, col)`` pair per odd entry.
    """
    header = c_chain.chain_header(
        magic=CHAIN_MAGIC,
        version=CHAIN_VERSION,
        degrees=len(chain_complex.dims),
        min_degree=chain_complex.min_degree,
        dims=list(chain_complex.dims),
    )
    written = fh.write(header.dumps())

    for k, d in enumerate(chain_complex.differentials):
        entries = [c_chain.chain_entry(row=row, col=col) for row, col in chain_complex.sparse(k)]
        block = c_chain.chain_block(rows=d.shape[0], cols=d.shape[1], nnz=len(entries), entries=entries)
        written += fh.write(block.dumps())

    log.debug("Wrote chain complex with dimensions %s (%d bytes)", chain_complex.dims, written)
    return written


def load_chain(fh: BinaryIO) -> ChainComplex:
    """Read a chain complex written by :func:`dump_chain`."""
    try:
        header = c_chain.chain_header(fh)
    except EOFError:
        raise ChainFormatError("Truncated chain header")

    if header.magic != CHAIN_MAGIC:
        raise ChainFormatError(f"Invalid chain magic: {header.magic!r}")

    if header.version != CHAIN_VERSION:
        raise ChainFormatError(f"Unsupported chain version: {header.version}")

    dims = tuple(header.dims)
    differentials = []
    for k in range(max(len(dims) - 1, 0)):
        try:
            block = c_chain.chain_block(fh)
        except EOFError:
            raise ChainFormatError(f"Truncated differential block {k}")

        if (block.rows, block.cols) != (dims[k + 1], dims[k]):
            raise ChainFormatError(
                f"Differential {k} has shape {block.rows}x{block.cols}, expected {dims[k + 1]}x{dims[k]}"
            )

        d = np.zeros((block.rows, block.cols), dtype=np.uint8)
        for entry in block.entries:
            if entry.row >= block.rows or entry.col >= block.cols:
                raise ChainFormatError(f"Entry ({entry.row}, {entry.col}) outside differential {k}")
            d[entry.row, entry.col] = 1
        differentials.append(d)

    return ChainComplex(header.min_degree, dims, tuple(differentials))
