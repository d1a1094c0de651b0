from dissect.cstruct import cstruct

chain_def = """
struct chain_header {
    char     magic[4];          /* "BSCH" */
    uint16   version;
    uint16   degrees;           /* number of chain groups */
    int32    min_degree;
    uint32   dims[degrees];     /* dimension per degree */
};

struct chain_entry {
    uint32   row;
    uint32   col;
};

struct chain_block {
    uint32      rows;
    uint32      cols;
    uint32      nnz;            /* number of nonzero F2 entries */
    chain_entry entries[nnz];
};
"""

c_chain = cstruct().load(chain_def)

CHAIN_MAGIC = b"BSCH"
CHAIN_VERSION = 1
