"""Huffman and arithmetic entropy coding in a JPEG-style pipeline, with a benchmark harness."""

from .arith import (
    CoderInterval,
    arith_decode,
    arith_encode,
    arith_encode_exact,
    select_codeword,
)
from .bench import BenchConfig, compare_records, compression_ratio, generate_test_image, run_benchmark
from .bitio import BitReader, BitSequence, BitWriter
from .codec import decode_symbols, encode_symbols
from .container import Container, read_container, write_container
from .huffman import build_tree, derive_codebook, huffman_decode, huffman_encode
from .pipeline import ImagePlane, compress, compress_plane, decompress, decompress_plane
from .symbol_model import (
    FrequencyTable,
    ProbabilityModel,
    build_frequency_table,
    lookup_range,
    to_probability_model,
)

__version__ = "0.1.0"
