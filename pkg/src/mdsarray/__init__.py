"""Binary MDS array codes from superregular matrices, with syndrome decoders
for up to three symbol errors at unknown positions."""

from .code import CodeParams, build_code, encode, is_codeword, parity_check_matrix, syndrome
from .config import load_config, params_from_config
from .decoder import (
    DecodeOutcome,
    Reason,
    Status,
    brute_force_decode,
    decode,
    decode_one,
    decode_syndrome,
    decode_three,
    decode_two,
    hypothesis_decode,
)
from .errors import MDSError
from .field import FieldTables, PrimitivePolynomial, bits_to_sym, build_field, counting, sym_to_bits
from .matrices import MatrixSpec, is_block_superregular, is_superregular
from .presets import preset

__all__ = [
    "CodeParams",
    "DecodeOutcome",
    "FieldTables",
    "MDSError",
    "MatrixSpec",
    "PrimitivePolynomial",
    "Reason",
    "Status",
    "bits_to_sym",
    "brute_force_decode",
    "build_code",
    "build_field",
    "counting",
    "decode",
    "decode_one",
    "decode_syndrome",
    "decode_three",
    "decode_two",
    "encode",
    "hypothesis_decode",
    "is_block_superregular",
    "is_codeword",
    "is_superregular",
    "load_config",
    "params_from_config",
    "parity_check_matrix",
    "preset",
    "sym_to_bits",
    "syndrome",
]
