"""Automatic presentations, constructions on them and example structures."""
from .builtins import BUILTINS, builtin
from .core import Presentation, Signature
from .constructions import (
    binary_recode,
    disjoint_union,
    ordered_sum,
    pair_word,
    product_presentation,
    quotient,
    recode_word,
    tagged_word,
)
from .growth import GrowthReport, apply_function, growth_check, is_functional
from .machines import TuringMachineSpec, encode_config, parse_tm, read_tm, step_config, tm_config_space
from .manifest import read_structure, write_structure
