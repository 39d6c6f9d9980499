"""Constructions: amplifiers, generators, zero-test instrumentation, worked examples."""

from .amplifier import Amplifier, add_c_by_i1, make_f1_amplifier, make_fk_amplifier
from .big_counter import big_counter_program, big_counter_start, make_big_counter
from .contracts import (
    ContractReport,
    ContractRow,
    verify_amplifier,
    verify_big_counter,
    verify_example_double_exp,
    verify_example_exp,
    verify_generator,
)
from .examples import doubling_program, make_example_double_exp, make_example_exp
from .fast_growing import fast_growing
from .generator import Generator, Reduction, embed_generator, make_generator, make_reduction
from .zero_test import ZeroTestPlan, check_zero_test_conditions, instrument_constant_controller

__all__ = [
    "Amplifier",
    "ContractReport",
    "ContractRow",
    "Generator",
    "Reduction",
    "ZeroTestPlan",
    "add_c_by_i1",
    "big_counter_program",
    "big_counter_start",
    "check_zero_test_conditions",
    "doubling_program",
    "embed_generator",
    "fast_growing",
    "instrument_constant_controller",
    "make_big_counter",
    "make_example_double_exp",
    "make_example_exp",
    "make_f1_amplifier",
    "make_fk_amplifier",
    "make_generator",
    "make_reduction",
    "verify_amplifier",
    "verify_big_counter",
    "verify_example_double_exp",
    "verify_example_exp",
    "verify_generator",
]
