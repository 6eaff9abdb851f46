"""Exact scalars and polynomial values the services compute with."""
from .exactfield import FieldSpec, bezout, gcd_of_set, nth_root, p_coprime_divisor
from .truncpoly import ConductorElement, Polynomial, TruncPoly, split_conductor
from .polyparse import parse_generator_list, parse_polynomial, read_generator_file

__all__ = [
    'FieldSpec',
    'bezout',
    'gcd_of_set',
    'nth_root',
    'p_coprime_divisor',
    'ConductorElement',
    'Polynomial',
    'TruncPoly',
    'split_conductor',
    'parse_generator_list',
    'parse_polynomial',
    'read_generator_file',
]
