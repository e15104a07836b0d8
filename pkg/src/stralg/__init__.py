"""Hammocks of string algebras computed through finite automata."""

from .automaton import Dfa, classify_states, enumerate_linguage, linguage_flags, trim_good
from .hammock import build_hammock_automaton, build_rees_automaton, is_domestic
from .presentation import QuiverPresentation, infer_sign_maps, parse_presentation
from .regular_orders import normalize, parse_term, predicates, term_to_automaton
from .strings import Word, enumerate_hl_naive, sign_sequence
from .word_problems import automaton_to_word_problem, quasi_rational, solve

__version__ = "0.1.0"
