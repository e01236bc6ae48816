"""Exact solving and verification for the s-robber damage number of graphs."""

from .cache import SEMANTICS_VERSION, ResultsCache
from .engine import DEFAULT_STATE_CAP, StateCapExceeded
from .graphs import (FamilySpec, Graph, build_from_edge_list, canonical_form,
                     canonical_graph, components, cut_vertex_profile,
                     disjoint_union, enumerate_nonisomorphic, family,
                     is_threshold, max_degree, parse_edge_list_text,
                     parse_family, parse_graph6, write_graph6)
from .oracle import oracle_damage_number, oracle_state_value
from .rules import (GameState, IllegalMove, Phase, Transcript, cop_options,
                    initial_cop_states, place_robbers, play, robber_options,
                    robber_placements, step_cop, step_robbers)
from .solver import (DamageResult, damage_number, extract_policies, game_value,
                     verify_policy_value)
from .theory import (Prediction, char_dmg2_is_1, char_dmg2_is_nminus2,
                     closed_form, figure_wheel_claim, lower_bound, predicted,
                     recognize_family, union_value, upper_bound)

__version__ = "0.1.0"
