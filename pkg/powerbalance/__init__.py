from powerbalance.game import State
from powerbalance.game import build_environment
from powerbalance.game import state_vector
from powerbalance.game import sampled_nash_check
from powerbalance.balance import adversary_incidence
from powerbalance.balance import beta
from powerbalance.balance import check_balanced
from powerbalance.balance import from_edge_vector
from powerbalance.balance import is_balanced
from powerbalance.balance import necessary_condition
from powerbalance.simplex import lp_feasibility
from powerbalance.solvers import bipartition
from powerbalance.solvers import extended_power_condition
from powerbalance.solvers import solve
from powerbalance.solvers import solve_bipartite
from powerbalance.solvers import solve_complete
from powerbalance.solvers import three_player_closed_form
from powerbalance.generators import lemma1_extend
from powerbalance.generators import lemma10_add_node
from powerbalance.generators import random_balanced_instance
from powerbalance.generators import random_instance
from powerbalance.generators import seed_bundle
