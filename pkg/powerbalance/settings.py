"""Default settings. Every public function takes keyword overrides for the ones it uses."""

# Absolute tolerance for comparisons that involve floats. Exact inputs compare with 0.
TOLERANCE = 1e-9

# Random deviations drawn per country by the sampled Nash check.
NASH_SAMPLES = 1000

# Largest side (in countries) the subset enumeration of the extended power condition accepts.
SUBSET_CAP = 20

# Simplex iteration cap is ITERATION_FACTOR * (q + n_a) ** 2.
ITERATION_FACTOR = 10

# Random balanced instances.
ADD_NODE_PROBABILITY = 0.25
MAX_DELTA = 5
BASE_POWER_RANGE = (1, 10)

# Random instances.
POWER_RANGE = (0, 10)
