from .statistics import BitStatistics, bit_statistics, decay_exponent, is_eventually_decreasing
from .studies import LimitSeries, SweepTable, dyadic_grid, normality_scan, proposition_drift, sweep_partial_diff
from .request_schema import ExperimentRequest, validate_request
from .runner import ResultCache, ResultSet, run_experiment
