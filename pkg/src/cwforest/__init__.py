"""Exact arithmetic on (u,v)-Calkin-Wilf trees."""
from .analysis import (closed_form_check_11, convergence_report, heuristic_partial_sums,
                       limit_estimate, mean_difference_decay, mean_gap_scaling,
                       monotonicity_check, partition_check)
from .contfrac import (cf_compare, cf_decode, cf_encode, cf_length, cf_long_form,
                       cf_prefix_bound, cf_short_form)
from .rational import (Enclosure, Rational, rat_arith, rat_cmp, rat_make, rat_split,
                       rat_to_enclosure)
from .rows import (Mode, RowStats, cf_length_counts, mean_series, predicted_cf_length_counts,
                   row_iter, row_stats, samelim_bijection, symmetric_row_check)
from .tree import (TreeParams, children, children_cf, depth_from_cf, is_descendant, is_orphan,
                   locate, parent, vertex_at_path)

__version__ = "0.1.0"
