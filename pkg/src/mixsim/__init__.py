"""Communication simulation on organizational networks and mixbiotic society measures."""

from mixsim.errors import EdgeListError, InvalidParameter, MixsimError
from mixsim.netgen import (
    Graph,
    GraphFeatures,
    add_jumpers,
    degree_histogram,
    graph_features,
    load_edge_list,
    make_ba,
    make_hypercube,
    make_star,
    make_tree,
    make_ws,
)
from mixsim.commsim import InfoSeries, SimConfig, init_state, run, step
from mixsim.msm import (
    MeasureSet,
    StepSeries,
    aggregate,
    classify_phase,
    stat_I,
    stat_L,
    stat_LR,
    stat_S,
    step_series,
)
from mixsim.trajectory import polar_point, trajectory
from mixsim.experiment import (
    ExperimentReport,
    ExperimentSpec,
    NetworkSpec,
    compare_networks,
    default_spec,
    radar_normalize,
    run_repetitions,
)

__version__ = "0.1.0"
