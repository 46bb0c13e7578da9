"""Secondary-user success probability and spectral efficiency in TDMA
cognitive-radio networks under Markovian and Poissonian primary traffic."""

from .access_model import (
    AccessParams,
    EfficiencyInputs,
    collision_probability,
    end_to_end_success,
    optimize_p,
    spectral_efficiency,
)
from .link_analysis import (
    LinkSpec,
    PacketPmf,
    SubchannelProfile,
    convolve,
    link_pmf,
    packet_capacity,
    packets_pmf,
    required_packets,
    success_probability,
)
from .montecarlo import McEstimate, TrialConfig, agreement_check, estimate_success, simulate_available_time
from .scenario import Scenario, baseline, load_scenario
from .sweeps import SweepResult, emit_csv, sweep_p, sweep_subchannels
from .traffic_models import (
    FramePlan,
    MarkovChainParams,
    PoissonParams,
    ValidationError,
    markov_availability_pmf,
    poisson_availability_cdf,
    validate_markov,
)

__version__ = "0.1.0"
