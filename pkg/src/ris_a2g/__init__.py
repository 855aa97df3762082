"""Link-level simulator for a UAV-mounted RIS relaying a BS signal to a ground user."""

from .channel import (CarrierSpec, ChannelCoefficients, RadioParams, cascaded_coefficients,
                      effective_rate, friis_amplitude, snr, wavelength)
from .control import (ControllerState, FeedbackSample, OverheadModel, ReconfigPolicy,
                      decide, overhead_fraction, predict_pose)
from .engine import (BeamformerSpec, FrameMetrics, RunSummary, Scenario, SpeedSummary,
                     SweepSummary, genie_variant, run, summarize, sweep)
from .errors import (CapacityError, ConfigurationError, DegenerateGeometryError,
                     InvalidParameterError, SimulationError)
from .geometry import (Attitude, PerturbationModel, PerturbationState, Pose,
                       TrajectorySpec, Vec3, apply_perturbation, element_positions,
                       pose_at_time, rotation_matrix, step_perturbation, wrap_angle)
from .presets import nomadic_uav, paper_fig5, static_uav
from .ris import (PhaseConfig, RisSpec, brute_force_phases, conjugate_phases,
                  quantize_phases, robust_phases, sample_average_power)

__version__ = "0.1.0"
