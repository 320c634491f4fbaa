"""Near-field wideband array sensing and communication simulator."""

from .geometry import (
    SPEED_OF_LIGHT,
    ArrayGeometry,
    ArrayKind,
    TargetState,
    dense_ula,
    doppler_projection,
    element_delay,
    sparse_ula,
    uca,
)
from .channel import (
    ChannelTensor,
    OfdmGrid,
    add_noise,
    far_field_channel,
    near_field_channel,
)
from .transforms import (
    Domain,
    DomainMatrix,
    to_angular_delay,
    to_angular_frequency,
    to_spatial_delay,
)
from .crb import (
    ChannelModel,
    CrbReport,
    EstimationScenario,
    crb_map,
    fisher_information,
    mean_signal_gradient,
)
from .velocity import (
    VelocityGrid,
    VelocityProfile,
    VelocityProfiler,
    profile_dynamic_range,
    velocity_profile,
)
from .beams import (
    BeamKind,
    BeamPattern,
    BeamWeights,
    focusing_weights,
    gain_profile,
    half_power_width,
    temporal_weights,
)

__version__ = "0.1.0"
