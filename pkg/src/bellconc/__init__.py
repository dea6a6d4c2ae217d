"""Concurrence and CHSH nonlocality of two-qubit states."""

from bellconc.channels import (
    KrausChannel,
    ad_channel,
    ad_closed_form,
    apply_on_a,
    mnes,
    mnms,
    ncms,
    pd_channel,
    pd_closed_form,
)
from bellconc.measures import (
    ChshSetting,
    CorrelationReport,
    analyze,
    bell_nonlocality,
    chsh_brute_max,
    chsh_value,
    concurrence,
    concurrence_bell_diagonal,
    concurrence_pure,
    correlation_matrix,
    inequality_bounds,
    m_value,
)
from bellconc.states import (
    InvalidStateError,
    RngStream,
    apply_local_unitary,
    bell_phi_plus,
    maximally_mixed,
    pure_density,
    purity,
    random_mixed,
    random_pure,
    random_unitary,
    werner,
)

__version__ = "0.1.0"
