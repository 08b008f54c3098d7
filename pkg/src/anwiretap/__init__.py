"""Secrecy rates of MIMO wiretap channels under artificial noise.

The package models a multi-antenna transmitter that splits its power
between an information signal beamformed to the legitimate receiver
and artificial noise radiated into the receiver's null space, together
with an eavesdropper that tries to strip that noise before decoding.
It provides instantaneous rates on sampled channels, closed-form and
semi-analytic averages, large-system limits, and a Monte Carlo engine
that cross-validates all of them.
"""

__version__ = "0.1.0"

from .wiretap_core import Regime, SystemConfig

__all__ = ["Regime", "SystemConfig", "__version__"]
