"""Exception types shared across the simulator."""


class ConfigError(ValueError):
    """A configuration value violates its contract (named key in the message)."""


class TopologyError(RuntimeError):
    """A sampled network is unusable (e.g. no base stations to associate with)."""
