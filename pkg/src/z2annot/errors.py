class CapacityError(RuntimeError):
    """A size cap (covering-graph width, enumeration dimension) was exceeded."""
