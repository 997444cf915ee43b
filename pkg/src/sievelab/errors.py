"""Exception types shared by the library and the CLI."""


class ComputeGateError(RuntimeError):
    """A size gate refused a computation; ``gate`` names the gate."""

    def __init__(self, gate, message):
        super().__init__("%s: %s" % (gate, message))
        self.gate = gate
