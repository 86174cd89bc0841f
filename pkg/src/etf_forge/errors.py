"""Error type shared across the package."""


class EtfError(Exception):
    """Exception carrying a short machine-readable code.

    Codes are stable strings (e.g. "dim", "not_prime", "rank_exceeds_d")
    so callers and the CLI can branch on them without parsing messages.
    """

    def __init__(self, code, message=""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)
