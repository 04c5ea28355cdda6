"""Exception hierarchy. CLI exit codes map: usage=1, DataError=2, BackendError=3."""


class DetstressError(Exception):
    """Base class for toolkit errors."""


class DataError(DetstressError):
    """Malformed or inconsistent corpus / score / config data."""


class BackendError(DetstressError):
    """A model backend failed: transport, timeout, or backend-reported error."""


class ProtocolError(BackendError):
    """The bridge wire protocol was violated."""
