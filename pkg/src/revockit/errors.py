"""Exception types shared across the toolkit."""


class RevokitError(Exception):
    """Base class for all toolkit errors."""


class UnknownIssuer(RevokitError):
    """Issuer id not present in the key registry."""


class AlreadyMember(RevokitError):
    """Item is already accumulated."""


class NotMember(RevokitError):
    """Item is not currently accumulated."""


class MemberRevoked(RevokitError):
    """The holder's own item was deleted; its witness can no longer be repaired."""


class NotPresent(RevokitError):
    """Item is not a leaf of the tree."""


class OutOfRange(RevokitError):
    """Ordinal exceeds the capacity of the status array."""


class AccessDenied(RevokitError):
    """Query rejected by the access gate."""


class Revoked(RevokitError):
    """Refresh refused: the linked credential is revoked."""


class Unauthorized(RevokitError):
    """Refresh request does not match the registered holder."""


class ConfigError(RevokitError):
    """Scenario configuration is invalid."""


class Incomplete(RevokitError):
    """Privacy aspects missing; levels cannot be derived."""
