import os

DEFAULT_CAP = 100_000
ENV_VAR = "LZFACT_ORACLE_CAP"


class OracleLimitError(ValueError):
    """Raised when a quadratic-time oracle is asked to process too much input."""


def resolve_cap(cap=None, default=DEFAULT_CAP):
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENV_VAR)
    if env:
        return int(env)
    return default


def check_cap(name, n, cap=None, default=DEFAULT_CAP):
    limit = resolve_cap(cap, default)
    if n > limit:
        raise OracleLimitError(
            f"{name}: input length {n} exceeds oracle limit {limit} "
            f"(raise with --oracle-cap or {ENV_VAR})"
        )
