"""CLI for revspy."""

# Import commands to register them with the app
# These imports have side effects (registering commands with @app.command())
from revspy.cli.commands import check as _check_module  # noqa: F401
from revspy.cli.commands import gen as _gen_module  # noqa: F401
from revspy.cli.commands import play as _play_module  # noqa: F401
from revspy.cli.commands import schema as _schema_module  # noqa: F401
from revspy.cli.commands import solve as _solve_module  # noqa: F401
from revspy.cli.commands import sweep as _sweep_module  # noqa: F401
from revspy.cli.main import app, dispatch, main


__all__ = ["app", "dispatch", "main"]
