"""Progress reporting adapters."""

from revspy.progress.rich_progress import RichProgressReporter


__all__ = ["RichProgressReporter"]
