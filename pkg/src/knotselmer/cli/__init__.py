"""Job files, bundled fixtures, the task runner and report emission."""
