"""Exact homological algebra over graded quotient rings.

The heavy lifting lives in the C++ extension; this package re-exports it and
adds small JSON conveniences.
"""

import json as _json

from ._core import Session, TorhomError, corpus_run, run_session

__all__ = ["Session", "TorhomError", "corpus_run", "run_session", "run"]


def run(text, max_index=12, strict=False):
    """Run a session and return the report as parsed JSON."""
    return _json.loads(run_session(text, max_index, strict))
