"""Exact polyhedral convex analysis: normal cones, subdifferentials and
coderivatives in rational arithmetic, with machine-checked calculus rules."""

try:
    from ._convexcalc import *  # noqa: F401,F403
    from ._convexcalc import __doc__  # noqa: F401
except ImportError:  # running against a build tree where the extension is flat
    from _convexcalc import *  # noqa: F401,F403
