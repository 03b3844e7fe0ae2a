"""First integrals of volume-preserving flows from normalizer pairs.

Thin wrapper around the compiled core. The heavy lifting (exact expression
arithmetic, certificate solving, numeric verification) happens in C++; this
module parses the JSON reports into dictionaries.
"""

import json as _json

try:
    from ._fint import evaluate, run, simplify
except ImportError:  # built in-tree: the extension sits next to the package
    from _fint import evaluate, run, simplify

__all__ = ["evaluate", "run", "simplify", "report", "first_integral"]


def report(*args):
    """Run a subcommand with ``--json`` and return the parsed report.

    Raises ``ValueError`` on rejected input (exit code 2); pipeline outcomes
    such as a failed verification still return a report, with its ``exit``
    and ``status`` fields telling the story.
    """
    code, out, err = run([*map(str, args), "--json"])
    if code == 2:
        message = err.strip()
        try:
            message = _json.loads(out)["error"]["message"]
        except (ValueError, KeyError):
            pass
        raise ValueError(message or "invalid input")
    return _json.loads(out)


def first_integral(path, **flags):
    """Full pipeline on a problem file; returns the report dictionary.

    Keyword arguments become long flags, e.g. ``lambda_="0"`` for
    ``--lambda 0`` (the trailing underscore dodges the Python keyword).
    """
    args = ["first-integral", str(path)]
    for key, value in flags.items():
        args += ["--" + key.rstrip("_").replace("_", "-"), str(value)]
    return report(*args)
