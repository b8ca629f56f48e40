"""Single-field mutations of certificates for the audit tests.

A mutation changes one leaf of the JSON tree.  Leaves that carry no proof
content (timestamps, the hash itself, free text, search budgets that only
bound how long a search may run) are outside the universe; the list is
mirrored in docs/certificate.md.
"""
import copy
import math
import random

EXCLUDED = (
    "timestamps", "content_hash", "assumptions", "tool_version",
    "records.witness_search", "config.seed", "config.witness_tries", "config.max_back",
    "config.max_iter", "config.max_samples", "config.policy", "config.radius_min",
)


def leaves(obj, prefix=""):
    """(path, value) for every scalar leaf; list items are indexed."""
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from leaves(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from leaves(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _base(path):
    out, depth = [], 0
    for ch in path:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def excluded(path):
    b = _base(path)
    return any(b == e or b.startswith(e + ".") for e in EXCLUDED)


def mutate_value(v):
    if isinstance(v, bool):
        return not v
    if isinstance(v, int):
        return v + 1
    if isinstance(v, float):
        return math.nextafter(v, math.inf) if v else 1e-300
    if isinstance(v, str):
        try:
            f = float.fromhex(v)
        except ValueError:
            return v + "x" if v else "x"
        if v.startswith(("0x", "-0x", "inf", "-inf")):
            return math.nextafter(f, math.inf).hex()
        return v + "x"
    if v is None:
        return 1
    raise TypeError(type(v))


def _set(obj, path, value):
    parts = []
    for token in path.replace("]", "").split("."):
        name, *idx = token.split("[")
        if name:
            parts.append(name)
        parts.extend(int(i) for i in idx)
    for p in parts[:-1]:
        obj = obj[p]
    obj[parts[-1]] = value


def universe(cert):
    return [(p, v) for p, v in leaves(cert) if not excluded(p)]


def mutations(cert, n, seed=0):
    """n mutated copies (path, cert) drawn without replacement from the universe."""
    pool = universe(cert)
    rng = random.Random(seed)
    picks = rng.sample(pool, min(n, len(pool)))
    out = []
    for path, v in picks:
        c = copy.deepcopy(cert)
        _set(c, path, mutate_value(v))
        out.append((path, c))
    return out
