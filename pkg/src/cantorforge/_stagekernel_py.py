"""Pure-Python stage-evolution kernel.

Same contract as the compiled ``_stagekernel``; used when the extension is
not built.  Genus and term arrays are ``array('q')`` with -1 encoding an
infinite term.
"""

from array import array

from .errors import ResourceError

IMPLEMENTATION = "python"


def _term_of(label, prefix_caps, tail_kind, tail_vals):
    plen = len(prefix_caps)
    if label <= plen:
        return prefix_caps[label - 1]
    if tail_kind == 0:
        return tail_vals[0]
    return tail_vals[(label - plen - 1) % len(tail_vals)]


def bump_stage(genus, terms):
    """Even-stage step: genus grows by one wherever it is below the term."""
    out = array("q", genus)
    for i in range(len(out)):
        t = terms[i]
        if t < 0 or out[i] < t:
            out[i] += 1
    return out


def expand_stage(genus, terms, prefix_caps, tail_kind, tail_vals, max_total):
    """Odd-stage step: central copies keep index and genus; each handle adds
    a chain of six genus-2 links after all surviving indices.

    Returns (new_genus, new_terms, link_parent) where link_parent[r] is the
    1-based parent index of the r-th appended link.  Link indices are fixed
    by prefix sums of 6*genus, so the emission order here is a convention,
    not a source of the numbering.
    """
    m = len(genus)
    links = 6 * sum(genus)
    total = m + links
    if max_total >= 0 and total > max_total:
        raise ResourceError(
            f"stage would hold {total} components, over the allowance {max_total}"
        )
    out_genus = array("q", genus)
    out_terms = array("q", terms)
    link_parent = array("q", [0]) * links if links else array("q")
    pos = 0
    label = m
    for p in range(m):
        g = genus[p]
        for _ in range(6 * g):
            label += 1
            out_genus.append(2)
            out_terms.append(_term_of(label, prefix_caps, tail_kind, tail_vals))
            link_parent[pos] = p + 1
            pos += 1
    return out_genus, out_terms, link_parent


def first_violation(genus, terms):
    """Index of the first component breaking genus >= 2 or genus <= term, else -1."""
    for i in range(len(genus)):
        g = genus[i]
        t = terms[i]
        if g < 2 or (t >= 0 and g > t):
            return i
    return -1


def genus_total(genus):
    return sum(genus)
