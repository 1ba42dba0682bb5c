from fractions import Fraction

from higher_kazhdan.group_ring import RingElement


def el(spec, text):
    """Ring element literal such as ``"1 - s + 2/3 st"``."""
    out = RingElement.zero(spec)
    for term in text.replace("- ", "+ -").split("+"):
        parts = term.split()
        if not parts:
            continue
        if len(parts) == 1:
            try:
                out = out + RingElement.delta(spec, spec.identity(), Fraction(parts[0]))
            except ValueError:
                neg = parts[0].startswith("-")
                out = out + RingElement.delta(spec, spec.parse(parts[0].lstrip("-")), -1 if neg else 1)
        else:
            out = out + RingElement.delta(spec, spec.parse(parts[1]), Fraction(parts[0]))
    return out
