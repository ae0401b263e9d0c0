import itertools

from steinberg_distinction.cosets import Partition


def compositions(n: int):
    """All ordered partitions of n."""
    for cuts in itertools.product([0, 1], repeat=n - 1):
        parts, cur = [], 1
        for c in cuts:
            if c:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        parts.append(cur)
        yield Partition(tuple(parts))
