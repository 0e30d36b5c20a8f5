"""Desk-scale enumeration limits and the errors raised when they are hit.

Every algorithm in this package is exponential by design: partition
conditions are checked by enumerating all Bell(n) partitions, inner
maximizations scan all subsets.  The caps below bound what a laptop can
enumerate in seconds to minutes; anything larger is refused outright
instead of silently running forever or sampling.
"""

# Bell(12) = 4213597 partitions; the largest vertex count we will enumerate.
MAX_PARTITION_VERTICES = 12

# Inner maximizations scan 2^|X| subsets of a block.
MAX_SUBSET_SCAN = 20

# Rank-axiom verification iterates all 4^|ground| subset pairs.
MAX_AXIOM_GROUND = 10


class CapExceeded(RuntimeError):
    """The instance exceeds a desk-scale enumeration cap; refuse, don't sample."""


class InternalInconsistency(RuntimeError):
    """A step the theory guarantees to succeed has failed: a bug, not infeasibility."""
