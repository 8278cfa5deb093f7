"""Sealed-bid auction: running maximum over committed bids, reactive across rounds."""

from .circuit import Builder
from .gadgets import select_max

BID_BITS = 34
BIDDERS = 125
SLOTS = 128          # bids are processed in a power-of-two number of slots
STMT_DOMAIN = 256
STATE_SLOTS = (126, 127)
NUM_STATEMENT = 127
RESULT_SLOT = 1


def state_slots(round_no):
    """(input slot, output slot) for a round; the carried state ping-pongs between two slots."""
    a, b = STATE_SLOTS
    return (a, b) if round_no % 2 == 0 else (b, a)


def process_bids(b, bids_count=BIDDERS, slots=SLOTS, round_no=0, width=BID_BITS):
    """bestprice <- max(bid_i, bestprice) over all slots; bids occupy statement slots 1..bids_count."""
    sin, sout = state_slots(round_no)
    best = b.stmt(sin)
    for j in range(slots):
        bid = b.stmt(1 + j) if j < bids_count else b.zero()
        b.bits(bid, width)
        best = select_max(b, best, bid, width, out=sout if j == slots - 1 else None)
    return best


def auction_round(rt, bids=None, state=None, round_no=0, bids_count=BIDDERS, slots=SLOTS):
    """Run one round on a runtime.  ``bids``/``state`` are runtime values (None -> zeros)."""
    b = Builder(rt, NUM_STATEMENT)
    sin, _ = state_slots(round_no)
    for i, v in enumerate(bids or []):
        b.set_stmt(1 + i, v)
    if state is not None:
        b.set_stmt(sin, state)
    out = process_bids(b, bids_count, slots, round_no)
    return b, out


def finalize(rt, state, round_no):
    """Open the carried state: result slot = state."""
    b = Builder(rt, NUM_STATEMENT)
    sin, _ = state_slots(round_no)
    st = b.set_stmt(sin, state)
    value = rt.open(state)
    res = b.set_stmt(RESULT_SLOT, rt.const(value))
    b.enforce(st, 1, res)
    return b, value


def plain_max(bids, init=0):
    best = init
    for x in bids:
        if x > best:
            best = x
    return best
