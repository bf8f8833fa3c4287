def ranges(start, stop, step):
    """Split [start, stop) into consecutive half-open chunks of length step."""
    if step >= stop - start:
        yield start, stop
    else:
        it = iter(range(start, stop, step))
        i_ = next(it)
        for _i in it:
            yield i_, _i
            i_ = _i
        yield i_, stop


def dyadic_panels(top=1.0, cap=60):
    """Panels [top*2^-(j+1), top*2^-j] for j = 0..cap, accumulating at zero."""
    hi = float(top)
    for j in range(cap + 1):
        lo = hi / 2.0
        yield j, lo, hi
        hi = lo


def half_powers(first, last):
    """Distances 2^(-j/2) to the boundary for j = first..last."""
    for j in range(first, last + 1):
        yield j, 2.0 ** (-j / 2.0)
