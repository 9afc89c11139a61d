"""Maximum family sizes frozen from an exhaustive brute force.

The brute force enumerated families directly (no bounds, no caching) and
is independent of the package.  Lists are indexed by n starting at 1.
"""

MOD2 = {
    "10": [1, 2, 3, 4, 5, 6, 7],
    "00": [1, 2, 2, 4, 4, 8, 8],
    "01": [1, 1, 3, 3, 5, 5, 7],
    "11": [1, 1, 2, 2, 4, 4, 8],
    "100": [1, 2, 3, 4, 5, 6, 7],
    "011": [1, 1, 2, 3, 4, 5, 6],
    "000": [1, 2, 2, 4, 4, 8, 8],
    "111": [1, 1, 2, 2, 4, 4, 8],
    "101": [1, 2, 2, 4, 4, 6, 6],
    "010": [1, 1, 3, 3, 5, 5, 7],
    "110": [1, 1, 2, 2, 2, 4, 4],
    "001": [1, 2, 2, 2, 2, 2, 4],
    "0010": [1, 2, 2, 2, 2, 2, 3],
    "0100": [1, 1, 3, 3, 3, 3, 3],
    "0011": [1, 2, 2, 2, 2, 2, 4],
    "0001": [1, 2, 2, 3, 3, 3, 3],
    "0110": [1, 1, 2, 3, 3, 3, 3],
    "1011": [1, 2, 2, 3, 3, 3, 3],
    "1100": [1, 1, 2, 2, 2, 4, 4],
    "1110": [1, 1, 2, 2, 3, 3, 3],
    "1001": [1, 2, 3, 3, 3, 3, 3],
    "0111": [1, 1, 2, 3, 4, 5, 6],
    "0101": [1, 1, 3, 3, 5, 5, 7],
    "1101": [1, 1, 2, 2, 2, 3, 3],
}

MOD3 = {
    "*00": [1, 2, 3, 4, 5, 6],
    "0**": [1, 1, 1, 4, 6, 10],
    "*0*": [1, 2, 2, 2, 5, 5],
    "0*0": [1, 1, 1, 2, 3, 4],
    "**0": [1, 2, 3, 3, 3, 6],
    "00*": [1, 1, 2, 2, 2, 2],
}


def cells():
    for text, values in MOD2.items():
        for n, v in enumerate(values, 1):
            yield text, 2, n, v
    for text, values in MOD3.items():
        for n, v in enumerate(values, 1):
            yield text, 3, n, v
