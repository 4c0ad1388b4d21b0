"""Reference Code 128 decoder used by the tests.

The module-width table is copied here from the published symbology standard,
independent of the encoder's copy in the package.
"""

from __future__ import annotations

# Code 128 module widths, values 0..106, per the published symbology table.
DECODER_TABLE = {
    "212222": 0, "222122": 1, "222221": 2, "121223": 3, "121322": 4,
    "131222": 5, "122213": 6, "122312": 7, "132212": 8, "221213": 9,
    "221312": 10, "231212": 11, "112232": 12, "122132": 13, "122231": 14,
    "113222": 15, "123122": 16, "123221": 17, "223211": 18, "221132": 19,
    "221231": 20, "213212": 21, "223112": 22, "312131": 23, "311222": 24,
    "321122": 25, "321221": 26, "312212": 27, "322112": 28, "322211": 29,
    "212123": 30, "212321": 31, "232121": 32, "111323": 33, "131123": 34,
    "131321": 35, "112313": 36, "132113": 37, "132311": 38, "211313": 39,
    "231113": 40, "231311": 41, "112133": 42, "112331": 43, "132131": 44,
    "113123": 45, "113321": 46, "133121": 47, "313121": 48, "211331": 49,
    "231131": 50, "213113": 51, "213311": 52, "213131": 53, "311123": 54,
    "311321": 55, "331121": 56, "312113": 57, "312311": 58, "332111": 59,
    "314111": 60, "221411": 61, "431111": 62, "111224": 63, "111422": 64,
    "121124": 65, "121421": 66, "141122": 67, "141221": 68, "112214": 69,
    "112412": 70, "122114": 71, "122411": 72, "142112": 73, "142211": 74,
    "241211": 75, "221114": 76, "413111": 77, "241112": 78, "134111": 79,
    "111242": 80, "121142": 81, "121241": 82, "114212": 83, "124112": 84,
    "124211": 85, "411212": 86, "421112": 87, "421211": 88, "212141": 89,
    "214121": 90, "412121": 91, "111143": 92, "111341": 93, "131141": 94,
    "114113": 95, "114311": 96, "411113": 97, "411311": 98, "113141": 99,
    "114131": 100, "311141": 101, "411131": 102, "211412": 103,
    "211214": 104, "211232": 105,
}


def decode_code128(module_widths):
    """Independent decoder: module widths -> text, verifying the checksum."""
    widths = list(module_widths)
    assert widths[-7:] == [2, 3, 3, 1, 1, 1, 2], "missing stop pattern"
    body = widths[:-7]
    assert len(body) % 6 == 0
    symbols = []
    for i in range(0, len(body), 6):
        key = "".join(str(w) for w in body[i : i + 6])
        symbols.append(DECODER_TABLE[key])
    start, *data, checksum = symbols
    assert start == 104, "expected subset B start"
    assert (start + sum(i * v for i, v in enumerate(data, 1))) % 103 == checksum
    return "".join(chr(v + 32) for v in data)
