"""Published reference vectors.

Trivium entries are in eSTREAM notation (see
:func:`cozmokit.trivium.from_estream_hex`); A5/1 entries are the GSM
reference burst pair for one key/frame, packed MSB-first with the last
byte zero-padded.
"""

TRIVIUM_ESTREAM = (
    {
        "name": "Set 1, vector# 0",
        "key": "80000000000000000000",
        "iv": "00000000000000000000",
        "stream_0_63": (
            "38EB86FF730D7A9CAF8DF13A4420540DBB7B651464C87501552041C249F29A64"
            "D2FBF515610921EBE06C8F92CECF7F8098FF20CCCC6A62B97BE8EF7454FC80F9"
        ),
    },
    {
        "name": "Set 6, vector# 0",
        "key": "0053A6F94C9FF24598EB",
        "iv": "0D74DB42A91077DE45AC",
        "stream_0_63": (
            "F4CD954A717F26A7D6930830C4E7CF0819F80E03F25F342C64ADC66ABA7F8A8E"
            "6EAA49F23632AE3CD41A7BD290A0132F81C6D4043B6E397D7388F3A03B5FE358"
        ),
    },
)

A51_GSM = {
    "key": "1223456789ABCDEF",
    "frame": 0x134,
    "a_to_b": "534EAA582FE8151AB6E1855A728C00",
    "b_to_a": "24FD35A35D5FB6526D32F906DF1AC0",
}

BURST_BITS = 114
