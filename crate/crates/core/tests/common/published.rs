//! Published values, transcribed for the tests. Fractional prefixes such as `(1/3)` are kept as
//! printed; they do not change the abstract group.

/// Quotient groups `[H^0_Q, H^1_Q, H^2_Q]` along one edge of each label.
pub const EDGES: [(&str, [&str; 3]); 3] =
    [("A", ["0", "Z", "Z[1/2]"]), ("B", ["0", "Z", "Z[1/2] + Z"]), ("C", ["0", "0", "Z[1/2] + Z"])];

/// Quotient groups `[H^0_Q, H^1_Q, H^2_Q]` along composed paths.
pub const PATHS: [(&str, [&str; 3]); 8] = [
    ("AA", ["0", "Z^2", "Z[1/2]^2"]),
    ("AB", ["0", "Z^2", "Z[1/2]^2 + Z"]),
    ("AAB", ["0", "Z^3", "Z[1/2]^3 + Z"]),
    ("BC", ["0", "Z", "Z[1/2]^2 + Z^2"]),
    ("AC", ["0", "0", "Z_3 + Z[1/2]^2"]),
    ("AAC", ["0", "Z", "Z_3 + Z[1/2]^3"]),
    ("BAC", ["0", "Z", "Z_3 + Z[1/2]^3 + Z"]),
    ("ABAC", ["0", "Z^2", "Z_3 + Z[1/2]^4 + Z"]),
];

/// Absolute `[H^0, H^1, H^2]` of the nine chair spaces, in the order X+, /+, 0+, X-, /-, 0-, X0,
/// /0, 00.
pub const SPACES: [(&str, [&str; 3]); 9] = [
    ("chair:X,+", ["Z", "Z[1/2]^2 + Z^2", "(1/3)Z[1/4] + Z[1/2]^4 + Z"]),
    ("chair:/,+", ["Z", "Z[1/2]^2 + Z", "(1/3)Z[1/4] + Z[1/2]^3 + Z"]),
    ("chair:0,+", ["Z", "Z[1/2]^2 + Z", "Z[1/4] + Z[1/2]^2 + Z^2"]),
    ("chair:X,-", ["Z", "Z[1/2]^2 + Z", "(1/3)Z[1/4] + Z[1/2]^3"]),
    ("chair:/,-", ["Z", "Z[1/2]^2", "(1/3)Z[1/4] + Z[1/2]^2"]),
    ("chair:0,-", ["Z", "Z[1/2]^2", "Z[1/4] + Z[1/2] + Z"]),
    ("chair:X,0", ["Z", "Z[1/2]^2", "(1/3)Z[1/4] + Z[1/2]^2"]),
    ("chair:/,0", ["Z", "Z[1/2]^2", "Z[1/4] + Z[1/2] + Z"]),
    ("chair:0,0", ["Z", "Z[1/2]^2", "Z[1/4]"]),
];

/// Quotient `[H^0_Q, H^1_Q, H^2_Q]` of each chair space relative to `chair:0,0`.
pub const RELATIVE: [(&str, [&str; 3]); 9] = [
    ("chair:X,+", ["0", "Z^2", "Z_3 + Z[1/2]^4 + Z"]),
    ("chair:/,+", ["0", "Z", "Z_3 + Z[1/2]^3 + Z"]),
    ("chair:0,+", ["0", "Z", "Z[1/2]^2 + Z^2"]),
    ("chair:X,-", ["0", "Z", "Z_3 + Z[1/2]^3"]),
    ("chair:/,-", ["0", "0", "Z_3 + Z[1/2]^2"]),
    ("chair:0,-", ["0", "0", "Z[1/2] + Z"]),
    ("chair:X,0", ["0", "0", "Z_3 + Z[1/2]^2"]),
    ("chair:/,0", ["0", "0", "Z[1/2] + Z"]),
    ("chair:0,0", ["0", "0", "0"]),
];

/// The entries printed in boxes (corrections of earlier published values).
pub const BOXED: [&str; 2] = ["chair:/,+", "chair:/,-"];
