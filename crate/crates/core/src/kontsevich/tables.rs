//! Embedded table of Kontsevich polynomials N^kappa_{g,n} (labeled form).
//!
//! Each entry is (g, n, kappa, terms) where every term is a rational
//! coefficient together with an exponent pattern: the polynomial is the sum
//! over the orbit of each pattern under variable permutations (a pattern
//! [4,2] in three variables means sum over ordered pairs i != j of
//! b_i^4 b_j^2, while [2,2] sums over unordered pairs).
//!
//! The [1,1] entry (two poles on a sphere segment) sits outside the usual
//! stability range but is required as a vertex polynomial whenever two
//! simple poles share a component; its labeled value is 1.
//!
//! One transcription correction, cross-checked by the evaluation-at-zero
//! recursion and by the volume regressions: the printed source for
//! N_{2,3}^{[13,1]} carries 1156/64 on b_i^2 b_j^2 where the recursion
//! forces 1155/64.

pub type TableTerm = (&'static str, &'static [u32]);
pub type TableEntry = (u32, usize, &'static str, &'static [TableTerm]);

pub const TABLE: &[TableEntry] = &[
    // ---- degree-0 and low families -------------------------------------
    (0, 1, "1,1", &[("1", &[])]),
    (0, 3, "3,3", &[("2", &[])]),
    (0, 2, "3,1", &[("1", &[])]),
    (1, 1, "3,3", &[("1/24", &[2])]),
    (0, 4, "3,3,3,3", &[("6", &[2])]),
    (0, 3, "3,3,3,1", &[("3/2", &[2])]),
    (0, 2, "3,3,1,1", &[("1/2", &[2])]),
    (0, 1, "3,1,1,1", &[("1/4", &[2])]),
    (1, 2, "3,3,3,3", &[("1/16", &[4]), ("1/8", &[2, 2])]),
    (1, 1, "3,3,3,1", &[("1/64", &[4])]),
    (0, 5, "3,3,3,3,3,3", &[("45/2", &[4]), ("90", &[2, 2])]),
    (0, 4, "3,3,3,3,3,1", &[("15/4", &[4]), ("15", &[2, 2])]),
    (0, 3, "3,3,3,3,1,1", &[("3/4", &[4]), ("3", &[2, 2])]),
    (0, 2, "3,3,3,1,1,1", &[("3/16", &[4]), ("3/4", &[2, 2])]),
    (0, 4, "5,3", &[("9", &[])]),
    (0, 3, "5,1", &[("3", &[])]),
    (0, 1, "3,3,1,1,1,1", &[("1/16", &[4])]),
    (1, 2, "5,3", &[("1/4", &[2])]),
    (1, 1, "5,1", &[("1/8", &[2])]),
    (0, 5, "5,3,3,3", &[("45", &[2])]),
    (0, 4, "5,3,3,1", &[("9", &[2])]),
    (0, 3, "5,3,1,1", &[("9/4", &[2])]),
    (0, 2, "5,1,1,1", &[("3/4", &[2])]),
    (1, 3, "5,3,3,3", &[("35/64", &[4]), ("3/2", &[2, 2])]),
    (1, 2, "5,3,3,1", &[("23/192", &[4]), ("3/8", &[2, 2])]),
    (1, 1, "5,3,1,1", &[("7/192", &[4])]),
    (2, 1, "5,3,3,3", &[("19/7680", &[6])]),
    (0, 6, "5,3,3,3,3,3", &[("465/2", &[4]), ("945", &[2, 2])]),
    (0, 5, "5,3,3,3,3,1", &[("33", &[4]), ("135", &[2, 2])]),
    (0, 4, "5,3,3,3,1,1", &[("87/16", &[4]), ("45/2", &[2, 2])]),
    (0, 2, "5,3,1,1,1,1", &[("1/4", &[4]), ("9/8", &[2, 2])]),
    (0, 5, "7,3", &[("60", &[])]),
    (0, 4, "7,1", &[("15", &[])]),
    (0, 3, "5,3,3,1,1,1", &[("17/16", &[4]), ("9/2", &[2, 2])]),
    (0, 1, "5,1,1,1,1,1", &[("1/16", &[4])]),
    (1, 3, "7,3", &[("15/8", &[2])]),
    (1, 2, "7,1", &[("5/8", &[2])]),
    (2, 1, "7,3", &[("7/384", &[4])]),
    (0, 6, "7,3,3,3", &[("450", &[2])]),
    (0, 5, "7,3,3,1", &[("75", &[2])]),
    (0, 4, "7,3,1,1", &[("15", &[2])]),
    (0, 3, "7,1,1,1", &[("15/4", &[2])]),
    (1, 4, "7,3,3,3", &[("195/32", &[4]), ("75/4", &[2, 2])]),
    (1, 3, "7,3,3,1", &[("215/192", &[4]), ("15/4", &[2, 2])]),
    (1, 2, "7,3,1,1", &[("25/96", &[4]), ("15/16", &[2, 2])]),
    (1, 1, "7,1,1,1", &[("5/64", &[4])]),
    (2, 2, "7,3,3,3", &[("1/32", &[6]), ("95/512", &[4, 2])]),
    (2, 1, "7,3,3,1", &[("29/4608", &[6])]),
    (0, 6, "9,3", &[("525", &[])]),
    (0, 5, "9,1", &[("105", &[])]),
    (1, 4, "9,3", &[("35/2", &[2])]),
    (1, 3, "9,1", &[("35/8", &[2])]),
    (2, 2, "9,3", &[("35/192", &[4]), ("35/64", &[2, 2])]),
    (2, 1, "9,1", &[("7/128", &[4])]),
    (0, 7, "9,3,3,3", &[("11025/2", &[2])]),
    (0, 6, "9,3,3,1", &[("1575/2", &[2])]),
    (0, 5, "9,3,1,1", &[("525/4", &[2])]),
    (0, 4, "9,1,1,1", &[("105/4", &[2])]),
    (1, 5, "9,3,3,3", &[("5145/64", &[4]), ("525/2", &[2, 2])]),
    (1, 4, "9,3,3,1", &[("805/64", &[4]), ("175/4", &[2, 2])]),
    (1, 3, "9,3,1,1", &[("455/192", &[4]), ("35/4", &[2, 2])]),
    (1, 2, "9,1,1,1", &[("35/64", &[4]), ("35/16", &[2, 2])]),
    (
        2,
        3,
        "9,3,3,3",
        &[("231/512", &[6]), ("735/256", &[4, 2]), ("525/64", &[2, 2, 2])],
    ),
    (2, 2, "9,3,3,1", &[("119/1536", &[6]), ("805/1536", &[4, 2])]),
    (2, 1, "9,3,1,1", &[("77/4608", &[6])]),
    (3, 1, "9,3,3,3", &[("571/442368", &[8])]),
    // ---- two-part families ----------------------------------------------
    (2, 2, "7,5", &[("9/64", &[4]), ("29/64", &[2, 2])]),
    (2, 1, "5,5", &[("11/640", &[4])]),
    (1, 4, "7,5", &[("105/8", &[2])]),
    (1, 3, "5,5", &[("3/2", &[2])]),
    (0, 6, "7,5", &[("450", &[])]),
    (0, 5, "5,5", &[("54", &[])]),
    (0, 7, "9,5", &[("4725", &[])]),
    (1, 5, "9,5", &[("1155/8", &[2])]),
    (2, 3, "9,5", &[("49/32", &[4]), ("77/16", &[2, 2])]),
    (3, 1, "9,5", &[("127/15360", &[6])]),
    (0, 7, "7,7", &[("4500", &[])]),
    (1, 5, "7,7", &[("525/4", &[2])]),
    (2, 3, "7,7", &[("45/32", &[4]), ("145/32", &[2, 2])]),
    (3, 1, "7,7", &[("53/7168", &[6])]),
    (0, 7, "11,3", &[("5670", &[])]),
    (0, 6, "11,1", &[("945", &[])]),
    (1, 5, "11,3", &[("1575/8", &[2])]),
    (1, 4, "11,1", &[("315/8", &[2])]),
    (2, 3, "11,3", &[("273/128", &[4]), ("105/16", &[2, 2])]),
    (2, 2, "11,1", &[("63/128", &[4]), ("105/64", &[2, 2])]),
    (3, 1, "11,3", &[("11/1024", &[6])]),
    (0, 8, "13,3", &[("72765", &[])]),
    (0, 7, "13,1", &[("10395", &[])]),
    (1, 6, "13,3", &[("10395/4", &[2])]),
    (1, 5, "13,1", &[("3465/8", &[2])]),
    (2, 4, "13,3", &[("231/8", &[4]), ("5775/64", &[2, 2])]),
    (2, 3, "13,1", &[("693/128", &[4]), ("1155/64", &[2, 2])]),
    (3, 2, "13,3", &[("77/512", &[6]), ("1001/1024", &[4, 2])]),
];
