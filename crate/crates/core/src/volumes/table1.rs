//! Embedded table of completed and Masur-Veech volumes of odd strata
//! (coefficients of pi^d). Used as the regression oracle and as the data
//! the minimal-strata pinning solver runs on.
//!
//! One transcription correction: the printed source repeats 9383/12600 in
//! both columns for Q(9,-1^5), but the completed volume computed from the
//! stable-graph sum is 63/80, which also makes the boundary expansion
//! consistent (9383/12600 plus the strictly positive correction terms).

/// (d, g, stratum, vol, completed-vol), volumes as rational strings.
pub type VolumeRow = (u32, u32, &'static str, &'static str, &'static str);

pub const TABLE1: &[VolumeRow] = &[
    (4, 1, "3,-1^3", "5/9", "2/3"),
    (6, 0, "3,-1^7", "3/4", "3/4"),
    (6, 1, "3,1,-1^4", "1/3", "7/20"),
    (6, 1, "5,-1^5", "7/10", "3/4"),
    (6, 2, "3,1^2,-1", "1/9", "7/60"),
    (6, 2, "3^2,-1^2", "53/270", "13/60"),
    (6, 2, "5,1,-1^2", "7/30", "1/4"),
    (6, 2, "7,-1^3", "27/50", "217/360"),
    (8, 0, "3,1,-1^8", "3/8", "3/8"),
    (8, 0, "5,-1^9", "5/8", "5/8"),
    (8, 1, "3,1^2,-1^5", "13/72", "31/168"),
    (8, 1, "3^2,-1^6", "13/42", "9/28"),
    (8, 1, "5,1,-1^6", "3/8", "65/168"),
    (8, 1, "7,-1^7", "45/56", "5/6"),
    (8, 2, "3,1^3,-1^2", "23/378", "157/2520"),
    (8, 2, "3^2,1,-1^3", "104/945", "97/840"),
    (8, 2, "5,1^2,-1^3", "47/360", "17/126"),
    (8, 2, "5,3,-1^4", "17/72", "1/4"),
    (8, 2, "7,1,-1^4", "429/1400", "77/240"),
    (8, 2, "9,-1^5", "9383/12600", "63/80"),
    (8, 3, "3^2,1^2", "859/22680", "5/126"),
    (8, 3, "3^3,-1", "4499/68040", "179/2520"),
    (8, 3, "5,1^3", "49/1080", "71/1512"),
    (8, 3, "5,3,1,-1", "17/216", "1/12"),
    (8, 3, "5^2,-1^2", "421/2520", "5/28"),
    (8, 3, "7,1^2,-1", "143/1400", "77/720"),
    (8, 3, "7,3,-1^2", "51/280", "211/1080"),
    (8, 3, "9,1,-1^2", "9383/37800", "21/80"),
    (8, 3, "11,-1^3", "4506281/7144200", "341/504"),
    (10, 0, "3,1^2,-1^9", "3/16", "3/16"),
    (10, 0, "3^2,-1^10", "9/32", "9/32"),
    (10, 0, "5,1,-1^10", "5/16", "5/16"),
    (10, 0, "7,-1^11", "35/64", "35/64"),
    (10, 1, "3,1^3,-1^6", "1159/12096", "391/4032"),
    (10, 1, "3^2,1,-1^7", "47/288", "1/6"),
    (10, 1, "5,1^2,-1^7", "113/576", "115/576"),
    (10, 1, "5,3,-1^8", "139/432", "95/288"),
    (10, 1, "7,1,-1^8", "5/12", "245/576"),
    (10, 1, "9,-1^9", "385/432", "175/192"),
    (10, 3, "3,1^5", "13/1134", "703/60480"),
    (10, 3, "7,3,1,-1^3", "2027/20160", "67/640"),
];
