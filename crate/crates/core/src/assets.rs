//! Structure files shipped with the crate.

pub const S3_GRP: &str = include_str!("../assets/s3.grp");
pub const S4_GRP: &str = include_str!("../assets/s4.grp");
pub const D4_GRP: &str = include_str!("../assets/d4.grp");
pub const A4_GRP: &str = include_str!("../assets/a4.grp");
pub const Z6_GRP: &str = include_str!("../assets/z6.grp");
pub const TWO_LAT: &str = include_str!("../assets/two.lat");
pub const THREE_LAT: &str = include_str!("../assets/three.lat");
pub const FIGURE1_M_LAT: &str = include_str!("../assets/figure1-M.lat");
pub const EXAMPLE1_MU: &str = include_str!("../assets/example1.mu");
pub const EXAMPLE1_ETA: &str = include_str!("../assets/example1.eta");
pub const EXAMPLE3_MU: &str = include_str!("../assets/example3.mu");
pub const EXAMPLE3_ETA: &str = include_str!("../assets/example3.eta");

pub const GROUPS: &[(&str, &str)] = &[
    ("s3.grp", S3_GRP),
    ("s4.grp", S4_GRP),
    ("d4.grp", D4_GRP),
    ("a4.grp", A4_GRP),
    ("z6.grp", Z6_GRP),
];

pub const LATTICES: &[(&str, &str)] = &[
    ("two.lat", TWO_LAT),
    ("three.lat", THREE_LAT),
    ("figure1-M.lat", FIGURE1_M_LAT),
];

pub const LSUBSETS: &[(&str, &str)] = &[
    ("example1.mu", EXAMPLE1_MU),
    ("example1.eta", EXAMPLE1_ETA),
    ("example3.mu", EXAMPLE3_MU),
    ("example3.eta", EXAMPLE3_ETA),
];

/// Bundled file contents by file name.
pub fn lookup(file_name: &str) -> Option<&'static str> {
    GROUPS
        .iter()
        .chain(LATTICES)
        .chain(LSUBSETS)
        .find(|(n, _)| *n == file_name)
        .map(|(_, t)| *t)
}
