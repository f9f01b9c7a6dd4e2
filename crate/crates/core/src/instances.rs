//! Ready-made carriers and the worked example pairs, loaded from the bundled
//! assets.

use std::sync::Arc;

use crate::assets;
use crate::formats::{parse_group, parse_lattice, parse_lsubset};
use crate::group::FiniteGroup;
use crate::lattice::FiniteLattice;
use crate::lsub::LSubset;

/// A subject `eta` inside a parent `mu`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub mu: LSubset,
    pub eta: LSubset,
}

impl Instance {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.mu.group()
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        self.mu.lattice()
    }
}

fn group(text: &str) -> Arc<FiniteGroup> {
    Arc::new(parse_group(text).expect("bundled group parses"))
}

fn lattice(text: &str) -> Arc<FiniteLattice> {
    Arc::new(parse_lattice(text).expect("bundled lattice parses"))
}

pub fn s3() -> Arc<FiniteGroup> {
    group(assets::S3_GRP)
}

pub fn s4() -> Arc<FiniteGroup> {
    group(assets::S4_GRP)
}

pub fn d4() -> Arc<FiniteGroup> {
    group(assets::D4_GRP)
}

pub fn a4() -> Arc<FiniteGroup> {
    group(assets::A4_GRP)
}

pub fn z6() -> Arc<FiniteGroup> {
    group(assets::Z6_GRP)
}

pub fn two() -> Arc<FiniteLattice> {
    lattice(assets::TWO_LAT)
}

pub fn three() -> Arc<FiniteLattice> {
    lattice(assets::THREE_LAT)
}

pub fn lattice_m() -> Arc<FiniteLattice> {
    lattice(assets::FIGURE1_M_LAT)
}

pub fn m_times_two() -> Arc<FiniteLattice> {
    Arc::new(lattice_m().product(&two()))
}

fn pair(
    g: &Arc<FiniteGroup>,
    l: &Arc<FiniteLattice>,
    mu: &str,
    eta: &str,
) -> Instance {
    let (_, mu) = parse_lsubset(mu, g, l).expect("bundled mu parses");
    let (_, eta) = parse_lsubset(eta, g, l).expect("bundled eta parses");
    Instance { mu, eta }
}

/// S4 over M: `mu` is u on ⟨(1 2)⟩ and d elsewhere; `eta` carries a and b
/// on two copies of S3.
pub fn example1() -> Instance {
    pair(&s4(), &lattice_m(), assets::EXAMPLE1_MU, assets::EXAMPLE1_ETA)
}

/// S4 over M×2: `eta` separates the three dihedral subgroups of order 8.
pub fn example3() -> Instance {
    pair(&s4(), &m_times_two(), assets::EXAMPLE3_MU, assets::EXAMPLE3_ETA)
}
