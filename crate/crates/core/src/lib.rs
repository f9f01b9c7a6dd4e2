//! Lattice-valued subgroups of finite groups.
//!
//! Carriers are finite permutation groups ([`group`]) and finite bounded
//! lattices ([`lattice`]). An [`lsub::LSubset`] assigns a lattice element to
//! every group element; [`theory`] classifies an L-subgroup `η` of a parent
//! `μ` as normal, abnormal, contranormal, self-normalizing, subnormal or
//! maximal.

pub mod assets;
pub mod cli;
pub mod formats;
pub mod group;
pub mod instances;
pub mod lattice;
pub mod lsub;
pub mod perm;
pub mod report;
pub mod search;
pub mod theory;
pub mod verify;
