//! Finite group actions, frames of free G-sets, wreath products, flat
//! semi-principal bundles over wedges of circles, and exact U(1) holonomy.

pub mod aut;
pub mod bundles;
pub mod error;
pub mod fixtures;
pub mod frames;
pub mod group;
pub mod gset;
pub mod hom;
pub mod limits;
pub mod perm;
pub mod transport;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
