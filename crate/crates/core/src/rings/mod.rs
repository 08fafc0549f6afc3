//! Exact arithmetic in ℤ[1/k] and ℤ[x, x⁻¹], with the divisibility facts they support.

pub mod facts;
pub mod laurent;
pub mod zk;

pub use facts::{
    cor1_witness, cor2_residue, fact1_witness, fact3_identity_holds, int_divides, sn_identity_holds, sn_witness,
};
pub use laurent::LaurentPoly;
pub use zk::{RingContext, ZkRational};
